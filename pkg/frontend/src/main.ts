import { ApiClient } from "./api.js";
import { bootCockpit } from "./app.js";

declare global {
  interface Window {
    SLAFC_API_BASE?: string;
  }
}

const DEFAULT_API_BASE = "http://127.0.0.1:8080";

function start(): void {
  const root = document.getElementById("cockpit");
  if (!root) return;
  const api = new ApiClient(window.SLAFC_API_BASE ?? DEFAULT_API_BASE);
  const cockpit = bootCockpit(root, api, window);
  void cockpit.refreshNow();
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", start);
} else {
  start();
}
