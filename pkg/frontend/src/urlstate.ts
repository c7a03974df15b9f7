import type { SessionState } from "./types.js";

/** The whole session lives in the query string so any cockpit view can
 * be shared as a plain link. Each service is one `s` parameter of the
 * form `name:length:priority`; provider count is `n`, threshold `t`. */

export const DEFAULT_SESSION: SessionState = {
  services: [{ name: "Service A", length: 50, priority: 1 }],
  providers: 10,
  threshold: 0.99,
};

export function sessionToQuery(state: SessionState): string {
  const params = new URLSearchParams();
  for (const service of state.services) {
    params.append("s", `${service.name}:${service.length}:${service.priority}`);
  }
  params.set("n", String(state.providers));
  params.set("t", String(state.threshold));
  return params.toString();
}

function parseServiceParam(raw: string): SessionState["services"][number] | null {
  // Split from the right so service names may themselves contain colons.
  const last = raw.lastIndexOf(":");
  const mid = raw.lastIndexOf(":", last - 1);
  if (last <= 0 || mid <= 0) return null;
  const name = raw.slice(0, mid);
  const length = Number(raw.slice(mid + 1, last));
  const priority = Number(raw.slice(last + 1));
  if (!name || !Number.isFinite(length) || !Number.isFinite(priority)) return null;
  return { name, length, priority };
}

/** Rebuild a session from a query string; parameters that are absent
 * fall back to the defaults, unparseable `s` entries are dropped. */
export function queryToSession(
  query: string,
  defaults: SessionState = DEFAULT_SESSION,
): SessionState {
  const params = new URLSearchParams(query);
  const services = params
    .getAll("s")
    .map(parseServiceParam)
    .filter((s): s is NonNullable<typeof s> => s !== null);
  const providers = Number(params.get("n") ?? defaults.providers);
  const threshold = Number(params.get("t") ?? defaults.threshold);
  return {
    services: services.length > 0 ? services : defaults.services.map((s) => ({ ...s })),
    providers: Number.isFinite(providers) ? providers : defaults.providers,
    threshold: Number.isFinite(threshold) ? threshold : defaults.threshold,
  };
}
