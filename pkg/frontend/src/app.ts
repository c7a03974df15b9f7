import { ApiClient, SupersededError } from "./api.js";
import { debounce, type Debounced } from "./debounce.js";
import {
  applyOptimizationDiff,
  clearOptimizationDiff,
  empiricalCurve,
  hideBanner,
  renderCurve,
  renderLandscape,
  renderRanges,
  renderServiceRows,
  renderSummary,
  showBanner,
} from "./render.js";
import type {
  ForecastReport,
  OptimizationResult,
  SessionState,
} from "./types.js";
import { queryToSession, sessionToQuery } from "./urlstate.js";
import { validateSession } from "./validate.js";

export const DEBOUNCE_MS = 300;

const TEMPLATE = `
  <div class="banner" data-role="banner" hidden></div>
  <section class="controls">
    <table class="services">
      <thead><tr><th>service</th><th>length</th><th>priority</th><th></th></tr></thead>
      <tbody data-role="service-rows"></tbody>
    </table>
    <label>providers
      <input type="number" min="1" step="1" data-role="providers">
    </label>
    <label>threshold
      <input type="number" min="0.01" max="0.999999" step="0.001" data-role="threshold">
    </label>
    <button type="button" data-role="add-service">add service</button>
    <button type="button" data-role="optimize">optimize</button>
    <button type="button" data-role="accept" hidden>accept adjusted lengths</button>
    <button type="button" data-role="simulate">verify by simulation</button>
  </section>
  <section class="summary" data-role="summary"></section>
  <section class="curve" data-role="curve"></section>
  <section class="landscape" data-role="landscape"></section>
  <section class="ranges" data-role="ranges"></section>
`;

/** The interactive what-if loop: edit intervals, watch the forecast
 * update, optimize, feed the result back in. All numbers come from the
 * service; this class only moves JSON into the DOM. */
export class Cockpit {
  state: SessionState;
  lastReport: ForecastReport | null = null;
  lastOptimization: OptimizationResult | null = null;
  private lastEmpirical: [number, number][] | null = null;
  private readonly scheduleRefresh: Debounced<[]>;

  private readonly banner: HTMLElement;
  private readonly rows: HTMLElement;
  private readonly providersInput: HTMLInputElement;
  private readonly thresholdInput: HTMLInputElement;
  private readonly acceptButton: HTMLButtonElement;
  private readonly summaryEl: HTMLElement;
  private readonly curveEl: HTMLElement;
  private readonly landscapeEl: HTMLElement;
  private readonly rangesEl: HTMLElement;

  constructor(
    root: HTMLElement,
    private readonly api: ApiClient,
    private readonly win: Window,
  ) {
    root.innerHTML = TEMPLATE;
    const pick = <T extends HTMLElement>(role: string): T =>
      root.querySelector<T>(`[data-role="${role}"]`)!;
    this.banner = pick("banner");
    this.rows = pick("service-rows");
    this.providersInput = pick<HTMLInputElement>("providers");
    this.thresholdInput = pick<HTMLInputElement>("threshold");
    this.acceptButton = pick<HTMLButtonElement>("accept");
    this.summaryEl = pick("summary");
    this.curveEl = pick("curve");
    this.landscapeEl = pick("landscape");
    this.rangesEl = pick("ranges");

    this.state = queryToSession(win.location.search);
    this.scheduleRefresh = debounce(() => void this.refreshNow(), DEBOUNCE_MS);

    this.providersInput.addEventListener("input", () => {
      this.state.providers = Number(this.providersInput.value);
      this.onEdit();
    });
    this.thresholdInput.addEventListener("input", () => {
      this.state.threshold = Number(this.thresholdInput.value);
      this.onEdit();
    });
    pick<HTMLButtonElement>("add-service").addEventListener("click", () => {
      this.addService();
    });
    pick<HTMLButtonElement>("optimize").addEventListener("click", () => {
      void this.optimize();
    });
    this.acceptButton.addEventListener("click", () => {
      this.acceptOptimization();
    });
    pick<HTMLButtonElement>("simulate").addEventListener("click", () => {
      void this.simulate();
    });

    this.syncControls();
  }

  /** Edits invalidate the optimization diff and the simulation overlay
   * and debounce into at most one forecast request per DEBOUNCE_MS. */
  private onEdit(): void {
    this.lastOptimization = null;
    this.lastEmpirical = null;
    this.acceptButton.hidden = true;
    clearOptimizationDiff(this.rows);
    this.syncUrl();
    this.scheduleRefresh();
  }

  private syncUrl(): void {
    this.win.history.replaceState({}, "", "?" + sessionToQuery(this.state));
  }

  private syncControls(): void {
    this.providersInput.value = String(this.state.providers);
    this.thresholdInput.value = String(this.state.threshold);
    renderServiceRows(this.rows, this.state.services, {
      onLengthChange: (name, length) => {
        const service = this.state.services.find((s) => s.name === name);
        if (service) service.length = length;
        const row = this.rows.querySelector(`[data-service="${name}"] .length-value`);
        if (row) row.textContent = String(length);
        this.onEdit();
      },
      onPriorityChange: (name, priority) => {
        const service = this.state.services.find((s) => s.name === name);
        if (service) service.priority = priority;
        this.onEdit();
      },
      onRemove: (name) => {
        this.state.services = this.state.services.filter((s) => s.name !== name);
        this.syncControls();
        this.onEdit();
      },
    });
  }

  private addService(): void {
    let index = this.state.services.length + 1;
    while (this.state.services.some((s) => s.name === `Service ${index}`)) index += 1;
    this.state.services.push({ name: `Service ${index}`, length: 50, priority: 1 });
    this.syncControls();
    this.onEdit();
  }

  /** Fetch and render the forecast immediately (the debounced path ends
   * here too). When the threshold crossing lies beyond the configured
   * provider count, a second call fetches the longer curve so the
   * crossing stays visible. */
  async refreshNow(): Promise<void> {
    this.scheduleRefresh.cancel();
    const errors = validateSession(this.state);
    if (errors.length > 0) {
      showBanner(this.banner, errors.join("; "), "error");
      return;
    }
    try {
      const report = await this.api.forecast(this.state, { landscape: true });
      let curve = report.curve ?? [];
      const min = report.min_providers_99;
      if (min !== null && min > this.state.providers) {
        const extended = await this.api.forecast(this.state, { providers: min });
        curve = extended.curve ?? curve;
      }
      this.lastReport = { ...report, curve };
      hideBanner(this.banner);
      this.renderReport();
    } catch (err) {
      if (err instanceof SupersededError) return;
      // Prior state stays on screen; only the banner reports the failure.
      showBanner(this.banner, err instanceof Error ? err.message : String(err), "error");
    }
  }

  private renderReport(): void {
    const report = this.lastReport;
    if (!report) return;
    renderSummary(this.summaryEl, report);
    renderCurve(
      this.curveEl,
      report.curve ?? [],
      report.threshold,
      this.state.providers,
      this.lastEmpirical ?? undefined,
    );
    renderLandscape(this.landscapeEl, report.landscape ?? []);
    renderRanges(this.rangesEl, report);
  }

  /** Ask the service how to widen the intervals; highlight the proposed
   * changes without applying them. */
  async optimize(): Promise<void> {
    try {
      const result = await this.api.optimize(this.state);
      this.lastOptimization = result;
      const changed = applyOptimizationDiff(this.rows, this.state.services, result);
      if (!result.feasible) {
        showBanner(
          this.banner,
          "Not feasible: even full-market intervals (length 100 everywhere) " +
            "stay below the threshold.",
          "error",
        );
        this.acceptButton.hidden = true;
      } else if (changed.length === 0) {
        showBanner(this.banner, "No changes needed — already above the threshold.", "info");
        this.acceptButton.hidden = true;
      } else {
        showBanner(
          this.banner,
          `Optimizer widens ${changed.join(", ")} in ${result.steps} steps.`,
          "info",
        );
        this.acceptButton.hidden = false;
      }
    } catch (err) {
      if (err instanceof SupersededError) return;
      showBanner(this.banner, err instanceof Error ? err.message : String(err), "error");
    }
  }

  /** Write the adjusted lengths back into the editable rows and refresh
   * the forecast right away. */
  acceptOptimization(): void {
    const result = this.lastOptimization;
    if (!result) return;
    for (const service of this.state.services) {
      const adjusted = result.adjusted_lengths[service.name];
      if (adjusted !== undefined) service.length = adjusted;
    }
    this.lastOptimization = null;
    this.acceptButton.hidden = true;
    this.syncControls();
    this.syncUrl();
    void this.refreshNow();
  }

  /** Capped empirical check overlaying the analytical curve. */
  async simulate(): Promise<void> {
    try {
      const outcome = await this.api.simulate(this.state);
      this.lastEmpirical = empiricalCurve(outcome);
      showBanner(
        this.banner,
        `Simulated ${outcome.experiments} experiments (seed ${outcome.seed}): ` +
          `match probability ${(outcome.match_probability * 100).toFixed(2)} %.`,
        "info",
      );
      this.renderReport();
    } catch (err) {
      if (err instanceof SupersededError) return;
      showBanner(this.banner, err instanceof Error ? err.message : String(err), "error");
    }
  }
}

export function bootCockpit(root: HTMLElement, api: ApiClient, win: Window): Cockpit {
  return new Cockpit(root, api, win);
}
