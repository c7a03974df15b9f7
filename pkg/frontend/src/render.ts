import type {
  ForecastReport,
  LandscapeRow,
  OptimizationResult,
  ServiceRow,
  SimulationOutcome,
} from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const PLOT = { width: 640, height: 260, margin: 36 };

function formatProbability(p: number): string {
  return (p * 100).toFixed(1) + " %";
}

function clear(el: Element): void {
  while (el.firstChild) el.removeChild(el.firstChild);
}

export interface RowHandlers {
  onLengthChange(name: string, length: number): void;
  onPriorityChange(name: string, priority: number): void;
  onRemove(name: string): void;
}

/** One editable row per service: length slider 1..100, priority
 * selector, remove button. Rows carry `data-service` for styling and
 * for the optimization diff. */
export function renderServiceRows(
  tbody: HTMLElement,
  services: ServiceRow[],
  handlers: RowHandlers,
): void {
  clear(tbody);
  const doc = tbody.ownerDocument;
  for (const service of services) {
    const row = doc.createElement("tr");
    row.className = "service-row";
    row.dataset.service = service.name;

    const nameCell = doc.createElement("td");
    nameCell.className = "service-name";
    nameCell.textContent = service.name;

    const lengthCell = doc.createElement("td");
    const slider = doc.createElement("input");
    slider.type = "range";
    slider.min = "1";
    slider.max = "100";
    slider.step = "1";
    slider.value = String(service.length);
    slider.className = "length-slider";
    slider.addEventListener("input", () =>
      handlers.onLengthChange(service.name, Number(slider.value)),
    );
    const lengthLabel = doc.createElement("span");
    lengthLabel.className = "length-value";
    lengthLabel.textContent = String(service.length);
    lengthCell.append(slider, lengthLabel);

    const priorityCell = doc.createElement("td");
    const priority = doc.createElement("select");
    priority.className = "priority-select";
    for (let value = 1; value <= Math.max(9, service.priority); value += 1) {
      const option = doc.createElement("option");
      option.value = String(value);
      option.textContent = String(value);
      option.selected = value === service.priority;
      priority.append(option);
    }
    priority.addEventListener("change", () =>
      handlers.onPriorityChange(service.name, Number(priority.value)),
    );
    priorityCell.append(priority);

    const removeCell = doc.createElement("td");
    const remove = doc.createElement("button");
    remove.type = "button";
    remove.className = "remove-service";
    remove.textContent = "remove";
    remove.addEventListener("click", () => handlers.onRemove(service.name));
    removeCell.append(remove);

    row.append(nameCell, lengthCell, priorityCell, removeCell);
    tbody.append(row);
  }
}

/** Headline numbers plus the per-service probability table. */
export function renderSummary(el: HTMLElement, report: ForecastReport): void {
  clear(el);
  const doc = el.ownerDocument;
  const headline = doc.createElement("p");
  headline.className = "summary-headline";
  const minProviders =
    report.min_providers_99 === null ? "unreachable" : String(report.min_providers_99);
  headline.textContent =
    `SLA match probability ${formatProbability(report.sla_probability)} per provider; ` +
    `${formatProbability(report.at_least_one)} with ${report.provider_count} providers; ` +
    `${minProviders} providers needed to exceed ${formatProbability(report.threshold)}.`;
  el.append(headline);

  if (report.extrapolated.length > 0) {
    const note = doc.createElement("p");
    note.className = "extrapolation-note";
    note.textContent =
      "Extrapolated below the calibrated range: " + report.extrapolated.join(", ");
    el.append(note);
  }

  const table = doc.createElement("table");
  table.className = "per-service";
  for (const [name, p] of Object.entries(report.per_service)) {
    const row = doc.createElement("tr");
    row.dataset.service = name;
    const label = doc.createElement("td");
    label.textContent = name;
    const value = doc.createElement("td");
    value.className = "single-probability";
    value.textContent = formatProbability(p);
    row.append(label, value);
    table.append(row);
  }
  el.append(table);
}

function xScale(n: number, maxN: number): number {
  const { width, margin } = PLOT;
  return maxN === 1
    ? width / 2
    : margin + ((n - 1) / (maxN - 1)) * (width - 2 * margin);
}

function yScale(p: number): number {
  const { height, margin } = PLOT;
  return height - margin - p * (height - 2 * margin);
}

/** Probability-vs-providers curve with the threshold line. The first
 * point strictly above the threshold gets a `.crossing` marker; the
 * user's current provider count a `.current-n` marker. An empirical
 * overlay (from "verify by simulation") draws as hollow points. */
export function renderCurve(
  container: HTMLElement,
  curve: [number, number][],
  threshold: number,
  providers: number,
  empirical?: [number, number][],
): void {
  clear(container);
  const doc = container.ownerDocument;
  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${PLOT.width} ${PLOT.height}`);
  svg.setAttribute("class", "curve-plot");
  const maxN = curve.length > 0 ? curve[curve.length - 1][0] : 1;

  const thresholdLine = doc.createElementNS(SVG_NS, "line");
  thresholdLine.setAttribute("class", "threshold-line");
  thresholdLine.setAttribute("x1", String(PLOT.margin));
  thresholdLine.setAttribute("x2", String(PLOT.width - PLOT.margin));
  thresholdLine.setAttribute("y1", String(yScale(threshold)));
  thresholdLine.setAttribute("y2", String(yScale(threshold)));
  svg.append(thresholdLine);

  const path = doc.createElementNS(SVG_NS, "polyline");
  path.setAttribute("class", "curve-line");
  path.setAttribute(
    "points",
    curve.map(([n, p]) => `${xScale(n, maxN)},${yScale(p)}`).join(" "),
  );
  svg.append(path);

  let crossing: number | null = null;
  for (const [n, p] of curve) {
    const point = doc.createElementNS(SVG_NS, "circle");
    point.setAttribute("class", "curve-point");
    point.setAttribute("cx", String(xScale(n, maxN)));
    point.setAttribute("cy", String(yScale(p)));
    point.setAttribute("r", "2");
    point.setAttribute("data-n", String(n));
    point.setAttribute("data-p", String(p));
    svg.append(point);
    if (crossing === null && p > threshold) crossing = n;
  }

  if (crossing !== null) {
    const marker = doc.createElementNS(SVG_NS, "line");
    marker.setAttribute("class", "crossing");
    marker.setAttribute("data-n", String(crossing));
    const x = xScale(crossing, maxN);
    marker.setAttribute("x1", String(x));
    marker.setAttribute("x2", String(x));
    marker.setAttribute("y1", String(PLOT.margin));
    marker.setAttribute("y2", String(PLOT.height - PLOT.margin));
    svg.append(marker);
  }

  const current = doc.createElementNS(SVG_NS, "line");
  current.setAttribute("class", "current-n");
  current.setAttribute("data-n", String(providers));
  const cx = xScale(Math.min(providers, maxN), maxN);
  current.setAttribute("x1", String(cx));
  current.setAttribute("x2", String(cx));
  current.setAttribute("y1", String(PLOT.margin));
  current.setAttribute("y2", String(PLOT.height - PLOT.margin));
  svg.append(current);

  for (const [n, p] of empirical ?? []) {
    if (n > maxN) break;
    const point = doc.createElementNS(SVG_NS, "circle");
    point.setAttribute("class", "empirical-point");
    point.setAttribute("cx", String(xScale(n, maxN)));
    point.setAttribute("cy", String(yScale(p)));
    point.setAttribute("r", "3");
    point.setAttribute("fill", "none");
    point.setAttribute("data-n", String(n));
    point.setAttribute("data-p", String(p));
    svg.append(point);
  }

  container.append(svg);
}

/** Combination landscape as bars sorted by descending probability. */
export function renderLandscape(el: HTMLElement, rows: LandscapeRow[]): void {
  clear(el);
  const doc = el.ownerDocument;
  const sorted = [...rows].sort((a, b) => b.at_least_one - a.at_least_one);
  for (const row of sorted) {
    const bar = doc.createElement("div");
    bar.className = "landscape-bar";
    bar.dataset.services = row.services.join("+");
    bar.style.height = (row.at_least_one * 100).toFixed(1) + "%";
    bar.title = `${row.services.join(" + ")}: ${formatProbability(row.at_least_one)}`;
    el.append(bar);
  }
}

/** Predicted negotiation range per service plus the total. */
export function renderRanges(el: HTMLElement, report: ForecastReport): void {
  clear(el);
  const doc = el.ownerDocument;
  const table = doc.createElement("table");
  table.className = "negotiation-ranges";
  for (const [name, range] of Object.entries(report.negotiation_ranges)) {
    const row = doc.createElement("tr");
    row.dataset.service = name;
    const label = doc.createElement("td");
    label.textContent = name;
    const value = doc.createElement("td");
    value.className = "range-value";
    value.textContent = range.toFixed(2);
    row.append(label, value);
    table.append(row);
  }
  const totalRow = doc.createElement("tr");
  totalRow.className = "range-total";
  const totalLabel = doc.createElement("td");
  totalLabel.textContent = "total";
  const totalValue = doc.createElement("td");
  totalValue.className = "range-value";
  totalValue.textContent = report.negotiation_range_total.toFixed(2);
  totalRow.append(totalLabel, totalValue);
  table.append(totalRow);
  el.append(table);
}

/** Highlight the rows the optimizer wants to widen and show the
 * proposed length next to the current one. Unchanged rows lose any
 * previous highlight. */
export function applyOptimizationDiff(
  tbody: HTMLElement,
  services: ServiceRow[],
  result: OptimizationResult,
): string[] {
  const changed: string[] = [];
  const current = new Map(services.map((s) => [s.name, s.length]));
  for (const row of Array.from(tbody.querySelectorAll<HTMLElement>(".service-row"))) {
    const name = row.dataset.service ?? "";
    const proposed = result.adjusted_lengths[name];
    row.querySelector(".proposed-length")?.remove();
    if (proposed !== undefined && proposed !== current.get(name)) {
      row.classList.add("optimize-changed");
      const badge = row.ownerDocument.createElement("span");
      badge.className = "proposed-length";
      badge.textContent = ` → ${proposed}`;
      row.querySelector(".length-value")?.after(badge);
      changed.push(name);
    } else {
      row.classList.remove("optimize-changed");
    }
  }
  return changed;
}

export function clearOptimizationDiff(tbody: HTMLElement): void {
  for (const row of Array.from(tbody.querySelectorAll<HTMLElement>(".service-row"))) {
    row.classList.remove("optimize-changed");
    row.querySelector(".proposed-length")?.remove();
  }
}

export function showBanner(el: HTMLElement, message: string, kind: "error" | "info"): void {
  el.textContent = message;
  el.className = `banner banner-${kind}`;
  el.hidden = false;
}

export function hideBanner(el: HTMLElement): void {
  el.textContent = "";
  el.hidden = true;
}

/** Cumulative empirical first-match curve from a simulation outcome:
 * fraction of experiments whose first match came within the first n
 * providers. */
export function empiricalCurve(outcome: SimulationOutcome): [number, number][] {
  const ordinals = Object.keys(outcome.first_match_histogram)
    .map(Number)
    .sort((a, b) => a - b);
  const points: [number, number][] = [];
  let cumulative = 0;
  for (const ordinal of ordinals) {
    cumulative += outcome.first_match_histogram[String(ordinal)];
    points.push([ordinal, cumulative / outcome.experiments]);
  }
  return points;
}
