import type {
  ForecastReport,
  OptimizationResult,
  SessionState,
  SimulationOutcome,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** Thrown (as a rejection) when a newer request on the same channel
 * supersedes this one; callers silently drop it. */
export class SupersededError extends Error {
  constructor() {
    super("request superseded by a newer one");
    this.name = "SupersededError";
  }
}

export const SIMULATION_EXPERIMENTS = 100_000;

function requestBody(state: SessionState): Record<string, unknown> {
  return {
    providers: state.providers,
    threshold: state.threshold,
    services: state.services.map((s) => ({
      name: s.name,
      length: s.length,
      priority: s.priority,
    })),
  };
}

async function errorMessage(response: Response): Promise<string> {
  try {
    const doc = await response.json();
    if (typeof doc.error === "string") return doc.error;
    if (Array.isArray(doc.errors)) {
      return doc.errors
        .map((e: { field: string; message: string }) => `${e.field}: ${e.message}`)
        .join("; ");
    }
  } catch {
    // fall through to the status line
  }
  return `request failed with status ${response.status}`;
}

/** Thin JSON client for the forecast service. Requests are grouped into
 * channels; issuing a new request on a channel aborts the in-flight one
 * (latest edit wins). */
export class ApiClient {
  private controllers = new Map<string, AbortController>();

  constructor(private readonly baseUrl: string) {}

  private async post<T>(path: string, body: unknown, channel: string): Promise<T> {
    this.controllers.get(channel)?.abort();
    const controller = new AbortController();
    this.controllers.set(channel, controller);
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
        signal: controller.signal,
      });
    } catch (err) {
      if (controller.signal.aborted) throw new SupersededError();
      throw new ApiError(`service unreachable: ${String(err)}`, 0);
    }
    if (!response.ok) throw new ApiError(await errorMessage(response), response.status);
    return (await response.json()) as T;
  }

  forecast(
    state: SessionState,
    options: { landscape?: boolean; providers?: number } = {},
  ): Promise<ForecastReport> {
    const body: Record<string, unknown> = {
      ...requestBody(state),
      curve: true,
      landscape: options.landscape ?? false,
    };
    if (options.providers !== undefined) body.providers = options.providers;
    return this.post("/v1/forecast", body, "forecast");
  }

  optimize(state: SessionState): Promise<OptimizationResult> {
    return this.post("/v1/optimize", requestBody(state), "optimize");
  }

  simulate(state: SessionState, seed = 0): Promise<SimulationOutcome> {
    const body = {
      ...requestBody(state),
      experiments: SIMULATION_EXPERIMENTS,
      seed,
    };
    return this.post("/v1/simulate", body, "simulate");
  }
}
