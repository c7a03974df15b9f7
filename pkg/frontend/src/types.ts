/** Wire types mirroring the slaforecast HTTP API. */

export interface ServiceRow {
  name: string;
  length: number;
  priority: number;
}

export interface SessionState {
  services: ServiceRow[];
  providers: number;
  threshold: number;
}

export interface LandscapeRow {
  services: string[];
  at_least_one: number;
}

export interface ForecastReport {
  per_service: Record<string, number>;
  sla_probability: number;
  at_least_one: number;
  curve?: [number, number][];
  min_providers_99: number | null;
  negotiation_ranges: Record<string, number>;
  negotiation_range_total: number;
  provider_count: number;
  threshold: number;
  extrapolated: string[];
  landscape?: LandscapeRow[];
}

export interface OptimizationResult {
  adjusted_lengths: Record<string, number>;
  final_probability: number;
  feasible: boolean;
  steps: number;
  placement_policy: string;
  trace?: [string, number][];
}

export interface SimulationOutcome {
  first_match_histogram: Record<string, number>;
  unmatched_count: number;
  match_probability: number;
  mean_negotiation_range: number;
  per_slo_negotiation_range: number[];
  experiments: number;
  seed: number;
}
