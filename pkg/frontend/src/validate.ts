import type { SessionState } from "./types.js";

/** Client-side mirror of the service's request invariants, so obviously
 * broken sessions never produce an API round trip. Returns one message
 * per violation; an empty array means the session is sendable. */
export function validateSession(state: SessionState): string[] {
  const errors: string[] = [];
  if (!Number.isInteger(state.providers) || state.providers < 1) {
    errors.push(`providers must be a positive integer, got ${state.providers}`);
  }
  if (!(state.threshold > 0 && state.threshold < 1)) {
    errors.push(`threshold must be between 0 and 1, got ${state.threshold}`);
  }
  if (state.services.length === 0) {
    errors.push("at least one service is required");
  }
  const seen = new Set<string>();
  for (const service of state.services) {
    if (!service.name) {
      errors.push("every service needs a name");
      continue;
    }
    if (seen.has(service.name)) {
      errors.push(`duplicate service name '${service.name}'`);
    }
    seen.add(service.name);
    if (!(service.length >= 1 && service.length <= 100)) {
      errors.push(
        `service '${service.name}': length must be within 1..100, got ${service.length}`,
      );
    }
    if (!Number.isInteger(service.priority) || service.priority < 1) {
      errors.push(
        `service '${service.name}': priority must be a positive integer, got ${service.priority}`,
      );
    }
  }
  return errors;
}
