import { describe, expect, it } from "vitest";

import { validateSession } from "../src/validate.js";
import type { SessionState } from "../src/types.js";

function session(overrides: Partial<SessionState> = {}): SessionState {
  return {
    services: [{ name: "Service A", length: 20, priority: 1 }],
    providers: 20,
    threshold: 0.99,
    ...overrides,
  };
}

describe("session validation", () => {
  it("accepts a well-formed session", () => {
    expect(validateSession(session())).toEqual([]);
  });

  it("rejects non-positive or fractional provider counts", () => {
    expect(validateSession(session({ providers: 0 }))).toHaveLength(1);
    expect(validateSession(session({ providers: 2.5 }))).toHaveLength(1);
  });

  it("rejects thresholds outside (0, 1)", () => {
    expect(validateSession(session({ threshold: 0 }))).toHaveLength(1);
    expect(validateSession(session({ threshold: 1 }))).toHaveLength(1);
  });

  it("rejects an empty service list", () => {
    expect(validateSession(session({ services: [] }))).toEqual([
      "at least one service is required",
    ]);
  });

  it("rejects out-of-range lengths and names the service", () => {
    const errors = validateSession(
      session({ services: [{ name: "X", length: 0, priority: 1 }] }),
    );
    expect(errors).toHaveLength(1);
    expect(errors[0]).toContain("'X'");
    expect(validateSession(
      session({ services: [{ name: "X", length: 101, priority: 1 }] }),
    )).toHaveLength(1);
  });

  it("rejects duplicate names and bad priorities", () => {
    const errors = validateSession(session({
      services: [
        { name: "A", length: 10, priority: 1 },
        { name: "A", length: 20, priority: 0 },
      ],
    }));
    expect(errors.some((e) => e.includes("duplicate"))).toBe(true);
    expect(errors.some((e) => e.includes("priority"))).toBe(true);
  });
});
