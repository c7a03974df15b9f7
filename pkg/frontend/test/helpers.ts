import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const here = dirname(fileURLToPath(import.meta.url));

/** Recorded service responses (see scripts/make_fixtures.py in the
 * repository root): real API output captured once, replayed here. */
export function fixture<T = unknown>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf8")) as T;
}

export interface RecordedCall {
  path: string;
  body: Record<string, unknown>;
}

interface StubOptions {
  /** Force a failure for matching paths instead of replaying a fixture. */
  fail?: { path: string; status: number; body: unknown };
}

interface ServiceBody {
  name: string;
  length: number;
}

function lengthsKey(body: Record<string, unknown>): string {
  return (body.services as ServiceBody[]).map((s) => s.length).join(",");
}

/** Replace global fetch with a router that replays the recorded
 * fixtures, keyed on endpoint, service lengths and provider count.
 * Returns the call log for assertions. */
export function stubFetch(options: StubOptions = {}): RecordedCall[] {
  const calls: RecordedCall[] = [];
  globalThis.fetch = async (input: RequestInfo | URL, init?: RequestInit) => {
    const path = new URL(String(input)).pathname;
    const body = JSON.parse(String(init?.body ?? "{}")) as Record<string, unknown>;
    calls.push({ path, body });
    if (options.fail && path === options.fail.path) {
      return new Response(JSON.stringify(options.fail.body), {
        status: options.fail.status,
        headers: { "Content-Type": "application/json" },
      });
    }
    const doc = route(path, body);
    return new Response(JSON.stringify(doc), {
      status: 200,
      headers: { "Content-Type": "application/json" },
    });
  };
  return calls;
}

function route(path: string, body: Record<string, unknown>): unknown {
  const key = lengthsKey(body);
  const n = body.providers as number;
  if (path === "/v1/forecast") {
    if (key === "20,30,20,70,80") {
      return n === 63
        ? fixture("forecast_use_case_n63.json")
        : fixture("forecast_use_case_n20.json");
    }
    if (key === "20,30,84,100,100") return fixture("forecast_use_case_optimized_n20.json");
    if (key === "20,30,10") {
      return n === 50
        ? fixture("forecast_example_n50.json")
        : fixture("forecast_example_n20.json");
    }
    throw new Error(`no forecast fixture for lengths ${key} at n=${n}`);
  }
  if (path === "/v1/optimize") {
    if (key === "20,30,20,70,80") return fixture("optimize_use_case.json");
    if (key === "20,30,10") return fixture("optimize_example.json");
    throw new Error(`no optimize fixture for lengths ${key}`);
  }
  if (path === "/v1/simulate") {
    if (key === "20,30,10") return fixture("simulate_example_1e5.json");
    throw new Error(`no simulate fixture for lengths ${key}`);
  }
  throw new Error(`unexpected path ${path}`);
}

/** How URLSearchParams encodes a value (form encoding: space → '+'). */
export function formEncoded(value: string): string {
  return new URLSearchParams({ v: value }).toString().slice(2);
}

export const USE_CASE_QUERY =
  "?s=Service+A%3A20%3A1&s=Service+B%3A30%3A2&s=Service+C%3A20%3A3" +
  "&s=Service+D%3A70%3A4&s=Service+E%3A80%3A5&n=20&t=0.99";

export const EXAMPLE_QUERY =
  "?s=Service+A%3A20%3A2&s=Service+B%3A30%3A1&s=Service+C%3A10%3A3&n=20&t=0.99";
