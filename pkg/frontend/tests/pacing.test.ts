/** Countdown durations come from the same dome curve the server enforces. */

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { timeoutSeconds } from "../src/pacing.js";
import type { TimeoutPolicy } from "../src/types.js";

interface PacingVector {
  policy: TimeoutPolicy;
  grade: number;
  seconds: number;
}

const vectors: PacingVector[] = JSON.parse(
  readFileSync(new URL("./vectors/pacing_vectors.json", import.meta.url), "utf-8"),
);

describe("timeoutSeconds", () => {
  it("reproduces the shared vectors", () => {
    for (const v of vectors) {
      expect(timeoutSeconds(v.grade, v.policy)).toBeCloseTo(v.seconds, 9);
    }
  });

  it("is unlimited when disabled", () => {
    const off: TimeoutPolicy = { enabled: false, tMin: 15, tMax: 180, gMin: 6, width: 2 };
    expect(timeoutSeconds(0, off)).toBe(Infinity);
  });

  it("dips to tMin exactly at gMin", () => {
    const policy: TimeoutPolicy = { enabled: true, tMin: 15, tMax: 180, gMin: 6, width: 2 };
    expect(timeoutSeconds(6, policy)).toBe(15);
    expect(timeoutSeconds(0, policy)).toBeGreaterThan(timeoutSeconds(3, policy));
    expect(timeoutSeconds(10, policy)).toBeGreaterThan(timeoutSeconds(7, policy));
  });
});
