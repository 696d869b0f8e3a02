/** The local grade must be byte-for-byte the server's grade: shared vectors. */

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { computeGrade, windowSize, DEFAULT_GRADE_POLICY } from "../src/grading.js";
import type { GradePolicy, LocalOutcome } from "../src/types.js";

interface GradingVector {
  policy: GradePolicy;
  flags: number[];
  window: number;
  grade: number;
}

const vectors: GradingVector[] = JSON.parse(
  readFileSync(new URL("./vectors/grading_vectors.json", import.meta.url), "utf-8"),
);

function history(flags: number[]): LocalOutcome[] {
  return flags.map((f) => ({ correct: f === 1, timedOut: false, timeTaken: 0 }));
}

describe("computeGrade", () => {
  it("reproduces every shared vector exactly", () => {
    expect(vectors.length).toBeGreaterThan(100);
    for (const v of vectors) {
      expect(windowSize(v.flags.length, v.policy)).toBe(v.window);
      expect(computeGrade(history(v.flags), v.policy)).toBe(v.grade); // bitwise
    }
  });

  it("grades an empty history as zero", () => {
    expect(computeGrade([], DEFAULT_GRADE_POLICY)).toBe(0);
  });

  it("hits the window anchors", () => {
    expect(windowSize(16, DEFAULT_GRADE_POLICY)).toBe(8);
    expect(windowSize(60, DEFAULT_GRADE_POLICY)).toBe(30);
    expect(windowSize(100, DEFAULT_GRADE_POLICY)).toBe(30);
  });

  it("treats timed-out answers as incorrect", () => {
    const h: LocalOutcome[] = [
      { correct: true, timedOut: false, timeTaken: 2 },
      { correct: false, timedOut: true, timeTaken: 30 },
    ];
    expect(computeGrade(h, DEFAULT_GRADE_POLICY)).toBe(5);
  });
});
