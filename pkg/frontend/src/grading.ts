/**
 * Lecture grade from the local answer history.
 *
 * This is the same algorithm the server runs, operation for operation, so
 * the grade shown offline always matches the server's after a sync. The
 * shared test vectors in tests/vectors pin that equivalence.
 */

import type { GradePolicy, LocalOutcome } from "./types.js";

export const DEFAULT_GRADE_POLICY: GradePolicy = {
  baseWindow: 8,
  growthThreshold: 16,
  growthDivisor: 2,
  maxWindow: 30,
  scale: 10,
  lastAnswerWeight: 1,
};

/** Number of most-recent answers included in the grade at history length n. */
export function windowSize(n: number, policy: GradePolicy): number {
  if (n < 0) throw new Error("n must be >= 0");
  if (n < policy.baseWindow) return n;
  const grown = Math.floor(n / policy.growthDivisor);
  return Math.min(Math.max(policy.baseWindow, grown), policy.maxWindow);
}

/** Windowed (weighted) mean of correctness, scaled to [0, scale]. */
export function computeGrade(history: LocalOutcome[], policy: GradePolicy): number {
  const w = windowSize(history.length, policy);
  if (w === 0) return 0;
  const window = history.slice(-w);
  if (policy.lastAnswerWeight === 1) {
    let hits = 0;
    for (const outcome of window) if (outcome.correct) hits += 1;
    return (policy.scale * hits) / w;
  }
  let total = 0;
  for (let i = 0; i < w - 1; i++) if (window[i]!.correct) total += 1;
  const weightSum = w - 1 + policy.lastAnswerWeight;
  if (window[w - 1]!.correct) total += policy.lastAnswerWeight;
  return (policy.scale * total) / weightSum;
}
