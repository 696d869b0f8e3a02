/** Builders shared by the client tests. */

import type { AllocationPayload, TimeoutPolicy, WireQuestion } from "../src/types.js";
import { DEFAULT_GRADE_POLICY } from "../src/grading.js";

export function makeQuestion(i: number): WireQuestion {
  const correctAt = i % 4; // vary the canonical position of the right answer
  return {
    token: `tok-${i.toString().padStart(4, "0")}-${"x".repeat(17)}`,
    stem: `question ${i}: what is $${i} + ${i}$?`,
    choices: [0, 1, 2, 3].map((j) => ({
      text: j === correctAt ? `$${2 * i}$` : `$${2 * i + j + 1}$`,
      correct: j === correctAt,
    })),
    explanation: `Twice ${i} is ${2 * i}.`,
    imageUrl: null,
  };
}

export function makePayload(
  n: number,
  timeoutPolicy: TimeoutPolicy = { enabled: true, tMin: 15, tMax: 180, gMin: 6, width: 2 },
): AllocationPayload {
  return {
    lectureId: "lec",
    questions: Array.from({ length: n }, (_, i) => makeQuestion(i)),
    gradePolicy: { ...DEFAULT_GRADE_POLICY },
    timeoutPolicy,
    grade: 0,
    answered: 0,
  };
}
