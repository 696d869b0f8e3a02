#!/usr/bin/env python3
"""How the tapered grading window behaves versus the old fixed-8 scheme.

The taper averages the most recent answers: 8 of them at first, then n/2
once more than 16 answers exist, capped at 30. A lucky streak therefore
fades out of the grade instead of defining it.
"""

import random

from drillkit.grading import (
    FIXED_8,
    AnswerOutcome,
    GradePolicy,
    compute_grade,
    compute_grade_legacy,
    window_size,
)

policy = GradePolicy()

print("window growth with history length")
print("n      :", "  ".join(f"{n:4d}" for n in (0, 4, 8, 16, 17, 20, 30, 40, 59, 60, 100)))
print("window :", "  ".join(f"{window_size(n, policy):4d}" for n in (0, 4, 8, 16, 17, 20, 30, 40, 59, 60, 100)))
print()

# A student who guessed badly for 52 answers, then hit a streak of 8.
flags = [False] * 52 + [True] * 8
history = [AnswerOutcome(correct=f) for f in flags]
print("52 misses followed by an 8-hit streak:")
print(f"  fixed-8 grade : {compute_grade_legacy(history):5.2f}   <- the streak is the whole story")
print(f"  tapered grade : {compute_grade(history, policy):5.2f}   <- the window is 30 answers deep by now")
print()

# Running grades for a pure guesser (25% hit rate), same coin flips.
rng = random.Random(7)
guesses = [AnswerOutcome(correct=rng.random() < 0.25) for _ in range(500)]
max_fixed = max(compute_grade(guesses[: i + 1], FIXED_8) for i in range(500))
max_taper = max(compute_grade(guesses[: i + 1], policy) for i in range(30, 500))
print("pure guesser, 500 answers, one sample path:")
print(f"  best running fixed-8 grade        : {max_fixed:5.2f}")
print(f"  best running tapered grade (n>30) : {max_taper:5.2f}")
print()
print("The fixed window rewards patience with luck; the taper does not.")
