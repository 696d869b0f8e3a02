#!/usr/bin/env python3
"""Sparse per-student allocation and grade-matched question selection.

Each student gets at most 100 questions out of the bank, addressed by
unguessable 128-bit tokens. The next question is drawn near the difficulty
rank matching the current grade: easy items first, harder ones as the
grade climbs.
"""

from collections import Counter

import numpy as np

from drillkit.allocation import (
    DifficultyStats,
    choose_allocation,
    difficulty,
    new_token,
    rank_by_difficulty,
    select_next,
)

rng = np.random.default_rng(11)

print("tokens are long, sparse, and per-student:")
for _ in range(3):
    print("  ", new_token())
print()

bank = [f"q{i:03d}" for i in range(500)]
alice = set(choose_allocation(bank, set(), rng))
bob = set(choose_allocation(bank, set(), rng))
print(f"bank of {len(bank)}; alice got {len(alice)}, bob got {len(bob)}, overlap {len(alice & bob)}")
print("(expected overlap 100*100/500 = 20)")
print()

# empirical difficulty: smoothed share of incorrect answers
stats = [DifficultyStats(attempts=40, incorrect=k) for k in (2, 10, 20, 30, 38)]
print("difficulty from (attempts=40, incorrect=k):")
print("  ", ", ".join(f"k={s.incorrect}: {difficulty(s):.3f}" for s in stats))
print()

# where selection lands at different grades
allocated = sorted(alice)
difficulties = {q: float(d) for q, d in zip(allocated, rng.uniform(0.1, 0.9, len(allocated)))}
ranked = rank_by_difficulty(allocated, difficulties)
rank_of = {q: i for i, q in enumerate(ranked)}

print("selected difficulty-rank histogram over 2000 draws (m = 100):")
for grade in (0.0, 5.0, 10.0):
    deciles = Counter()
    for _ in range(2000):
        pick = select_next(allocated, difficulties, grade, rng)
        deciles[rank_of[pick] // 10] += 1
    bars = " ".join(f"{deciles.get(d, 0):4d}" for d in range(10))
    print(f"  grade {grade:4.1f}:  {bars}")
print("             " + " ".join(f"d{d:02d} " for d in range(10)))
print("\nLow grades live in the easy deciles, high grades in the hard ones.")
