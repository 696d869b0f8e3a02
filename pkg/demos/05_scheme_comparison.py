#!/usr/bin/env python3
"""Which grading scheme best separates mastery from guessing?

Simulates a mixed population (learners plus fast uniform guessers) through
the full drill loop under three schemes and scores each scheme's final
grade as a predictor of latent mastery (Mann-Whitney AUC). Also fits the
pass-probability curve on one scheme's outcomes. A smaller population than
the acceptance run, so it finishes in a few seconds.
"""

import numpy as np

from drillkit.analytics import (
    PopulationSpec,
    bin_pass_rates,
    compare_schemes,
    fit_pass_probability,
    paired_auc_gap_se,
)

population = PopulationSpec(n_students=200, guesser_frac=0.4)
comparison = compare_schemes(population, n_answers=100, reps=4, rng_seed=12)

print("AUC of final drill grade as a mastery predictor (mean +- SE over 4 reps):")
for name in ("fixed-8", "taper", "taper+timeout"):
    print(f"  {name:14s} {comparison.auc_mean[name]:.3f} +- {comparison.auc_se[name]:.3f}")
gap, se = paired_auc_gap_se(comparison, "taper+timeout", "fixed-8")
print(f"\npaired gap (taper+timeout minus fixed-8): {gap:+.3f}, {gap / se:.1f} standard errors")

# pass-probability curve: label each simulated student by mastery and fit
points = [
    (row["grade"], row["mastered"])
    for row in comparison.rows
    if row["scheme"] == "taper+timeout"
]
fit = fit_pass_probability(points)
print(f"\nlogistic fit on taper+timeout grades: beta0={fit.beta0:.2f}, beta1={fit.beta1:.2f}")
print(f"P(mastered) crosses 50% at grade {fit.crossing():.2f}")

print("\ngrade bin -> empirical mastery rate:")
for b in bin_pass_rates(points):
    rate = "   -" if b["passRate"] is None else f"{b['passRate']:.2f}"
    hist = "" if b["passRate"] is None else "*" * int(40 * b["passRate"])
    print(f"  [{b['gradeLow']:4.1f}, {b['gradeHigh']:4.1f})  n={b['count']:4d}  {rate}  {hist}")
