#!/usr/bin/env python3
"""The inverse-dome time limit as a function of the current grade.

Beginners (grade near 0) and students already past the hump get a long
limit; the squeeze sits at g_min, the grade a student must pass through
quickly before the harder questions open up. Saves a plot when matplotlib
is available.
"""

from drillkit.pacing import TimeoutPolicy, timeout_seconds

policy = TimeoutPolicy(t_min=15, t_max=180, g_min=6, width=2)

print(f"policy: t_min={policy.t_min}s at grade {policy.g_min}, t_max={policy.t_max}s, width={policy.width}")
print()
print("grade   limit(s)   ")
for tenth in range(0, 101, 5):
    g = tenth / 10
    t = timeout_seconds(g, policy)
    bar = "#" * int(t / 4)
    print(f"{g:5.1f}   {t:7.1f}   {bar}")

print()
print("degenerate settings:")
print(f"  disabled            -> {timeout_seconds(5, TimeoutPolicy.disabled())}")
print(f"  t_min == t_max == 60 -> {timeout_seconds(5, TimeoutPolicy(t_min=60, t_max=60))}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    grades = [i / 100 for i in range(1001)]
    limits = [timeout_seconds(g, policy) for g in grades]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(grades, limits)
    ax.axvline(policy.g_min, linestyle="--", linewidth=0.8)
    ax.set_xlabel("current grade")
    ax.set_ylabel("answer time limit (s)")
    ax.set_title("Inverse-dome timeout")
    fig.tight_layout()
    fig.savefig("demos/timeout_curve.png", dpi=120)
    print("\nwrote demos/timeout_curve.png")
except ImportError:
    pass
