"""Per-question time limits from the current grade.

The limit follows an inverse dome: long for beginners (low grades) and for
students already past the hump (high grades), shortest at an intermediate
grade g_min. Speed is therefore required exactly where a student must prove
fluency before the harder questions unlock. A Gaussian dip realizes the
shape with interpretable parameters and exact degenerate limits: t_min ==
t_max gives a constant limit, enabled=False removes the limit entirely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

#: Returned when no time limit applies; compares greater than any real limit.
UNLIMITED = math.inf


@dataclass(frozen=True)
class TimeoutPolicy:
    """Inverse-dome timeout parameters.

    t_min: shortest limit, reached exactly at grade g_min.
    t_max: limit far from g_min (both grade extremes approach it).
    width: grade-units standard deviation of the dip.
    """

    enabled: bool = True
    t_min: float = 15.0
    t_max: float = 180.0
    g_min: float = 6.0
    width: float = 2.0

    def __post_init__(self):
        if self.t_min <= 0:
            raise ValueError("t_min must be positive")
        if self.t_max < self.t_min:
            raise ValueError("t_max must be >= t_min")
        if self.width <= 0:
            raise ValueError("width must be positive")
        if not 0 <= self.g_min <= 10:
            raise ValueError("g_min must be a grade in [0, 10]")

    @staticmethod
    def disabled() -> "TimeoutPolicy":
        return TimeoutPolicy(enabled=False)


def timeout_seconds(grade: float, policy: TimeoutPolicy) -> float:
    """Answer time limit in seconds at the given grade; UNLIMITED when disabled.

    t(g) = t_max - (t_max - t_min) * exp(-(g - g_min)^2 / (2 * width^2))
    """
    if not policy.enabled:
        return UNLIMITED
    dip = math.exp(-((grade - policy.g_min) ** 2) / (2.0 * policy.width**2))
    return policy.t_max - (policy.t_max - policy.t_min) * dip
