"""Lecture grades from answer histories.

The grade is a windowed average over the most recent answers. The window
starts at the 8 most recent, grows with half the total response count once
enough answers accumulate, and is capped at 30. The growing tail dilutes
lucky guessing streaks that a short fixed window rewards; the fixed-8
scheme is kept (``compute_grade_legacy``) for comparison experiments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence


@dataclass(frozen=True)
class AnswerOutcome:
    """One answered question: correctness, timeout flag, response time."""

    correct: bool
    timed_out: bool = False
    time_taken: float = 0.0

    def __post_init__(self):
        if self.timed_out and self.correct:
            raise ValueError("a timed-out answer is always recorded incorrect")
        if self.time_taken < 0:
            raise ValueError("time_taken must be >= 0")


# Oldest first; append-only by convention.
AnswerHistory = Sequence[AnswerOutcome]


@dataclass(frozen=True)
class GradePolicy:
    """Parameters of the tapered grading window.

    base_window: window size while the history is short.
    growth_threshold: response count past which the window starts to grow.
    growth_divisor: the window grows like n / growth_divisor.
    max_window: hard cap on the window.
    scale: grade of a perfect window (grades live in [0, scale]).
    last_answer_weight: multiplier on the most recent answer (>= 1).
    """

    base_window: int = 8
    growth_threshold: int = 16
    growth_divisor: float = 2.0
    max_window: int = 30
    scale: float = 10.0
    last_answer_weight: float = 1.0

    def __post_init__(self):
        if not 0 < self.base_window <= self.max_window:
            raise ValueError("need 0 < base_window <= max_window")
        if self.growth_threshold < self.base_window:
            raise ValueError("growth_threshold must be >= base_window")
        if self.growth_divisor <= 0:
            raise ValueError("growth_divisor must be positive")
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.last_answer_weight < 1:
            raise ValueError("last_answer_weight must be >= 1")


#: The pre-revision scheme: a fixed window of the 8 most recent answers.
FIXED_8 = GradePolicy(base_window=8, max_window=8)


def window_size(n: int, policy: GradePolicy = GradePolicy()) -> int:
    """Number of most-recent answers included in the grade at history length n.

    Equals n until base_window answers exist, then stays at base_window
    until n / growth_divisor overtakes it, then grows with the floor of
    that ratio up to max_window.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n < policy.base_window:
        return n
    grown = int(n / policy.growth_divisor)
    return min(max(policy.base_window, grown), policy.max_window)


def compute_grade(history: AnswerHistory, policy: GradePolicy = GradePolicy()) -> float:
    """Grade in [0, scale]: weighted mean of correctness over the current window.

    All in-window answers weigh 1 except the most recent, which weighs
    policy.last_answer_weight. An empty history grades 0.
    """
    w = window_size(len(history), policy)
    if w == 0:
        return 0.0
    window = history[-w:]
    if policy.last_answer_weight == 1.0:
        return policy.scale * sum(1 for a in window if a.correct) / w
    total = sum(1.0 for a in window[:-1] if a.correct)
    weight_sum = (w - 1) + policy.last_answer_weight
    if window[-1].correct:
        total += policy.last_answer_weight
    return policy.scale * total / weight_sum


def compute_grade_legacy(history: AnswerHistory) -> float:
    """Grade under the old scheme: plain mean of the last min(n, 8) answers, x10."""
    if not history:
        return 0.0
    window = history[-8:]
    return 10.0 * sum(1 for a in window if a.correct) / len(window)
