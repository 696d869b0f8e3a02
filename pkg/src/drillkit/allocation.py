"""Per-student question allocation and difficulty-matched selection.

Students never see raw question ids: each allocated question gets an
unguessable token (128 random bits), so a question bank cannot be
enumerated and one student's reference is useless to another. At most 100
questions are allocated per (student, lecture), sampled uniformly from the
bank, which also keeps offline caches small.

Selection orders the allocation from easy to hard by the empirical
proportion of incorrect answers (Laplace-smoothed) and samples a rank near
the position proportional to the student's grade: low grades draw from the
easy end, high grades from the hard end, with enough spread to keep the
drill varied.
"""

from __future__ import annotations

import base64
import secrets
from dataclasses import dataclass, field

import numpy as np

from .grading import AnswerOutcome, GradePolicy, compute_grade

#: Hard cap on questions allocated per (student, lecture).
MAX_ALLOCATION = 100


class EmptyLecture(Exception):
    """The lecture has no questions to allocate."""


class EmptyAllocation(Exception):
    """No allocated questions to select from."""


def new_token() -> str:
    """Unguessable allocation token: 26 chars of lower-case unpadded base32."""
    raw = secrets.token_bytes(16)
    return base64.b32encode(raw).decode("ascii").rstrip("=").lower()


@dataclass(frozen=True)
class DifficultyStats:
    attempts: int = 0
    incorrect: int = 0

    def __post_init__(self):
        if not 0 <= self.incorrect <= self.attempts:
            raise ValueError("need 0 <= incorrect <= attempts")


def difficulty(stats: DifficultyStats) -> float:
    """Smoothed proportion incorrect in (0, 1); 0.5 with no data."""
    return (stats.incorrect + 1) / (stats.attempts + 2)


def choose_allocation(
    bank_ids: list[str],
    existing_ids: set[str],
    rng: np.random.Generator,
    max_count: int = MAX_ALLOCATION,
) -> list[str]:
    """Question ids to add so the allocation reaches min(max_count, bank size).

    Existing allocations are kept untouched (idempotent); when the bank has
    grown the allocation is topped up with a uniform sample of the new room.
    """
    if not bank_ids:
        raise EmptyLecture("cannot allocate from an empty lecture")
    target = min(max_count, len(bank_ids))
    missing = target - len(existing_ids)
    if missing <= 0:
        return []
    candidates = sorted(set(bank_ids) - existing_ids)
    picks = rng.choice(len(candidates), size=min(missing, len(candidates)), replace=False)
    return [candidates[i] for i in picks]


def rank_by_difficulty(question_ids: list[str], difficulties: dict[str, float]) -> list[str]:
    """Question ids sorted easiest first; ties broken by question id."""
    return sorted(question_ids, key=lambda qid: (difficulties.get(qid, 0.5), qid))


def select_next(
    allocated_ids: list[str],
    difficulties: dict[str, float],
    grade: float,
    rng: np.random.Generator,
    last_answered: str | None = None,
    scale: float = 10.0,
) -> str:
    """Pick the next question id, easy-to-hard matched to the grade.

    Ranks the allocation by difficulty and samples rank i with weight
    exp(-(i - p)^2 / (2 s^2)) around the grade-proportional target
    p = (grade / scale) * (m - 1), with spread s = max(1, 0.15 m). The
    immediately previous question is excluded whenever an alternative
    exists.
    """
    if not allocated_ids:
        raise EmptyAllocation("no questions allocated")
    ranked = rank_by_difficulty(allocated_ids, difficulties)
    m = len(ranked)
    if m == 1:
        return ranked[0]

    target = (grade / scale) * (m - 1)
    spread = max(1.0, 0.15 * m)
    ranks = np.arange(m, dtype=float)
    weights = np.exp(-((ranks - target) ** 2) / (2.0 * spread**2))
    if last_answered is not None:
        for i, qid in enumerate(ranked):
            if qid == last_answered:
                weights[i] = 0.0
                break
    cdf = np.cumsum(weights)
    pick = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    return ranked[min(pick, m - 1)]


@dataclass
class StudentLectureState:
    """Live drill state for one (student, lecture) pair.

    The grade is always derived from the history, never stored, so the
    invariant grade == compute_grade(history) holds by construction.
    """

    student_id: str
    lecture_id: str
    allocation: dict[str, str] = field(default_factory=dict)  # token -> question id
    history: list[AnswerOutcome] = field(default_factory=list)
    grade_policy: GradePolicy = field(default_factory=GradePolicy)
    last_answered: str | None = None

    @property
    def grade(self) -> float:
        return compute_grade(self.history, self.grade_policy)

    @property
    def answered(self) -> int:
        return len(self.history)

    def record(self, question_id: str, outcome: AnswerOutcome) -> None:
        self.history.append(outcome)
        self.last_answered = question_id
