"""Deterministic replay of a raw answer log into a grade history.

The server never trusts client state: the grade for a (student, lecture)
pair is always the result of folding the stored raw records, sorted by
client sequence number, through the rules below. Because the fold is a pure
function of the record *set*, any delivery interleaving of offline batches
converges to the in-order state, and an exported log can be replayed
offline to reproduce every grade.

Rules applied per record, in sequence order:
  * correctness comes from the canonical question, never the client;
  * a timed-out answer counts as incorrect;
  * an answer claiming not to have timed out, whose reported time exceeds
    the time limit for the grade *before* that answer by more than the
    clock tolerance, is excluded from the history (timeout violation).
"""

from __future__ import annotations

from dataclasses import dataclass

from .grading import AnswerOutcome, GradePolicy, compute_grade
from .pacing import TimeoutPolicy, timeout_seconds

#: Seconds of client clock / render latency absorbed before a reported
#: time is treated as a timeout violation.
CLOCK_TOLERANCE = 2.0

REJECT_TIMEOUT = "timeout_violation"


@dataclass(frozen=True)
class RawRecord:
    """One stored answer event, already resolved against the question bank."""

    seq: int
    question_id: str
    chosen_index: int | None
    correct: bool  # recomputed server-side from the canonical question
    timed_out: bool
    time_taken: float


@dataclass(frozen=True)
class Verdict:
    seq: int
    included: bool
    reject_reason: str | None = None


@dataclass
class ReplayResult:
    outcomes: list[AnswerOutcome]
    verdicts: list[Verdict]  # one per input record, in sequence order
    grade: float
    last_answered: str | None

    @property
    def answered(self) -> int:
        return len(self.outcomes)


def replay(
    records: list[RawRecord],
    grade_policy: GradePolicy,
    timeout_policy: TimeoutPolicy,
) -> ReplayResult:
    """Fold raw records (any order, unique seqs) into the derived history."""
    verdicts: list[Verdict] = []
    outcomes: list[AnswerOutcome] = []
    last_answered: str | None = None
    for rec in sorted(records, key=lambda r: r.seq):
        grade_before = compute_grade(outcomes, grade_policy)
        limit = timeout_seconds(grade_before, timeout_policy)
        if not rec.timed_out and rec.time_taken > limit + CLOCK_TOLERANCE:
            verdicts.append(Verdict(rec.seq, included=False, reject_reason=REJECT_TIMEOUT))
            continue
        correct = rec.correct and not rec.timed_out
        outcomes.append(
            AnswerOutcome(correct=correct, timed_out=rec.timed_out, time_taken=rec.time_taken)
        )
        last_answered = rec.question_id
        verdicts.append(Verdict(rec.seq, included=True))
    return ReplayResult(
        outcomes=outcomes,
        verdicts=verdicts,
        grade=compute_grade(outcomes, grade_policy),
        last_answered=last_answered,
    )
