"""drillkit: adaptive drilling with tapered grades, inverse-dome pacing,
difficulty-matched selection, and an offline-tolerant sync server."""

from .allocation import (
    DifficultyStats,
    EmptyAllocation,
    EmptyLecture,
    StudentLectureState,
    choose_allocation,
    difficulty,
    new_token,
    select_next,
)
from .content import (
    Choice,
    ChoiceCountError,
    Course,
    Lecture,
    MalformedBlock,
    Question,
    Tutorial,
    make_question,
    parse_tex_questions,
    serialize_questions,
    shuffle_choices,
)
from .grading import (
    FIXED_8,
    AnswerOutcome,
    GradePolicy,
    compute_grade,
    compute_grade_legacy,
    window_size,
)
from .pacing import UNLIMITED, TimeoutPolicy, timeout_seconds
from .replay import RawRecord, ReplayResult, replay
from .store import CorruptStore, Store, UnknownLecture

__version__ = "0.1.0"

__all__ = [
    "AnswerOutcome",
    "Choice",
    "ChoiceCountError",
    "CorruptStore",
    "Course",
    "DifficultyStats",
    "EmptyAllocation",
    "EmptyLecture",
    "FIXED_8",
    "GradePolicy",
    "Lecture",
    "MalformedBlock",
    "Question",
    "RawRecord",
    "ReplayResult",
    "Store",
    "StudentLectureState",
    "TimeoutPolicy",
    "Tutorial",
    "UNLIMITED",
    "UnknownLecture",
    "choose_allocation",
    "compute_grade",
    "compute_grade_legacy",
    "difficulty",
    "make_question",
    "new_token",
    "parse_tex_questions",
    "replay",
    "select_next",
    "serialize_questions",
    "shuffle_choices",
    "timeout_seconds",
    "window_size",
]
