"""Embedded persistent store and the server-side service operations.

A single sqlite file holds the catalog, users, per-student allocations, and
the append-only raw answer log. Grades are never authoritative in storage:
every ingest refolds the raw log through :mod:`drillkit.replay` and caches
the result, so cached state can always be checked against a from-scratch
replay.

All mutating operations take a process-wide lock and run in one sqlite
transaction; batches are therefore atomic and a crash between batches loses
nothing that was acknowledged.
"""

from __future__ import annotations

import contextlib
import json
import secrets
import sqlite3
import threading
import time
from pathlib import Path
from typing import Any, Iterator

import numpy as np

from . import allocation as alloc
from .content import Choice, Question
from .grading import GradePolicy
from .pacing import TimeoutPolicy
from .replay import RawRecord, ReplayResult, replay


class StoreError(Exception):
    pass


class CorruptStore(StoreError):
    """The data file exists but is not a usable store."""


class UnknownLecture(StoreError):
    pass


ROLES = ("student", "tutor", "admin")

_SCHEMA = """
CREATE TABLE IF NOT EXISTS courses (
    id    TEXT PRIMARY KEY,
    title TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS tutorials (
    id        TEXT PRIMARY KEY,
    course_id TEXT NOT NULL REFERENCES courses(id),
    title     TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS lectures (
    id             TEXT PRIMARY KEY,
    tutorial_id    TEXT NOT NULL REFERENCES tutorials(id),
    title          TEXT NOT NULL,
    grade_policy   TEXT,
    timeout_policy TEXT
);
CREATE TABLE IF NOT EXISTS questions (
    id          TEXT PRIMARY KEY,
    lecture_id  TEXT NOT NULL REFERENCES lectures(id),
    position    INTEGER NOT NULL,
    stem        TEXT NOT NULL,
    choices     TEXT NOT NULL,
    explanation TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS users (
    id       TEXT PRIMARY KEY,
    name     TEXT NOT NULL,
    role     TEXT NOT NULL CHECK(role IN ('student','tutor','admin')),
    class_id TEXT,
    token    TEXT NOT NULL UNIQUE
);
CREATE TABLE IF NOT EXISTS allocations (
    token       TEXT PRIMARY KEY,
    student_id  TEXT NOT NULL,
    lecture_id  TEXT NOT NULL REFERENCES lectures(id),
    question_id TEXT NOT NULL REFERENCES questions(id),
    created_ms  INTEGER NOT NULL,
    UNIQUE(student_id, lecture_id, question_id)
);
CREATE TABLE IF NOT EXISTS answers (
    student_id   TEXT NOT NULL,
    lecture_id   TEXT NOT NULL,
    seq          INTEGER NOT NULL,
    token        TEXT NOT NULL,
    question_id  TEXT NOT NULL,
    chosen_index INTEGER,
    correct      INTEGER NOT NULL,
    timed_out    INTEGER NOT NULL,
    time_taken   REAL NOT NULL,
    client_ts    INTEGER NOT NULL,
    server_ts    INTEGER NOT NULL,
    PRIMARY KEY (student_id, lecture_id, seq)
);
CREATE TABLE IF NOT EXISTS difficulty_stats (
    question_id TEXT PRIMARY KEY,
    attempts    INTEGER NOT NULL DEFAULT 0,
    incorrect   INTEGER NOT NULL DEFAULT 0
);
CREATE TABLE IF NOT EXISTS state_cache (
    student_id    TEXT NOT NULL,
    lecture_id    TEXT NOT NULL,
    grade         REAL NOT NULL,
    answered      INTEGER NOT NULL,
    last_answered TEXT,
    last_activity INTEGER,
    PRIMARY KEY (student_id, lecture_id)
);
CREATE INDEX IF NOT EXISTS idx_questions_lecture ON questions(lecture_id);
CREATE INDEX IF NOT EXISTS idx_alloc_pair ON allocations(student_id, lecture_id);
CREATE INDEX IF NOT EXISTS idx_answers_lecture ON answers(lecture_id);
"""


# ---------------------------------------------------------------------------
# Wire-format codecs for policy bundles
# ---------------------------------------------------------------------------

def grade_policy_to_wire(p: GradePolicy) -> dict[str, Any]:
    return {
        "baseWindow": p.base_window,
        "growthThreshold": p.growth_threshold,
        "growthDivisor": p.growth_divisor,
        "maxWindow": p.max_window,
        "scale": p.scale,
        "lastAnswerWeight": p.last_answer_weight,
    }


def grade_policy_from_wire(d: dict[str, Any]) -> GradePolicy:
    return GradePolicy(
        base_window=int(d.get("baseWindow", 8)),
        growth_threshold=int(d.get("growthThreshold", 16)),
        growth_divisor=float(d.get("growthDivisor", 2.0)),
        max_window=int(d.get("maxWindow", 30)),
        scale=float(d.get("scale", 10.0)),
        last_answer_weight=float(d.get("lastAnswerWeight", 1.0)),
    )


def timeout_policy_to_wire(p: TimeoutPolicy) -> dict[str, Any]:
    return {
        "enabled": p.enabled,
        "tMin": p.t_min,
        "tMax": p.t_max,
        "gMin": p.g_min,
        "width": p.width,
    }


def timeout_policy_from_wire(d: dict[str, Any]) -> TimeoutPolicy:
    return TimeoutPolicy(
        enabled=bool(d.get("enabled", True)),
        t_min=float(d.get("tMin", 15.0)),
        t_max=float(d.get("tMax", 180.0)),
        g_min=float(d.get("gMin", 6.0)),
        width=float(d.get("width", 2.0)),
    )


def _now_ms() -> int:
    return int(time.time() * 1000)


class Store:
    """Single-file transactional store behind the service operations."""

    def __init__(
        self,
        path: str | Path,
        rng_seed: int | None = None,
        grade_policy: GradePolicy | None = None,
        timeout_policy: TimeoutPolicy | None = None,
    ):
        self.path = Path(path)
        self.default_grade_policy = grade_policy or GradePolicy()
        self.default_timeout_policy = timeout_policy or TimeoutPolicy()
        self._rng = np.random.default_rng(rng_seed)
        self._lock = threading.RLock()
        try:
            self._db = sqlite3.connect(self.path, check_same_thread=False, isolation_level=None)
            self._db.row_factory = sqlite3.Row
            self._db.execute("PRAGMA journal_mode=WAL")
            self._db.execute("PRAGMA synchronous=FULL")
            self._db.execute("PRAGMA foreign_keys=ON")
            check = self._db.execute("PRAGMA integrity_check").fetchone()[0]
            if check != "ok":
                raise CorruptStore(f"integrity check failed: {check}")
            self._db.executescript(_SCHEMA)
        except sqlite3.DatabaseError as exc:
            raise CorruptStore(f"{self.path}: {exc}") from exc

    def close(self) -> None:
        self._db.close()

    @contextlib.contextmanager
    def _txn(self) -> Iterator[sqlite3.Connection]:
        with self._lock:
            self._db.execute("BEGIN IMMEDIATE")
            try:
                yield self._db
            except BaseException:
                self._db.execute("ROLLBACK")
                raise
            else:
                self._db.execute("COMMIT")

    # ------------------------------------------------------------------
    # Catalog and content
    # ------------------------------------------------------------------

    def ensure_course(self, course_id: str, title: str | None = None) -> None:
        with self._txn() as db:
            db.execute(
                "INSERT INTO courses(id, title) VALUES(?, ?) ON CONFLICT(id) DO NOTHING",
                (course_id, title or course_id),
            )

    def ensure_tutorial(self, course_id: str, tutorial_id: str, title: str | None = None) -> None:
        self.ensure_course(course_id)
        with self._txn() as db:
            db.execute(
                "INSERT INTO tutorials(id, course_id, title) VALUES(?, ?, ?) "
                "ON CONFLICT(id) DO NOTHING",
                (tutorial_id, course_id, title or tutorial_id),
            )

    def ensure_lecture(
        self,
        course_id: str,
        tutorial_id: str,
        lecture_id: str,
        title: str | None = None,
        grade_policy: GradePolicy | None = None,
        timeout_policy: TimeoutPolicy | None = None,
    ) -> None:
        self.ensure_tutorial(course_id, tutorial_id)
        with self._txn() as db:
            db.execute(
                "INSERT INTO lectures(id, tutorial_id, title, grade_policy, timeout_policy) "
                "VALUES(?, ?, ?, ?, ?) ON CONFLICT(id) DO NOTHING",
                (
                    lecture_id,
                    tutorial_id,
                    title or lecture_id,
                    json.dumps(grade_policy_to_wire(grade_policy)) if grade_policy else None,
                    json.dumps(timeout_policy_to_wire(timeout_policy)) if timeout_policy else None,
                ),
            )

    def import_questions(self, lecture_id: str, questions: list[Question]) -> tuple[int, int]:
        """Upsert questions by content-hash id; returns (added, skipped). Atomic."""
        added = skipped = 0
        with self._txn() as db:
            self._require_lecture(db, lecture_id)
            pos_row = db.execute(
                "SELECT COALESCE(MAX(position), -1) FROM questions WHERE lecture_id=?",
                (lecture_id,),
            ).fetchone()
            position = pos_row[0] + 1
            for q in questions:
                exists = db.execute("SELECT 1 FROM questions WHERE id=?", (q.id,)).fetchone()
                if exists:
                    skipped += 1
                    continue
                db.execute(
                    "INSERT INTO questions(id, lecture_id, position, stem, choices, explanation) "
                    "VALUES(?, ?, ?, ?, ?, ?)",
                    (
                        q.id,
                        lecture_id,
                        position,
                        q.stem,
                        json.dumps([{"text": c.text, "correct": c.correct} for c in q.choices]),
                        q.explanation,
                    ),
                )
                position += 1
                added += 1
        return added, skipped

    def catalog(self) -> dict[str, Any]:
        with self._lock:
            db = self._db
            courses = []
            for c in db.execute("SELECT id, title FROM courses ORDER BY id"):
                tutorials = []
                for t in db.execute(
                    "SELECT id, title FROM tutorials WHERE course_id=? ORDER BY id", (c["id"],)
                ):
                    lectures = [
                        {
                            "id": l["id"],
                            "title": l["title"],
                            "questionCount": db.execute(
                                "SELECT COUNT(*) FROM questions WHERE lecture_id=?", (l["id"],)
                            ).fetchone()[0],
                        }
                        for l in db.execute(
                            "SELECT id, title FROM lectures WHERE tutorial_id=? ORDER BY id",
                            (t["id"],),
                        )
                    ]
                    tutorials.append({"id": t["id"], "title": t["title"], "lectures": lectures})
                courses.append({"id": c["id"], "title": c["title"], "tutorials": tutorials})
            return {"courses": courses}

    def _require_lecture(self, db: sqlite3.Connection, lecture_id: str) -> sqlite3.Row:
        row = db.execute("SELECT * FROM lectures WHERE id=?", (lecture_id,)).fetchone()
        if row is None:
            raise UnknownLecture(lecture_id)
        return row

    def lecture_questions(self, lecture_id: str) -> list[Question]:
        with self._lock:
            self._require_lecture(self._db, lecture_id)
            rows = self._db.execute(
                "SELECT * FROM questions WHERE lecture_id=? ORDER BY position", (lecture_id,)
            ).fetchall()
        return [_question_from_row(r) for r in rows]

    def lecture_policies(self, lecture_id: str) -> tuple[GradePolicy, TimeoutPolicy]:
        with self._lock:
            row = self._require_lecture(self._db, lecture_id)
        gp = (
            grade_policy_from_wire(json.loads(row["grade_policy"]))
            if row["grade_policy"]
            else self.default_grade_policy
        )
        tp = (
            timeout_policy_from_wire(json.loads(row["timeout_policy"]))
            if row["timeout_policy"]
            else self.default_timeout_policy
        )
        return gp, tp

    # ------------------------------------------------------------------
    # Users
    # ------------------------------------------------------------------

    def create_user(self, name: str, role: str, class_id: str | None = None) -> dict[str, Any]:
        if role not in ROLES:
            raise ValueError(f"role must be one of {ROLES}")
        user = {
            "id": f"u-{secrets.token_hex(8)}",
            "name": name,
            "role": role,
            "classId": class_id,
            "token": secrets.token_hex(16),
        }
        with self._txn() as db:
            db.execute(
                "INSERT INTO users(id, name, role, class_id, token) VALUES(?, ?, ?, ?, ?)",
                (user["id"], name, role, class_id, user["token"]),
            )
        return user

    def user_by_token(self, token: str) -> dict[str, Any] | None:
        with self._lock:
            row = self._db.execute("SELECT * FROM users WHERE token=?", (token,)).fetchone()
        if row is None:
            return None
        return {
            "id": row["id"],
            "name": row["name"],
            "role": row["role"],
            "classId": row["class_id"],
        }

    # ------------------------------------------------------------------
    # Allocation
    # ------------------------------------------------------------------

    def get_allocation(self, student_id: str, lecture_id: str) -> dict[str, Any]:
        """Idempotent per-student allocation plus the full drill payload."""
        with self._txn() as db:
            self._require_lecture(db, lecture_id)
            bank = {
                r["id"]: _question_from_row(r)
                for r in db.execute(
                    "SELECT * FROM questions WHERE lecture_id=? ORDER BY position", (lecture_id,)
                )
            }
            if not bank:
                raise alloc.EmptyLecture(lecture_id)
            existing = {
                r["question_id"]: r["token"]
                for r in db.execute(
                    "SELECT token, question_id FROM allocations "
                    "WHERE student_id=? AND lecture_id=?",
                    (student_id, lecture_id),
                )
            }
            additions = alloc.choose_allocation(list(bank), set(existing), self._rng)
            now = _now_ms()
            for qid in additions:
                token = alloc.new_token()
                db.execute(
                    "INSERT INTO allocations(token, student_id, lecture_id, question_id, "
                    "created_ms) VALUES(?, ?, ?, ?, ?)",
                    (token, student_id, lecture_id, qid, now),
                )
                existing[qid] = token

            difficulties = self._difficulties(db, list(existing))
            ordered = alloc.rank_by_difficulty(list(existing), difficulties)
            state = self._cached_state(db, student_id, lecture_id)

        gp, tp = self.lecture_policies(lecture_id)
        return {
            "lectureId": lecture_id,
            "questions": [
                {
                    "token": existing[qid],
                    "stem": bank[qid].stem,
                    "choices": [{"text": c.text, "correct": c.correct} for c in bank[qid].choices],
                    "explanation": bank[qid].explanation,
                    "imageUrl": bank[qid].image_url,
                }
                for qid in ordered
            ],
            "gradePolicy": grade_policy_to_wire(gp),
            "timeoutPolicy": timeout_policy_to_wire(tp),
            "grade": state["grade"],
            "answered": state["answered"],
        }

    def _difficulties(self, db: sqlite3.Connection, question_ids: list[str]) -> dict[str, float]:
        out = {}
        for qid in question_ids:
            row = db.execute(
                "SELECT attempts, incorrect FROM difficulty_stats WHERE question_id=?", (qid,)
            ).fetchone()
            stats = (
                alloc.DifficultyStats(row["attempts"], row["incorrect"])
                if row
                else alloc.DifficultyStats()
            )
            out[qid] = alloc.difficulty(stats)
        return out

    def difficulty_stats(self, question_id: str) -> alloc.DifficultyStats:
        with self._lock:
            row = self._db.execute(
                "SELECT attempts, incorrect FROM difficulty_stats WHERE question_id=?",
                (question_id,),
            ).fetchone()
        return alloc.DifficultyStats(row["attempts"], row["incorrect"]) if row else alloc.DifficultyStats()

    # ------------------------------------------------------------------
    # Answer ingestion
    # ------------------------------------------------------------------

    def ingest_batch(
        self, student_id: str, lecture_id: str, records: list[dict[str, Any]]
    ) -> dict[str, Any]:
        """Apply an offline answer batch; idempotent on (student, lecture, seq).

        Every record gets a status: accepted, duplicate, or rejected with a
        reason (unknown_token, invalid_choice, timeout_violation). The batch
        is one transaction; correctness is recomputed from the canonical
        questions and the grade refolded from the raw log.
        """
        statuses: list[dict[str, Any] | None] = [None] * len(records)
        with self._txn() as db:
            self._require_lecture(db, lecture_id)
            gp, tp = self.lecture_policies(lecture_id)
            alloc_map = {
                r["token"]: r["question_id"]
                for r in db.execute(
                    "SELECT token, question_id FROM allocations "
                    "WHERE student_id=? AND lecture_id=?",
                    (student_id, lecture_id),
                )
            }
            questions = {
                r["id"]: _question_from_row(r)
                for r in db.execute(
                    "SELECT * FROM questions WHERE lecture_id=?", (lecture_id,)
                )
            }
            existing_seqs = {
                r["seq"]
                for r in db.execute(
                    "SELECT seq FROM answers WHERE student_id=? AND lecture_id=?",
                    (student_id, lecture_id),
                )
            }

            now = _now_ms()
            new_by_seq: dict[int, int] = {}  # seq -> input index
            ordered = sorted(range(len(records)), key=lambda i: records[i]["clientSeq"])
            for idx in ordered:
                rec = records[idx]
                seq = int(rec["clientSeq"])
                if seq in existing_seqs or seq in new_by_seq:
                    statuses[idx] = {"status": "duplicate"}
                    continue
                qid = alloc_map.get(rec["token"])
                if qid is None:
                    statuses[idx] = {"status": "rejected", "reason": "unknown_token"}
                    continue
                question = questions[qid]
                timed_out = bool(rec["timedOut"])
                chosen = rec.get("chosenIndex")
                if timed_out:
                    chosen = None
                    correct = False
                else:
                    if chosen is None or not 0 <= int(chosen) < len(question.choices):
                        statuses[idx] = {"status": "rejected", "reason": "invalid_choice"}
                        continue
                    chosen = int(chosen)
                    correct = question.choices[chosen].correct
                db.execute(
                    "INSERT INTO answers(student_id, lecture_id, seq, token, question_id, "
                    "chosen_index, correct, timed_out, time_taken, client_ts, server_ts) "
                    "VALUES(?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)",
                    (
                        student_id,
                        lecture_id,
                        seq,
                        rec["token"],
                        qid,
                        chosen,
                        int(correct),
                        int(timed_out),
                        float(rec["timeTaken"]),
                        int(rec["clientTimestamp"]),
                        now,
                    ),
                )
                new_by_seq[seq] = idx

            result = self._refold(db, student_id, lecture_id, gp, tp)
            verdicts = {v.seq: v for v in result.verdicts}
            for seq, idx in new_by_seq.items():
                v = verdicts[seq]
                if v.included:
                    statuses[idx] = {"status": "accepted"}
                else:
                    statuses[idx] = {"status": "rejected", "reason": v.reject_reason}

            # difficulty stats count each newly stored record once, at ingest
            for seq, idx in new_by_seq.items():
                if not verdicts[seq].included:
                    continue
                rec_row = db.execute(
                    "SELECT question_id, correct, timed_out FROM answers "
                    "WHERE student_id=? AND lecture_id=? AND seq=?",
                    (student_id, lecture_id, seq),
                ).fetchone()
                got_it = bool(rec_row["correct"]) and not bool(rec_row["timed_out"])
                db.execute(
                    "INSERT INTO difficulty_stats(question_id, attempts, incorrect) "
                    "VALUES(?, 1, ?) ON CONFLICT(question_id) DO UPDATE SET "
                    "attempts = attempts + 1, incorrect = incorrect + ?",
                    (rec_row["question_id"], int(not got_it), int(not got_it)),
                )

        return {
            "statuses": statuses,
            "grade": result.grade,
            "answered": result.answered,
        }

    def _refold(
        self,
        db: sqlite3.Connection,
        student_id: str,
        lecture_id: str,
        gp: GradePolicy,
        tp: TimeoutPolicy,
    ) -> ReplayResult:
        """Recompute derived state from the raw log and refresh the cache."""
        raw = [
            RawRecord(
                seq=r["seq"],
                question_id=r["question_id"],
                chosen_index=r["chosen_index"],
                correct=bool(r["correct"]),
                timed_out=bool(r["timed_out"]),
                time_taken=r["time_taken"],
            )
            for r in db.execute(
                "SELECT * FROM answers WHERE student_id=? AND lecture_id=? ORDER BY seq",
                (student_id, lecture_id),
            )
        ]
        result = replay(raw, gp, tp)
        last_activity = db.execute(
            "SELECT MAX(server_ts) FROM answers WHERE student_id=? AND lecture_id=?",
            (student_id, lecture_id),
        ).fetchone()[0]
        db.execute(
            "INSERT INTO state_cache(student_id, lecture_id, grade, answered, last_answered, "
            "last_activity) VALUES(?, ?, ?, ?, ?, ?) "
            "ON CONFLICT(student_id, lecture_id) DO UPDATE SET grade=excluded.grade, "
            "answered=excluded.answered, last_answered=excluded.last_answered, "
            "last_activity=excluded.last_activity",
            (student_id, lecture_id, result.grade, result.answered, result.last_answered, last_activity),
        )
        return result

    def _cached_state(
        self, db: sqlite3.Connection, student_id: str, lecture_id: str
    ) -> dict[str, Any]:
        row = db.execute(
            "SELECT * FROM state_cache WHERE student_id=? AND lecture_id=?",
            (student_id, lecture_id),
        ).fetchone()
        if row is None:
            return {"grade": 0.0, "answered": 0, "lastAnswered": None, "lastActivity": None}
        return {
            "grade": row["grade"],
            "answered": row["answered"],
            "lastAnswered": row["last_answered"],
            "lastActivity": row["last_activity"],
        }

    def replay_state(self, student_id: str, lecture_id: str) -> ReplayResult:
        """From-scratch fold of the stored raw log (the cache's oracle)."""
        gp, tp = self.lecture_policies(lecture_id)
        with self._lock:
            raw = [
                RawRecord(
                    seq=r["seq"],
                    question_id=r["question_id"],
                    chosen_index=r["chosen_index"],
                    correct=bool(r["correct"]),
                    timed_out=bool(r["timed_out"]),
                    time_taken=r["time_taken"],
                )
                for r in self._db.execute(
                    "SELECT * FROM answers WHERE student_id=? AND lecture_id=? ORDER BY seq",
                    (student_id, lecture_id),
                )
            ]
        return replay(raw, gp, tp)

    def cached_state(self, student_id: str, lecture_id: str) -> dict[str, Any]:
        with self._lock:
            return self._cached_state(self._db, student_id, lecture_id)

    # ------------------------------------------------------------------
    # Progress and export
    # ------------------------------------------------------------------

    def class_progress(self, class_id: str) -> list[dict[str, Any]]:
        """One row per (student, lecture) the student has touched."""
        with self._lock:
            db = self._db
            students = db.execute(
                "SELECT id, name FROM users WHERE class_id=? AND role='student' ORDER BY id",
                (class_id,),
            ).fetchall()
            rows = []
            for s in students:
                pairs = {
                    r["lecture_id"]
                    for r in db.execute(
                        "SELECT DISTINCT lecture_id FROM allocations WHERE student_id=?",
                        (s["id"],),
                    )
                } | {
                    r["lecture_id"]
                    for r in db.execute(
                        "SELECT DISTINCT lecture_id FROM answers WHERE student_id=?", (s["id"],)
                    )
                }
                for lecture_id in sorted(pairs):
                    state = self._cached_state(db, s["id"], lecture_id)
                    rows.append(
                        {
                            "studentId": s["id"],
                            "studentName": s["name"],
                            "lectureId": lecture_id,
                            "answered": state["answered"],
                            "grade": state["grade"],
                            "lastActivity": state["lastActivity"],
                        }
                    )
        return rows

    def export_answers(
        self, lecture_id: str | None = None, student_id: str | None = None
    ) -> Iterator[dict[str, Any]]:
        """Raw answer log, totally ordered by (student, lecture, seq)."""
        query = "SELECT * FROM answers"
        clauses, params = [], []
        if lecture_id is not None:
            clauses.append("lecture_id=?")
            params.append(lecture_id)
        if student_id is not None:
            clauses.append("student_id=?")
            params.append(student_id)
        if clauses:
            query += " WHERE " + " AND ".join(clauses)
        query += " ORDER BY student_id, lecture_id, seq"
        with self._lock:
            rows = self._db.execute(query, params).fetchall()
        for r in rows:
            yield {
                "student": r["student_id"],
                "lecture": r["lecture_id"],
                "seq": r["seq"],
                "question": r["question_id"],
                "chosen": r["chosen_index"],
                "correct": bool(r["correct"]),
                "timedOut": bool(r["timed_out"]),
                "timeTaken": r["time_taken"],
                "clientTs": r["client_ts"],
                "serverTs": r["server_ts"],
            }


def _question_from_row(row: sqlite3.Row) -> Question:
    choices = tuple(
        Choice(c["text"], c["correct"]) for c in json.loads(row["choices"])
    )
    return Question(
        id=row["id"], stem=row["stem"], choices=choices, explanation=row["explanation"]
    )
