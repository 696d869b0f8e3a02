"""Operator entry points: serve the sync API, import question banks, run
scheme simulations, and build exam-vs-drill reports.

Configuration comes from (lowest to highest precedence) built-in defaults,
a key = value config file, DRILLKIT_* environment variables, and flags.
Simulation and report commands are deterministic for a fixed --seed.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import socket
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import analytics
from .content import QuestionFileError, parse_tex_questions
from .grading import FIXED_8, GradePolicy
from .pacing import TimeoutPolicy
from .replay import RawRecord, replay
from .store import CorruptStore, Store, UnknownLecture

EXIT_USAGE = 2
EXIT_PORT_IN_USE = 3
EXIT_CORRUPT_STORE = 4


@dataclass
class Config:
    data_dir: Path = Path("data")
    port: int = 8077
    host: str = "127.0.0.1"
    admin_token: str = "admin-dev-token"
    log_level: str = "info"
    grade_overrides: dict = field(default_factory=dict)
    timeout_overrides: dict = field(default_factory=dict)

    def grade_policy(self) -> GradePolicy:
        base = GradePolicy()
        if not self.grade_overrides:
            return base
        values = {
            "base_window": int(self.grade_overrides.get("base_window", base.base_window)),
            "growth_threshold": int(
                self.grade_overrides.get("growth_threshold", base.growth_threshold)
            ),
            "growth_divisor": float(
                self.grade_overrides.get("growth_divisor", base.growth_divisor)
            ),
            "max_window": int(self.grade_overrides.get("max_window", base.max_window)),
            "scale": float(self.grade_overrides.get("scale", base.scale)),
            "last_answer_weight": float(
                self.grade_overrides.get("last_answer_weight", base.last_answer_weight)
            ),
        }
        return GradePolicy(**values)

    def timeout_policy(self) -> TimeoutPolicy:
        base = TimeoutPolicy()
        if not self.timeout_overrides:
            return base
        values = {
            "enabled": _parse_bool(self.timeout_overrides.get("enabled", base.enabled)),
            "t_min": float(self.timeout_overrides.get("t_min", base.t_min)),
            "t_max": float(self.timeout_overrides.get("t_max", base.t_max)),
            "g_min": float(self.timeout_overrides.get("g_min", base.g_min)),
            "width": float(self.timeout_overrides.get("width", base.width)),
        }
        return TimeoutPolicy(**values)


def _parse_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in ("1", "true", "yes", "on")


def load_config(path: Path | None, args: argparse.Namespace) -> Config:
    """Merge defaults, config file, environment, and flags."""
    cfg = Config()
    if path is not None:
        if not path.exists():
            raise FileNotFoundError(f"config file not found: {path}")
        for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key == "port":
                cfg.port = int(value)
            elif key == "host":
                cfg.host = value
            elif key == "data_dir":
                cfg.data_dir = Path(value)
            elif key == "admin_token":
                cfg.admin_token = value
            elif key == "log_level":
                cfg.log_level = value
            elif key.startswith("grade."):
                cfg.grade_overrides[key[len("grade.") :]] = value
            elif key.startswith("timeout."):
                cfg.timeout_overrides[key[len("timeout.") :]] = value
            else:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    if os.environ.get("DRILLKIT_PORT"):
        cfg.port = int(os.environ["DRILLKIT_PORT"])
    if os.environ.get("DRILLKIT_DATA_DIR"):
        cfg.data_dir = Path(os.environ["DRILLKIT_DATA_DIR"])
    if os.environ.get("DRILLKIT_ADMIN_TOKEN"):
        cfg.admin_token = os.environ["DRILLKIT_ADMIN_TOKEN"]
    if getattr(args, "data_dir", None):
        cfg.data_dir = Path(args.data_dir)
    if getattr(args, "port", None):
        cfg.port = args.port
    if getattr(args, "host", None):
        cfg.host = args.host
    if getattr(args, "admin_token", None):
        cfg.admin_token = args.admin_token
    # fail fast on bad overrides
    cfg.grade_policy()
    cfg.timeout_policy()
    return cfg


def _open_store(cfg: Config, seed: int | None) -> Store:
    cfg.data_dir.mkdir(parents=True, exist_ok=True)
    return Store(
        cfg.data_dir / "drillkit.db",
        rng_seed=seed,
        grade_policy=cfg.grade_policy(),
        timeout_policy=cfg.timeout_policy(),
    )


# ---------------------------------------------------------------------------
# serve
# ---------------------------------------------------------------------------


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    cfg = load_config(args.config, args)
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((cfg.host, cfg.port))
    except OSError:
        print(f"error: port {cfg.port} already in use", file=sys.stderr)
        return EXIT_PORT_IN_USE
    finally:
        probe.close()

    try:
        store = _open_store(cfg, args.seed)
    except CorruptStore as exc:
        print(f"error: refusing to start on corrupt store: {exc}", file=sys.stderr)
        return EXIT_CORRUPT_STORE

    app = create_app(store, cfg.admin_token)
    try:
        uvicorn.run(app, host=cfg.host, port=cfg.port, log_level=cfg.log_level)
    finally:
        store.close()
    return 0


# ---------------------------------------------------------------------------
# import
# ---------------------------------------------------------------------------


def cmd_import(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, args)
    source = Path(args.file)
    if not source.exists():
        print(f"error: no such file: {source}", file=sys.stderr)
        return 1
    try:
        questions = parse_tex_questions(source.read_text(encoding="utf-8"))
    except QuestionFileError as exc:
        print(f"error: {source}: {exc}", file=sys.stderr)
        return 1

    store = _open_store(cfg, args.seed)
    try:
        store.ensure_lecture(args.course, args.tutorial, args.lecture)
        added, skipped = store.import_questions(args.lecture, questions)
    finally:
        store.close()
    print(f"added {added}, skipped {skipped}")
    return 0


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

_SCHEME_FLAGS = {"taper": GradePolicy(), "fixed8": FIXED_8}


def cmd_simulate(args: argparse.Namespace) -> int:
    if not 0.0 <= args.guessers <= 1.0:
        print("error: --guessers must be a fraction in [0, 1]", file=sys.stderr)
        return EXIT_USAGE
    if args.timeout is not None and args.scheme is None:
        print("error: --timeout requires --scheme", file=sys.stderr)
        return EXIT_USAGE
    cfg = load_config(args.config, args)

    if args.scheme is not None:
        timeout_on = args.timeout == "on"
        name = args.scheme + ("+timeout" if timeout_on else "")
        schemes = {
            name: (
                _SCHEME_FLAGS[args.scheme],
                cfg.timeout_policy() if timeout_on else TimeoutPolicy.disabled(),
            )
        }
    else:
        schemes = analytics.default_schemes()

    population = analytics.PopulationSpec(n_students=args.students, guesser_frac=args.guessers)
    comparison = analytics.compare_schemes(
        population=population,
        n_answers=args.answers,
        reps=args.reps,
        rng_seed=args.seed if args.seed is not None else 0,
        schemes=schemes,
    )

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows_path = out / "scheme_rows.csv"
    with rows_path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["scheme", "rep", "grade", "mastered", "guesser", "theta0", "finalTheta"])
        for row in comparison.rows:
            writer.writerow(
                [
                    row["scheme"],
                    row["rep"],
                    repr(row["grade"]),
                    int(row["mastered"]),
                    int(row["guesser"]),
                    repr(row["theta0"]),
                    repr(row["finalTheta"]),
                ]
            )

    summary = {
        "aucMean": comparison.auc_mean,
        "aucSe": comparison.auc_se,
        "aucByRep": comparison.auc_by_rep,
        "nStudents": comparison.n_students,
        "nReps": comparison.n_reps,
        "nAnswers": args.answers,
        "guesserFrac": args.guessers,
        "seed": args.seed if args.seed is not None else 0,
    }
    (out / "summary.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    for name in sorted(comparison.auc_mean):
        print(f"{name}: AUC {comparison.auc_mean[name]:.4f} +- {comparison.auc_se[name]:.4f}")
    return 0


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def cmd_report(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, args)
    export_path = Path(args.answers)
    exam_path = Path(args.exam)
    for p in (export_path, exam_path):
        if not p.exists():
            print(f"error: no such file: {p}", file=sys.stderr)
            return 1

    # final drill grade per student: replay each (student, lecture) log
    by_pair: dict[tuple[str, str], list[RawRecord]] = {}
    with export_path.open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            by_pair.setdefault((row["student"], row["lecture"]), []).append(
                RawRecord(
                    seq=row["seq"],
                    question_id=row["question"],
                    chosen_index=row.get("chosen"),
                    correct=bool(row["correct"]),
                    timed_out=bool(row["timedOut"]),
                    time_taken=float(row["timeTaken"]),
                )
            )
    grade_policy, timeout_policy = cfg.grade_policy(), cfg.timeout_policy()
    per_student: dict[str, list[float]] = {}
    for (student, _), records in sorted(by_pair.items()):
        result = replay(records, grade_policy, timeout_policy)
        per_student.setdefault(student, []).append(result.grade)
    drill_grades = {s: sum(gs) / len(gs) for s, gs in per_student.items()}

    exam_rows: dict[str, tuple[float, bool]] = {}
    with exam_path.open(encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            student = row["studentId"].strip()
            if student in exam_rows:
                print(f"error: duplicate exam row for student {student}", file=sys.stderr)
                return 1
            exam_rows[student] = (float(row["examGrade"]), _parse_bool(row["passed"]))

    unmatched_drill = sorted(set(drill_grades) - set(exam_rows))
    unmatched_exam = sorted(set(exam_rows) - set(drill_grades))
    for student in unmatched_drill:
        print(f"warning: no exam row for student {student}", file=sys.stderr)
    for student in unmatched_exam:
        print(f"warning: no drill answers for student {student}", file=sys.stderr)

    points = [
        (drill_grades[s], exam_rows[s][1]) for s in sorted(drill_grades) if s in exam_rows
    ]
    separated = False
    try:
        fit = analytics.fit_pass_probability(points)
    except analytics.DegenerateInput as exc:
        print(f"error: cannot fit pass-probability curve: {exc}", file=sys.stderr)
        return 1
    except analytics.CompleteSeparation as exc:
        print(
            "warning: complete separation; reporting the last iterate", file=sys.stderr
        )
        fit = exc.fit
        separated = True

    bins = analytics.bin_pass_rates(points, scale=grade_policy.scale)
    summary = {
        "students": len(points),
        "beta0": fit.beta0,
        "beta1": fit.beta1,
        "converged": fit.converged,
        "iterations": fit.iterations,
        "separated": separated,
        "crossing": fit.crossing() if fit.beta1 != 0 else None,
        "unmatchedDrill": unmatched_drill,
        "unmatchedExam": unmatched_exam,
    }

    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        with (out / "pass_rates.csv").open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["gradeLow", "gradeHigh", "count", "passRate"])
            for b in bins:
                rate = "" if b["passRate"] is None else repr(b["passRate"])
                writer.writerow([b["gradeLow"], b["gradeHigh"], b["count"], rate])
        (out / "fit.json").write_text(
            json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    print(json.dumps(summary, sort_keys=True))
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drillkit", description="Adaptive drilling platform operations."
    )
    parser.add_argument("--config", type=Path, default=None, help="key = value config file")
    parser.add_argument("--data-dir", default=None, help="store directory (default ./data)")
    parser.add_argument("--seed", type=int, default=None, help="deterministic RNG seed")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("serve", help="run the sync server")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--host", default=None)
    p.add_argument("--admin-token", default=None)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("import", help="import a TeX question file into a lecture")
    p.add_argument("file")
    p.add_argument("--course", required=True)
    p.add_argument("--tutorial", required=True)
    p.add_argument("--lecture", required=True)
    p.set_defaults(func=cmd_import)

    p = sub.add_parser("simulate", help="simulate grading schemes and report AUCs")
    p.add_argument("--students", type=int, default=500)
    p.add_argument("--guessers", type=float, default=0.4)
    p.add_argument("--scheme", choices=sorted(_SCHEME_FLAGS), default=None)
    p.add_argument("--timeout", choices=["on", "off"], default=None)
    p.add_argument("--answers", type=int, default=100)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("report", help="join exported answers with exam outcomes")
    p.add_argument("--answers", required=True, help="newline-delimited JSON export")
    p.add_argument("--exam", required=True, help="CSV: studentId,examGrade,passed")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, ValueError, UnknownLecture) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
