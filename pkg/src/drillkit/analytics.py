"""Simulation and measurement of grading-scheme behavior.

Real cohort data (exam outcomes joined to drill grades) is institutional
and not shipped, so the toolkit reproduces the qualitative findings by
simulation: a small student model drives the drill loop end-to-end through
the allocation, pacing, and grading rules, and the resulting final grades
are scored as predictors of latent mastery via a Mann-Whitney AUC. The
logistic fit reproduces the pass-probability-versus-grade curve for real
or synthetic exam joins.

The student model is a modeling choice, not system ground truth: answer
accuracy follows a 2-parameter logistic in (mastery - difficulty) with the
conventional 1.7 discrimination constant, mastery approaches 1 by a fixed
fraction of the remaining gap per answer, and guessers pick uniformly at
random and answer fast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from . import allocation as alloc
from .grading import FIXED_8, AnswerOutcome, GradePolicy, compute_grade
from .pacing import TimeoutPolicy, timeout_seconds


class DegenerateInput(ValueError):
    """Both outcome classes are required (all-pass or all-fail input)."""


class CompleteSeparation(Exception):
    """A grade threshold perfectly splits the classes; ML coefficients diverge.

    Carries the last iterate in .fit: its 50% crossing is still a usable
    estimate of the separating grade.
    """

    def __init__(self, fit: "LogisticFit"):
        super().__init__("complete separation: coefficients diverged")
        self.fit = fit


DISCRIMINATION = 1.7


@dataclass(frozen=True)
class SimPersona:
    """Latent student: mastery level, learning speed, guessing, slowness."""

    theta0: float
    learn_rate: float = 0.0
    guesser: bool = False
    time_scale: float = 1.0

    def __post_init__(self):
        if not 0 <= self.learn_rate < 1:
            raise ValueError("learn_rate must be in [0, 1)")


def accuracy(theta: float, difficulty: float) -> float:
    """P(correct) for a non-guesser at the given mastery and item difficulty."""
    return 1.0 / (1.0 + math.exp(-DISCRIMINATION * (theta - difficulty)))


@dataclass
class SimResult:
    history: list[AnswerOutcome]
    grades: list[float]  # running grade after each answer
    final_grade: float
    max_grade: float
    final_theta: float


#: Response-time model for non-guessers: lognormal, median proportional to
#: difficulty. Chosen so ordinary students rarely trip the default timeout
#: while a slow solver (time_scale >> 1) reliably does at mid grades.
TIME_MEDIAN_PER_DIFFICULTY = 12.0
TIME_SIGMA = 0.5


def simulate_session(
    persona: SimPersona,
    difficulties: list[float],
    grade_policy: GradePolicy,
    timeout_policy: TimeoutPolicy,
    n_answers: int,
    rng_seed: int | np.random.SeedSequence,
    n_choices: int = 4,
) -> SimResult:
    """Run one student through n_answers of the full drill loop.

    Each step selects the next question for the current grade, draws
    correctness and a response time, applies the timeout (an over-limit
    response becomes a timed-out incorrect answer capped at the limit),
    and refolds the grade. Deterministic given the seed.
    """
    if n_answers < 1:
        raise ValueError("n_answers must be >= 1")
    rng = np.random.default_rng(rng_seed)
    qids = [f"q{i:04d}" for i in range(len(difficulties))]
    diff_map = dict(zip(qids, difficulties))
    state = alloc.StudentLectureState(
        student_id="sim", lecture_id="sim", grade_policy=grade_policy
    )
    for qid in alloc.choose_allocation(qids, set(), rng):
        state.allocation[alloc.new_token()] = qid
    allocated = list(state.allocation.values())

    theta = persona.theta0
    grades: list[float] = []

    for _ in range(n_answers):
        grade = grades[-1] if grades else 0.0  # state.grade as of the last answer
        qid = alloc.select_next(
            allocated, diff_map, grade, rng, state.last_answered, scale=grade_policy.scale
        )
        d = diff_map[qid]
        limit = timeout_seconds(grade, timeout_policy)

        if persona.guesser:
            correct = rng.random() < 1.0 / n_choices
            time_taken = rng.uniform(1.0, 5.0)
        else:
            correct = rng.random() < accuracy(theta, d)
            median = TIME_MEDIAN_PER_DIFFICULTY * d * persona.time_scale
            time_taken = median * math.exp(TIME_SIGMA * rng.standard_normal())

        if time_taken > limit:
            outcome = AnswerOutcome(correct=False, timed_out=True, time_taken=limit)
        else:
            outcome = AnswerOutcome(correct=correct, timed_out=False, time_taken=time_taken)

        state.record(qid, outcome)
        grades.append(state.grade)
        theta = theta + persona.learn_rate * (1.0 - theta)

    return SimResult(
        history=state.history,
        grades=grades,
        final_grade=grades[-1],
        max_grade=max(grades),
        final_theta=theta,
    )


# ---------------------------------------------------------------------------
# Logistic pass-probability fit (IRLS)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogisticFit:
    """P(pass | grade) = sigmoid(beta0 + beta1 * grade)."""

    beta0: float
    beta1: float
    converged: bool
    iterations: int

    def prob(self, grade: float) -> float:
        return 1.0 / (1.0 + math.exp(-(self.beta0 + self.beta1 * grade)))

    def crossing(self) -> float:
        """Grade at which the fitted pass probability reaches 50%."""
        if self.beta1 == 0:
            raise ValueError("flat curve has no 50% crossing")
        return -self.beta0 / self.beta1


MAX_ITERATIONS = 100
STEP_TOLERANCE = 1e-8
SEPARATION_NORM = 50.0


def fit_pass_probability(points: list[tuple[float, bool]]) -> LogisticFit:
    """Maximum-likelihood logistic fit of pass outcome on grade, by IRLS.

    Raises DegenerateInput for fewer than two points or a single outcome
    class, CompleteSeparation when the coefficient norm exceeds 50 during
    iteration (the last iterate rides along on the exception).
    """
    if len(points) < 2:
        raise DegenerateInput("need at least 2 points")
    g = np.asarray([p[0] for p in points], dtype=float)
    y = np.asarray([1.0 if p[1] else 0.0 for p in points])
    if y.min() == y.max():
        raise DegenerateInput("need both outcome classes")

    X = np.column_stack([np.ones_like(g), g])
    beta = np.zeros(2)
    for iteration in range(1, MAX_ITERATIONS + 1):
        eta = X @ beta
        mu = np.clip(1.0 / (1.0 + np.exp(-eta)), 1e-12, 1.0 - 1e-12)
        w = mu * (1.0 - mu)
        hessian = X.T @ (X * w[:, None])
        score = X.T @ (y - mu)
        step = np.linalg.solve(hessian, score)
        beta = beta + step
        if float(np.linalg.norm(beta)) > SEPARATION_NORM:
            raise CompleteSeparation(
                LogisticFit(float(beta[0]), float(beta[1]), converged=False, iterations=iteration)
            )
        if float(np.max(np.abs(step))) < STEP_TOLERANCE:
            return LogisticFit(float(beta[0]), float(beta[1]), converged=True, iterations=iteration)
    return LogisticFit(float(beta[0]), float(beta[1]), converged=False, iterations=MAX_ITERATIONS)


def auc(scored: list[tuple[float, bool]]) -> float:
    """Mann-Whitney AUC: P(positive score > negative) + half the tie mass."""
    labels = np.asarray([bool(lab) for _, lab in scored])
    if labels.all() or not labels.any():
        raise DegenerateInput("need both labels")
    scores = np.asarray([s for s, _ in scored], dtype=float)
    ranks = rankdata(scores)  # average ranks handle ties
    n_pos = int(labels.sum())
    n_neg = len(labels) - n_pos
    pos_rank_sum = float(ranks[labels].sum())
    return (pos_rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


# ---------------------------------------------------------------------------
# Scheme comparison experiment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PopulationSpec:
    """Mixture of learning students and fast uniform guessers."""

    n_students: int = 500
    guesser_frac: float = 0.4
    theta0_mean: float = 0.3
    theta0_sd: float = 0.15
    learn_rate_low: float = 0.003
    learn_rate_high: float = 0.02
    guesser_theta0: float = 0.15
    mastery_threshold: float = 0.6


@dataclass(frozen=True)
class LectureSpec:
    n_questions: int = 60
    n_choices: int = 4
    difficulty_low: float = 0.2
    difficulty_high: float = 0.8


def default_schemes() -> dict[str, tuple[GradePolicy, TimeoutPolicy]]:
    return {
        "taper+timeout": (GradePolicy(), TimeoutPolicy()),
        "taper": (GradePolicy(), TimeoutPolicy.disabled()),
        "fixed-8": (FIXED_8, TimeoutPolicy.disabled()),
    }


@dataclass
class SchemeComparison:
    """Per-scheme AUC of the final drill grade as a mastery predictor."""

    auc_mean: dict[str, float]
    auc_se: dict[str, float]
    auc_by_rep: dict[str, list[float]]
    rows: list[dict]  # per (scheme, rep, student): grade and mastery label
    n_reps: int
    n_students: int


def draw_personas(spec: PopulationSpec, rng: np.random.Generator) -> list[SimPersona]:
    personas = []
    for _ in range(spec.n_students):
        if rng.random() < spec.guesser_frac:
            personas.append(SimPersona(theta0=spec.guesser_theta0, learn_rate=0.0, guesser=True))
        else:
            theta0 = float(np.clip(rng.normal(spec.theta0_mean, spec.theta0_sd), 0.02, 0.95))
            lam = float(rng.uniform(spec.learn_rate_low, spec.learn_rate_high))
            personas.append(SimPersona(theta0=theta0, learn_rate=lam))
    return personas


def compare_schemes(
    population: PopulationSpec = PopulationSpec(),
    lecture: LectureSpec = LectureSpec(),
    n_answers: int = 100,
    reps: int = 10,
    rng_seed: int = 0,
    schemes: dict[str, tuple[GradePolicy, TimeoutPolicy]] | None = None,
) -> SchemeComparison:
    """Simulate the population under each scheme and score grade-vs-mastery AUC.

    Students are paired across schemes: the same persona and per-student seed
    drive every scheme, so scheme differences are not drowned in population
    noise. Mastery labels come from final latent mastery, which depends only
    on the persona, never on the scheme.
    """
    schemes = schemes if schemes is not None else default_schemes()
    master = np.random.SeedSequence(rng_seed)
    rep_seeds = master.spawn(reps)

    auc_by_rep: dict[str, list[float]] = {name: [] for name in schemes}
    rows: list[dict] = []
    for rep, rep_seed in enumerate(rep_seeds):
        persona_seed, lecture_seed, *student_seeds = rep_seed.spawn(2 + population.n_students)
        rng = np.random.default_rng(persona_seed)
        personas = draw_personas(population, rng)
        difficulties = list(
            np.random.default_rng(lecture_seed).uniform(
                lecture.difficulty_low, lecture.difficulty_high, size=lecture.n_questions
            )
        )
        labels = [
            1 - (1 - p.theta0) * (1 - p.learn_rate) ** n_answers >= population.mastery_threshold
            for p in personas
        ]
        for name, (grade_policy, timeout_policy) in schemes.items():
            scored = []
            for persona, label, seed in zip(personas, labels, student_seeds):
                result = simulate_session(
                    persona,
                    difficulties,
                    grade_policy,
                    timeout_policy,
                    n_answers,
                    seed,
                    n_choices=lecture.n_choices,
                )
                scored.append((result.final_grade, label))
                rows.append(
                    {
                        "scheme": name,
                        "rep": rep,
                        "grade": result.final_grade,
                        "mastered": bool(label),
                        "guesser": persona.guesser,
                        "theta0": persona.theta0,
                        "finalTheta": result.final_theta,
                    }
                )
            auc_by_rep[name].append(auc(scored))

    auc_mean = {name: float(np.mean(vals)) for name, vals in auc_by_rep.items()}
    auc_se = {
        name: float(np.std(vals, ddof=1) / math.sqrt(len(vals))) if len(vals) > 1 else 0.0
        for name, vals in auc_by_rep.items()
    }
    return SchemeComparison(
        auc_mean=auc_mean,
        auc_se=auc_se,
        auc_by_rep=auc_by_rep,
        rows=rows,
        n_reps=reps,
        n_students=population.n_students,
    )


def paired_auc_gap_se(comparison: SchemeComparison, scheme_a: str, scheme_b: str) -> tuple[float, float]:
    """Mean and standard error of the per-rep AUC difference (a minus b)."""
    a = np.asarray(comparison.auc_by_rep[scheme_a])
    b = np.asarray(comparison.auc_by_rep[scheme_b])
    diff = a - b
    se = float(np.std(diff, ddof=1) / math.sqrt(len(diff))) if len(diff) > 1 else 0.0
    return float(diff.mean()), se


# ---------------------------------------------------------------------------
# Report tables
# ---------------------------------------------------------------------------


def bin_pass_rates(
    points: list[tuple[float, bool]], n_bins: int = 10, scale: float = 10.0
) -> list[dict]:
    """Empirical pass rate per grade bin (the black-curve table)."""
    edges = np.linspace(0.0, scale, n_bins + 1)
    out = []
    for i in range(n_bins):
        lo, hi = float(edges[i]), float(edges[i + 1])
        members = [
            passed for g, passed in points if lo <= g < hi or (i == n_bins - 1 and g == hi)
        ]
        out.append(
            {
                "gradeLow": lo,
                "gradeHigh": hi,
                "count": len(members),
                "passRate": (sum(members) / len(members)) if members else None,
            }
        )
    return out
