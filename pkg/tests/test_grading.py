"""Tapered and legacy grade computation against brute-force oracles."""

import random

import pytest
from hypothesis import given, strategies as st

from drillkit.grading import (
    FIXED_8,
    AnswerOutcome,
    GradePolicy,
    compute_grade,
    compute_grade_legacy,
    window_size,
)


def history(flags):
    return [AnswerOutcome(correct=bool(f)) for f in flags]


def oracle_window(n, base=8, divisor=2.0, cap=30):
    """Independent restatement of the window rule."""
    if n < base:
        return n
    return min(max(base, int(n / divisor)), cap)


def oracle_grade(flags, policy=GradePolicy()):
    """From-scratch windowed weighted mean over the raw list."""
    w = oracle_window(len(flags), policy.base_window, policy.growth_divisor, policy.max_window)
    if w == 0:
        return 0.0
    window = flags[-w:]
    weights = [1.0] * (w - 1) + [policy.last_answer_weight]
    num = sum(wt for wt, f in zip(weights, window) if f)
    return policy.scale * num / sum(weights)


class TestWindowSize:
    def test_paper_anchor_points(self):
        assert window_size(16) == 8  # growth starts only past 16
        assert window_size(60) == 30  # cap reached at 60
        assert window_size(61) == 30
        assert window_size(1000) == 30

    @pytest.mark.parametrize("n,expected", [(0, 0), (5, 5), (7, 7), (8, 8), (40, 20), (100, 30)])
    def test_closed_form(self, n, expected):
        assert window_size(n) == expected

    def test_matches_oracle_everywhere(self):
        for n in range(0, 500):
            assert window_size(n) == oracle_window(n)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            window_size(-1)

    @given(st.integers(min_value=8, max_value=10_000))
    def test_bounds_and_monotone(self, n):
        w = window_size(n)
        assert 8 <= w <= 30
        assert window_size(n + 1) >= w


class TestComputeGrade:
    def test_empty_history_grades_zero(self):
        assert compute_grade([]) == 0.0

    def test_eight_correct_is_perfect(self):
        assert compute_grade(history([1] * 8)) == 10.0

    def test_twenty_answers_seven_of_last_ten(self):
        # w(20) = 10; older answers are all wrong and must not matter
        flags = [0] * 10 + [1, 1, 1, 1, 1, 1, 1, 0, 0, 0]
        assert compute_grade(history(flags)) == 7.0

    def test_matches_oracle_on_random_histories(self):
        rng = random.Random(421)
        for _ in range(2000):
            flags = [rng.random() < 0.6 for _ in range(rng.randrange(0, 200))]
            assert compute_grade(history(flags)) == oracle_grade(flags)

    def test_last_answer_weight(self):
        policy = GradePolicy(last_answer_weight=3.0)
        flags = [1, 1, 1, 1, 0, 0, 0, 0]
        # window of 8: four unit-weight hits, miss on the weight-3 last slot
        assert compute_grade(history(flags), policy) == pytest.approx(10.0 * 4 / 10)
        flags = [0, 0, 0, 0, 1, 1, 1, 1]
        assert compute_grade(history(flags), policy) == pytest.approx(10.0 * 6 / 10)
        rng = random.Random(7)
        for _ in range(500):
            fl = [rng.random() < 0.5 for _ in range(rng.randrange(0, 60))]
            assert compute_grade(history(fl), policy) == pytest.approx(oracle_grade(fl, policy))

    def test_append_changes_grade_boundedly(self):
        rng = random.Random(99)
        for _ in range(500):
            flags = [rng.random() < 0.5 for _ in range(rng.randrange(1, 150))]
            w_old = window_size(len(flags))
            w_new = window_size(len(flags) + 1)
            before = compute_grade(history(flags))
            after = compute_grade(history(flags + [rng.random() < 0.5]))
            assert abs(after - before) <= 10.0 * (1.0 / w_old + 1.0 / w_new) + 1e-12

    def test_flipping_wrong_to_correct_never_decreases(self):
        rng = random.Random(5)
        for _ in range(200):
            flags = [rng.random() < 0.5 for _ in range(rng.randrange(1, 80))]
            base = compute_grade(history(flags))
            w = window_size(len(flags))
            for i in range(len(flags) - w, len(flags)):
                if not flags[i]:
                    flipped = list(flags)
                    flipped[i] = True
                    assert compute_grade(history(flipped)) >= base

    @given(st.lists(st.booleans(), max_size=300))
    def test_bounds(self, flags):
        g = compute_grade(history(flags))
        assert 0.0 <= g <= 10.0
        if flags and all(flags) and len(flags) >= 1:
            assert g == 10.0
        if flags and not any(flags):
            assert g == 0.0


class TestLegacyGrade:
    def test_last_eight_all_wrong(self):
        flags = [1] * 92 + [0] * 8
        assert compute_grade_legacy(history(flags)) == 0.0

    def test_three_answers(self):
        assert compute_grade_legacy(history([1, 0, 1])) == pytest.approx(10 * 2 / 3)

    def test_eight_correct(self):
        assert compute_grade_legacy(history([1] * 8)) == 10.0

    def test_empty(self):
        assert compute_grade_legacy([]) == 0.0

    def test_fixed8_policy_equals_legacy(self):
        # the parametric route and the standalone legacy route must agree
        rng = random.Random(1234)
        for _ in range(2000):
            flags = [rng.random() < 0.5 for _ in range(rng.randrange(0, 120))]
            h = history(flags)
            assert compute_grade(h, FIXED_8) == compute_grade_legacy(h)


class TestValidation:
    def test_timed_out_answers_are_incorrect(self):
        with pytest.raises(ValueError):
            AnswerOutcome(correct=True, timed_out=True)
        out = AnswerOutcome(correct=False, timed_out=True, time_taken=31.0)
        assert not out.correct

    def test_policy_invariants(self):
        with pytest.raises(ValueError):
            GradePolicy(base_window=31, max_window=30)
        with pytest.raises(ValueError):
            GradePolicy(growth_threshold=4)
        with pytest.raises(ValueError):
            GradePolicy(scale=0)
        with pytest.raises(ValueError):
            GradePolicy(last_answer_weight=0.5)
        with pytest.raises(ValueError):
            GradePolicy(growth_divisor=0)
