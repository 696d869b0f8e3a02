"""Question-file parsing, round-trip fixpoint, ids, and choice shuffling."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from drillkit.content import (
    Choice,
    ChoiceCountError,
    MalformedBlock,
    Question,
    make_question,
    parse_tex_questions,
    serialize_questions,
    shuffle_choices,
)

BASIC = r"""
% introductory integral drill
\question{What is $\int_0^1 x\,dx$?}
\truechoice{$\frac{1}{2}$}
\falsechoice{$1$}
\falsechoice{$0$}
\falsechoice{$\frac{1}{3}$}
\explanation{The antiderivative is $\frac{x^2}{2}$; evaluate from 0 to 1.}
"""


class TestParsing:
    def test_single_block(self):
        qs = parse_tex_questions(BASIC)
        assert len(qs) == 1
        q = qs[0]
        assert q.stem == r"What is $\int_0^1 x\,dx$?"
        assert len(q.choices) == 4
        assert q.correct_index == 0
        assert q.choices[0].text == r"$\frac{1}{2}$"
        assert q.explanation.startswith("The antiderivative")

    def test_empty_file(self):
        assert parse_tex_questions("") == []
        assert parse_tex_questions("\n  \n% only a comment\n") == []

    def test_choice_order_is_file_order(self):
        src = (
            "\\question{q}\n\\falsechoice{a}\n\\truechoice{b}\n\\falsechoice{c}\n"
            "\\explanation{e}\n"
        )
        q = parse_tex_questions(src)[0]
        assert [c.text for c in q.choices] == ["a", "b", "c"]
        assert q.correct_index == 1

    def test_nested_braces_preserved_byte_for_byte(self):
        stem = r"Simplify ${a \cdot \{x : x > 0\}}$ where $\frac{1}{\frac{2}{3}}$"
        src = f"\\question{{{stem}}}\n\\truechoice{{$x$}}\n\\falsechoice{{$y$}}\n\\explanation{{ok}}\n"
        q = parse_tex_questions(src)[0]
        assert q.stem == stem

    def test_multiple_blocks(self):
        src = BASIC + "\n" + BASIC.replace("$1$", "$2$")
        qs = parse_tex_questions(src)
        assert len(qs) == 2
        assert qs[0].id != qs[1].id

    def test_comment_lines_between_blocks_ignored(self):
        src = "% header\n" + BASIC + "% trailer comment\n"
        assert len(parse_tex_questions(src)) == 1

    def test_percent_inside_braces_is_content(self):
        src = "\\question{gain of 50% or more?}\n\\truechoice{yes}\n\\falsechoice{no}\n\\explanation{e}\n"
        q = parse_tex_questions(src)[0]
        assert q.stem == "gain of 50% or more?"


class TestParseErrors:
    def test_unbalanced_braces(self):
        src = "\\question{unclosed\n\\truechoice{a}\n"
        with pytest.raises(MalformedBlock) as err:
            parse_tex_questions(src)
        assert err.value.line == 1

    def test_missing_explanation(self):
        src = "\\question{q}\n\\truechoice{a}\n\\falsechoice{b}\n"
        with pytest.raises(MalformedBlock) as err:
            parse_tex_questions(src)
        assert "explanation" in str(err.value)

    def test_stray_text(self):
        with pytest.raises(MalformedBlock) as err:
            parse_tex_questions("hello world\n\\question{q}")
        assert err.value.line == 1

    def test_no_truechoice(self):
        src = "\\question{q}\n\\falsechoice{a}\n\\falsechoice{b}\n\\explanation{e}\n"
        with pytest.raises(ChoiceCountError):
            parse_tex_questions(src)

    def test_multiple_truechoice(self):
        src = "\\question{q}\n\\truechoice{a}\n\\truechoice{b}\n\\explanation{e}\n"
        with pytest.raises(ChoiceCountError):
            parse_tex_questions(src)

    def test_no_falsechoice(self):
        src = "\\question{q}\n\\truechoice{a}\n\\explanation{e}\n"
        with pytest.raises(ChoiceCountError):
            parse_tex_questions(src)

    def test_error_line_numbers_point_at_block(self):
        src = "\\question{ok}\n\\truechoice{a}\n\\falsechoice{b}\n\\explanation{e}\n\n\n\\question{bad}\n\\falsechoice{only}\n\\explanation{e}\n"
        with pytest.raises(ChoiceCountError) as err:
            parse_tex_questions(src)
        assert err.value.line == 7


# any UTF-8-encodable text with balanced braces (surrogates are not valid input)
balanced_text = st.recursive(
    st.text(
        alphabet=st.characters(blacklist_characters="{}\\", blacklist_categories=("Cs",)),
        min_size=1,
        max_size=12,
    ),
    lambda inner: st.tuples(inner, inner).map(lambda t: t[0] + "{" + t[1] + "}"),
    max_leaves=4,
).map(lambda s: s if s.strip() else s + "x")


class TestRoundTrip:
    def test_fixpoint_on_basic_file(self):
        qs = parse_tex_questions(BASIC)
        text = serialize_questions(qs)
        assert parse_tex_questions(text) == qs
        assert serialize_questions(parse_tex_questions(text)) == text

    @settings(max_examples=60, deadline=None)
    @given(
        stem=balanced_text,
        right=balanced_text,
        wrongs=st.lists(balanced_text, min_size=1, max_size=4),
        expl=balanced_text,
        true_pos=st.integers(min_value=0, max_value=4),
    )
    def test_fixpoint_on_generated_questions(self, stem, right, wrongs, expl, true_pos):
        choices = [(w, False) for w in wrongs]
        choices.insert(min(true_pos, len(choices)), (right, True))
        q = make_question(stem, choices, expl)
        text = serialize_questions([q])
        assert parse_tex_questions(text) == [q]

    def test_escaped_braces_round_trip(self):
        q = make_question(r"set \{1, 2\}", [(r"\{\}", True), ("other", False)], r"esc \\ done")
        text = serialize_questions([q])
        assert parse_tex_questions(text) == [q]


class TestIds:
    def test_id_is_content_hash(self):
        a = parse_tex_questions(BASIC)[0]
        b = parse_tex_questions(BASIC)[0]
        assert a.id == b.id and len(a.id) == 32

    def test_reordering_distractors_changes_id(self):
        src1 = "\\question{q}\n\\truechoice{t}\n\\falsechoice{a}\n\\falsechoice{b}\n\\explanation{e}\n"
        src2 = "\\question{q}\n\\truechoice{t}\n\\falsechoice{b}\n\\falsechoice{a}\n\\explanation{e}\n"
        assert parse_tex_questions(src1)[0].id != parse_tex_questions(src2)[0].id

    def test_any_edit_changes_id(self):
        base = parse_tex_questions(BASIC)[0]
        edited = parse_tex_questions(BASIC.replace("from 0 to 1", "from 0 to 1!"))[0]
        assert base.id != edited.id

    def test_question_invariants(self):
        with pytest.raises(ValueError):
            Question(id="x", stem="s", choices=(Choice("a", True),), explanation="e")
        with pytest.raises(ValueError):
            Question(
                id="x",
                stem="s",
                choices=(Choice("a", True), Choice("b", True)),
                explanation="e",
            )
        with pytest.raises(ValueError):
            Choice("   ", True)


class TestShuffle:
    @pytest.fixture
    def question(self):
        return parse_tex_questions(BASIC)[0]

    def test_two_choice_question(self):
        q = make_question("q", [("a", True), ("b", False)], "e")
        assert sorted(shuffle_choices(q, 1)) == [0, 1]

    def test_deterministic_per_seed(self, question):
        assert shuffle_choices(question, 1234) == shuffle_choices(question, 1234)
        rng = random.Random(0)
        seeds = [rng.getrandbits(63) for _ in range(200)]
        assert any(
            shuffle_choices(question, s) != shuffle_choices(question, seeds[0]) for s in seeds
        )

    def test_always_a_permutation(self, question):
        for seed in range(500):
            assert sorted(shuffle_choices(question, seed)) == [0, 1, 2, 3]

    def test_correct_choice_lands_uniformly(self, question):
        # 40k seeds, 4 positions: binomial 3-sigma band is well inside +-400
        counts = [0, 0, 0, 0]
        rng = random.Random(2024)
        correct = question.correct_index
        for _ in range(40_000):
            perm = shuffle_choices(question, rng.getrandbits(63))
            counts[perm.index(correct)] += 1
        for c in counts:
            assert abs(c - 10_000) <= 400

    def test_different_questions_shuffle_independently(self):
        q1 = make_question("q1", [("a", True), ("b", False), ("c", False)], "e")
        q2 = make_question("q2", [("a", True), ("b", False), ("c", False)], "e")
        diffs = sum(shuffle_choices(q1, s) != shuffle_choices(q2, s) for s in range(100))
        assert diffs > 30
