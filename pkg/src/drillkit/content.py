"""Question bank model, the TeX question-file importer, and choice shuffling.

The file format is a minimal TeX-compatible grammar::

    \\question{stem}
    \\truechoice{the right answer}
    \\falsechoice{a distractor}
    ...
    \\explanation{why}

Brace matching handles arbitrary nesting; ``\\{`` and ``\\}`` are literal
braces, and every character between the outer braces is kept byte-for-byte
(math spans like ``$\\frac{1}{2}$`` are never interpreted). Lines whose
first non-blank character is ``%`` are comments outside brace groups.

Question identity is a content hash over the exact block bytes: choices are
not reordered or normalized, so editing any character (or swapping two
distractors) yields a new question id.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field


class QuestionFileError(Exception):
    """Base error for question-file parsing; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MalformedBlock(QuestionFileError):
    """Structural problem: unbalanced braces, stray text, missing command."""


class ChoiceCountError(QuestionFileError):
    """A question needs exactly one \\truechoice and at least one \\falsechoice."""


@dataclass(frozen=True)
class Choice:
    text: str
    correct: bool

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("choice text must be non-empty")


@dataclass(frozen=True)
class Question:
    id: str
    stem: str
    choices: tuple[Choice, ...]
    explanation: str
    image_url: str | None = None  # reserved in the wire format; importer never sets it

    def __post_init__(self):
        if len(self.choices) < 2:
            raise ValueError("a question needs at least 2 choices")
        if sum(1 for c in self.choices if c.correct) != 1:
            raise ValueError("a question needs exactly one correct choice")

    @property
    def correct_index(self) -> int:
        return next(i for i, c in enumerate(self.choices) if c.correct)


@dataclass
class Lecture:
    id: str
    title: str
    question_ids: list[str] = field(default_factory=list)


@dataclass
class Tutorial:
    id: str
    title: str
    lectures: list[Lecture] = field(default_factory=list)


@dataclass
class Course:
    id: str
    title: str
    tutorials: list[Tutorial] = field(default_factory=list)


def question_id(stem: str, choices: list[tuple[str, bool]], explanation: str) -> str:
    """Content-hash id: 32 hex chars over the exact field bytes, in order."""
    h = hashlib.sha256()
    h.update(stem.encode("utf-8"))
    h.update(b"\x00")
    for text, correct in choices:
        h.update(b"T" if correct else b"F")
        h.update(text.encode("utf-8"))
        h.update(b"\x00")
    h.update(explanation.encode("utf-8"))
    return h.hexdigest()[:32]


def make_question(stem: str, choices: list[tuple[str, bool]], explanation: str) -> Question:
    """Build a Question with its content-hash id from (text, correct) pairs."""
    return Question(
        id=question_id(stem, choices, explanation),
        stem=stem,
        choices=tuple(Choice(text, correct) for text, correct in choices),
        explanation=explanation,
    )


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_COMMANDS = ("\\question", "\\truechoice", "\\falsechoice", "\\explanation")


class _Scanner:
    """Character scanner tracking the current 1-based line number."""

    def __init__(self, source: str):
        self.src = source
        self.pos = 0
        self.line = 1

    def eof(self) -> bool:
        return self.pos >= len(self.src)

    def _advance(self, n: int = 1) -> None:
        self.line += self.src.count("\n", self.pos, self.pos + n)
        self.pos += n

    def skip_blank(self) -> None:
        """Skip whitespace and comment lines (first non-blank char is %)."""
        while not self.eof():
            ch = self.src[self.pos]
            if ch in " \t\r\n":
                self._advance()
            elif ch == "%" and self._at_line_start():
                end = self.src.find("\n", self.pos)
                self._advance((end - self.pos) if end != -1 else len(self.src) - self.pos)
            else:
                return

    def _at_line_start(self) -> bool:
        i = self.pos - 1
        while i >= 0 and self.src[i] in " \t":
            i -= 1
        return i < 0 or self.src[i] == "\n"

    def peek_command(self) -> str | None:
        for cmd in _COMMANDS:
            if self.src.startswith(cmd + "{", self.pos):
                return cmd
        return None

    def read_command_body(self, cmd: str) -> str:
        """Consume ``cmd{...}`` and return the brace content verbatim."""
        start_line = self.line
        self._advance(len(cmd) + 1)  # command word plus opening brace
        depth = 1
        body_start = self.pos
        while not self.eof():
            ch = self.src[self.pos]
            if ch == "\\" and self.pos + 1 < len(self.src):
                self._advance(2)  # escaped char: \{ \} \\ or any command head
                continue
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    body = self.src[body_start : self.pos]
                    self._advance()
                    return body
            self._advance()
        raise MalformedBlock(f"unbalanced braces in {cmd} block", start_line)


def parse_tex_questions(source: str) -> list[Question]:
    """Parse a question file into Questions, one per \\question block.

    Raises MalformedBlock or ChoiceCountError with the offending line number.
    """
    sc = _Scanner(source)
    questions: list[Question] = []
    while True:
        sc.skip_blank()
        if sc.eof():
            return questions
        block_line = sc.line
        if sc.peek_command() != "\\question":
            raise MalformedBlock("expected \\question{...}", sc.line)
        stem = sc.read_command_body("\\question")

        choices: list[tuple[str, bool]] = []
        while True:
            sc.skip_blank()
            cmd = sc.peek_command()
            if cmd == "\\truechoice":
                choices.append((sc.read_command_body(cmd), True))
            elif cmd == "\\falsechoice":
                choices.append((sc.read_command_body(cmd), False))
            else:
                break

        n_true = sum(1 for _, correct in choices if correct)
        if n_true == 0:
            raise ChoiceCountError("question has no \\truechoice", block_line)
        if n_true > 1:
            raise ChoiceCountError("question has multiple \\truechoice", block_line)
        if len(choices) == n_true:
            raise ChoiceCountError("question has no \\falsechoice", block_line)

        sc.skip_blank()
        if sc.peek_command() != "\\explanation":
            raise MalformedBlock("expected \\explanation{...}", sc.line)
        explanation = sc.read_command_body("\\explanation")
        questions.append(make_question(stem, choices, explanation))


def serialize_questions(questions: list[Question]) -> str:
    """Render Questions back into the question-file grammar.

    Inverse of parse_tex_questions: parsing the output reproduces the same
    Questions (same ids), since brace content is stored verbatim.
    """
    parts = []
    for q in questions:
        for text in [q.stem, *(c.text for c in q.choices), q.explanation]:
            _check_balanced(text)
        lines = [f"\\question{{{q.stem}}}"]
        for c in q.choices:
            cmd = "truechoice" if c.correct else "falsechoice"
            lines.append(f"\\{cmd}{{{c.text}}}")
        lines.append(f"\\explanation{{{q.explanation}}}")
        parts.append("\n".join(lines))
    return "\n\n".join(parts) + ("\n" if parts else "")


def _check_balanced(text: str) -> None:
    depth = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            i += 2
            continue
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced braces in question text")
        i += 1
    if depth != 0:
        raise ValueError("unbalanced braces in question text")


# ---------------------------------------------------------------------------
# Presentation order
# ---------------------------------------------------------------------------


def shuffle_choices(question: Question, seed: int) -> list[int]:
    """Display permutation of choice indices, deterministic per (question id, seed).

    position -> canonical index; uniform over permutations across seeds, so
    the correct answer has no fixed screen position to learn.
    """
    digest = hashlib.sha256(f"{question.id}:{seed:x}".encode("ascii")).digest()
    rng = random.Random(int.from_bytes(digest[:8], "big"))
    order = list(range(len(question.choices)))
    rng.shuffle(order)
    return order
