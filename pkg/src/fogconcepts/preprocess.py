"""Raw text to a Document of tokenized, syllable-annotated sentences."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import EmptyDocument

DEFAULT_ABBREVIATIONS = (
    "e.g.",
    "i.e.",
    "et al.",
    "Fig.",
    "Figs.",
    "vs.",
    "cf.",
    "approx.",
    "Eq.",
    "Ref.",
    "resp.",
    "Dr.",
    "Prof.",
)

_TOKEN_RE = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*")
_BOUNDARY_RE = re.compile(r"[.!?][\"')\]’”]*\s+")
_PARAGRAPH_RE = re.compile(r"\n[ \t\r\f\v]*\n\s*")
_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")
_TERMINATOR_LINE_RE = re.compile(r"[.!?][\"')\]’”]*\s*$")
_BACKMATTER_RE = re.compile(
    r"^\s*(?:[0-9ivx]+\.?\s+)?"
    r"(?:references|acknowledge?ments?|bibliography)\s*:?\s*$",
    re.IGNORECASE,
)

# "i" + vowel reads as two syllables (me-di-a, i-sche-mi-a) except where the
# preceding consonant palatalizes it (-tion, -cial, -sion, -gion, -xious).
_HIATUS_STARTS = ("ia", "io", "iu")
_PALATAL = frozenset("cstgx")


@dataclass(frozen=True)
class StripConfig:
    references: bool = False
    front_matter: bool = False


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    syllables: int = 1

    @property
    def is_complex(self) -> bool:
        return self.syllables >= 3


@dataclass(frozen=True)
class Sentence:
    position: int
    text: str
    tokens: tuple[Token, ...]

    @property
    def word_count(self) -> int:
        return len(self.tokens)

    @cached_property
    def complex_count(self) -> int:
        return sum(1 for t in self.tokens if t.is_complex)

    @cached_property
    def syllable_count(self) -> int:
        return sum(t.syllables for t in self.tokens)

    @cached_property
    def normalized(self) -> tuple[str, ...]:
        return tuple(t.normalized for t in self.tokens)


@dataclass(frozen=True)
class Document:
    sentences: tuple[Sentence, ...]
    word_count: int = field(init=False)
    syllable_count: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "word_count", sum(s.word_count for s in self.sentences))
        object.__setattr__(self, "syllable_count", sum(s.syllable_count for s in self.sentences))

    def __len__(self) -> int:
        return len(self.sentences)

    @property
    def avg_syllables_per_word(self) -> float:
        if self.word_count == 0:
            return 0.0
        return self.syllable_count / self.word_count


def strip_boilerplate(raw: str, config: StripConfig = StripConfig()) -> str:
    """Remove back matter and/or front matter by line-level heading rules.

    With every stripper disabled the input is returned unchanged.
    """
    text = raw
    if config.references:
        lines = text.splitlines(keepends=True)
        for i, line in enumerate(lines):
            if _BACKMATTER_RE.match(line):
                text = "".join(lines[:i])
                break
    if config.front_matter:
        lines = text.splitlines(keepends=True)
        for i, line in enumerate(lines):
            if _TERMINATOR_LINE_RE.search(line):
                text = "".join(lines[i:])
                break
    return text


def _ends_with_abbreviation(chunk: str, abbreviations: Iterable[str]) -> bool:
    low = chunk.lower()
    for abbr in abbreviations:
        a = abbr.lower()
        if low.endswith(a):
            start = len(low) - len(a)
            if start == 0 or not low[start - 1].isalnum():
                return True
    return False


def segment_sentences(raw: str, abbreviations: Sequence[str] = DEFAULT_ABBREVIATIONS) -> list[str]:
    """Split at ``.``, ``!`` or ``?`` followed by whitespace and an uppercase
    letter or digit, and at blank lines. Protected abbreviations never split."""
    sentences = []
    for paragraph in _PARAGRAPH_RE.split(raw):
        start = 0
        for m in _BOUNDARY_RE.finditer(paragraph):
            end = m.end()
            if end >= len(paragraph):
                continue
            nxt = paragraph[end]
            if not (nxt.isupper() or nxt.isdigit()):
                continue
            head = paragraph[start:end].rstrip()
            if _ends_with_abbreviation(head, abbreviations):
                continue
            if head.strip():
                sentences.append(head.strip())
            start = end
        tail = paragraph[start:].strip()
        if tail:
            sentences.append(tail)
    return sentences


def tokenize(sentence_text: str) -> list[Token]:
    """Maximal alphanumeric runs; internal hyphens and apostrophes stay inside a token."""
    return [Token(m.group(), m.group().casefold()) for m in _TOKEN_RE.finditer(sentence_text)]


def count_syllables(word: str) -> int:
    """Vowel-group syllable estimate, never below 1.

    Digits are ignored, so ``10min`` counts as ``min``.
    """
    letters = "".join(c for c in word.casefold() if c.isalpha())
    if not letters:
        return 1
    count = 0
    for m in _VOWEL_GROUP_RE.finditer(letters):
        count += 1
        group = m.group()
        before = letters[m.start() - 1] if m.start() > 0 else ""
        if group.startswith(_HIATUS_STARTS) and before not in _PALATAL:
            count += 1
    # silent final e: a lone "e" after a consonant, but keep consonant+"le"
    if (
        len(letters) >= 2
        and letters.endswith("e")
        and letters[-2] not in "aeiouy"
        and not (letters.endswith("le") and len(letters) >= 3 and letters[-3] not in "aeiouy")
    ):
        count -= 1
    return max(count, 1)


def annotate(tokens: Iterable[Token]) -> tuple[Token, ...]:
    return tuple(Token(t.surface, t.normalized, count_syllables(t.surface)) for t in tokens)


def build_document(
    raw: str,
    strip: StripConfig = StripConfig(),
    abbreviations: Sequence[str] = DEFAULT_ABBREVIATIONS,
) -> Document:
    text = strip_boilerplate(raw, strip)
    sentences = []
    for chunk in segment_sentences(text, abbreviations):
        tokens = annotate(tokenize(chunk))
        if tokens:
            sentences.append(Sentence(len(sentences), chunk, tokens))
    if not sentences:
        raise EmptyDocument("no sentence with at least one word")
    return Document(tuple(sentences))
