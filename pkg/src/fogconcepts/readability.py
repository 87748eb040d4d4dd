"""Per-sentence Fog Index, its syllable-normalized form, and both/any/none statistics."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .concepts import ConceptPair, concept_tokens
from .errors import ZeroSyllableAverage, ZeroWords
from .preprocess import Document, Sentence


class FormulaVariant(str, enum.Enum):
    # 0.4 * words + 100 * complex / words, with a single sentence
    PAPER = "paper"
    # 0.4 * (words + 100 * complex / words)
    GUNNING = "gunning"


@dataclass(frozen=True)
class ScoredSentence:
    sentence: Sentence
    fi: float
    fi_norm: float

    @property
    def position(self) -> int:
        return self.sentence.position


@dataclass(frozen=True)
class CategoryStats:
    category: str
    sentence_count: int
    mean_fi_norm: Optional[float]
    sum_fi_norm: float = 0.0


CATEGORIES = ("both", "any", "none")


def fog_index(sentence: Sentence, formula: FormulaVariant = FormulaVariant.PAPER) -> float:
    words = sentence.word_count
    if words == 0:
        raise ZeroWords(f"sentence {sentence.position} has no words")
    complex_share = sentence.complex_count / words
    if FormulaVariant(formula) is FormulaVariant.GUNNING:
        return 0.4 * (words + 100 * complex_share)
    return 0.4 * words + 100 * complex_share


def normalize_fi(fi: float, doc: Document) -> float:
    avg = doc.avg_syllables_per_word
    if avg <= 0:
        raise ZeroSyllableAverage("document has no syllables to normalize by")
    return fi / avg


def score_document(doc: Document, formula: FormulaVariant = FormulaVariant.PAPER) -> list[ScoredSentence]:
    scored = []
    for s in doc.sentences:
        fi = fog_index(s, formula)
        scored.append(ScoredSentence(s, fi, normalize_fi(fi, doc)))
    return scored


def _token_matches(token: str, concept: str, fold_plurals: bool) -> bool:
    if token == concept:
        return True
    return fold_plurals and (token == concept + "s" or concept == token + "s")


def contains_concept(tokens: Sequence[str], concept: Sequence[str], fold_plurals: bool = False) -> bool:
    """True if ``concept`` occurs as a contiguous run of ``tokens``."""
    n = len(concept)
    if n == 0:
        return False
    if n == 1 and not fold_plurals:
        return concept[0] in tokens
    for i in range(len(tokens) - n + 1):
        if all(_token_matches(tokens[i + j], concept[j], fold_plurals) for j in range(n)):
            return True
    return False


def contains_pair(sentence: Sentence, pair: ConceptPair, fold_plurals: bool = False) -> tuple[bool, bool]:
    tokens = sentence.normalized
    return (
        contains_concept(tokens, concept_tokens(pair.a), fold_plurals),
        contains_concept(tokens, concept_tokens(pair.b), fold_plurals),
    )


def categorize_sentences(doc: Document, pair: ConceptPair, fold_plurals: bool = False) -> dict[str, list[int]]:
    """Partition sentence positions by how many of the pair's concepts they contain."""
    parts: dict[str, list[int]] = {c: [] for c in CATEGORIES}
    for s in doc.sentences:
        has_a, has_b = contains_pair(s, pair, fold_plurals)
        if has_a and has_b:
            parts["both"].append(s.position)
        elif has_a or has_b:
            parts["any"].append(s.position)
        else:
            parts["none"].append(s.position)
    return parts


def category_stats(
    doc: Document,
    pair: ConceptPair,
    formula: FormulaVariant = FormulaVariant.PAPER,
    fold_plurals: bool = False,
) -> list[CategoryStats]:
    scored = score_document(doc, formula)
    parts = categorize_sentences(doc, pair, fold_plurals)
    out = []
    for cat in CATEGORIES:
        values = [scored[p].fi_norm for p in parts[cat]]
        total = sum(values)
        mean = total / len(values) if values else None
        out.append(CategoryStats(cat, len(values), mean, total))
    return out
