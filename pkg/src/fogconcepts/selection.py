"""Difficulty ranking, top-fraction chunks, and chunk-to-chunk pair turnover."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .concepts import ConceptPair, NounExtractor, RankedPair, count_pairs, top_pairs
from .errors import EmptyDocument, InvalidFraction
from .preprocess import Document
from .readability import FormulaVariant, ScoredSentence, score_document

DEFAULT_FRACTIONS = (0.5, 0.4, 0.3, 0.2, 0.1)


@dataclass(frozen=True)
class RankedList:
    entries: tuple[ScoredSentence, ...]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def positions(self) -> list[int]:
        return [e.position for e in self.entries]


@dataclass(frozen=True)
class ChunkReport:
    fraction: float
    selected: frozenset[int]
    top_pairs: tuple[RankedPair, ...]

    @property
    def pair_set(self) -> frozenset[ConceptPair]:
        return frozenset(r.pair for r in self.top_pairs)


@dataclass(frozen=True)
class TransitionReport:
    from_fraction: Optional[float]
    to_fraction: float
    new_pairs: frozenset[ConceptPair]
    dropped_pairs: frozenset[ConceptPair]


def rank_sentences(doc: Document, formula: FormulaVariant = FormulaVariant.PAPER) -> RankedList:
    """Most difficult first; equal scores keep document order."""
    if not doc.sentences:
        raise EmptyDocument("cannot rank an empty document")
    scored = score_document(doc, formula)
    return RankedList(tuple(sorted(scored, key=lambda s: (-s.fi, s.position))))


def check_fraction(fraction: float) -> None:
    if isinstance(fraction, bool) or not (0 < fraction <= 1):
        raise InvalidFraction(f"fraction must lie in (0, 1], got {fraction!r}")


def chunk_size(fraction: float, n: int) -> int:
    check_fraction(fraction)
    # decimal reading of the float so that 0.3 * 10 is 3, not 3.0000000000000004
    return math.ceil(Fraction(repr(float(fraction))) * n)


def select_chunk(ranked: RankedList, fraction: float) -> frozenset[int]:
    k = chunk_size(fraction, len(ranked))
    return frozenset(e.position for e in ranked.entries[:k])


def check_descending(fractions: Sequence[float]) -> None:
    if not fractions:
        raise InvalidFraction("at least one fraction is required")
    for f in fractions:
        check_fraction(f)
    for prev, cur in zip(fractions, fractions[1:]):
        if not cur < prev:
            raise InvalidFraction(f"fractions must be strictly descending: {prev} then {cur}")


def chunk_evolution(
    doc: Document,
    extractor: NounExtractor,
    fractions: Sequence[float] = DEFAULT_FRACTIONS,
    top_k: int = 20,
    formula: FormulaVariant = FormulaVariant.PAPER,
    noun_sets: Optional[Sequence[frozenset[str]]] = None,
) -> tuple[ChunkReport, list[TransitionReport], list[ChunkReport]]:
    """Top-k pairs per chunk and the new/dropped sets between neighbouring chunks.

    Returns ``(baseline, transitions, chunks)``. The baseline is the first
    (largest) chunk; every one of its pairs counts as new. ``noun_sets`` may
    carry precomputed nouns indexed by sentence position.
    """
    check_descending(fractions)
    ranked = rank_sentences(doc, formula)
    if noun_sets is None:
        noun_sets = extractor.extract(doc.sentences)
    chunks = []
    for f in fractions:
        selected = select_chunk(ranked, f)
        matrix = count_pairs(noun_sets[p] for p in sorted(selected))
        chunks.append(ChunkReport(f, selected, tuple(top_pairs(matrix, top_k))))
    transitions = [
        TransitionReport(
            prev.fraction,
            cur.fraction,
            cur.pair_set - prev.pair_set,
            prev.pair_set - cur.pair_set,
        )
        for prev, cur in zip(chunks, chunks[1:])
    ]
    return chunks[0], transitions, chunks


EVOLUTION_COLUMNS = ("from_fraction", "to_fraction", "n_new", "n_dropped", "new_pairs", "dropped_pairs")


def _pairs_cell(pairs: frozenset[ConceptPair]) -> str:
    return ";".join(f"{p.a}|{p.b}" for p in sorted(pairs))


def evolution_csv(baseline: ChunkReport, transitions: Sequence[TransitionReport]) -> str:
    """CSV with one baseline row (empty ``from_fraction``) then one row per transition."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(EVOLUTION_COLUMNS)
    rows = [TransitionReport(None, baseline.fraction, baseline.pair_set, frozenset())]
    rows.extend(transitions)
    for t in rows:
        writer.writerow([
            "" if t.from_fraction is None else f"{t.from_fraction:.4f}",
            f"{t.to_fraction:.4f}",
            len(t.new_pairs),
            len(t.dropped_pairs),
            _pairs_cell(t.new_pairs),
            _pairs_cell(t.dropped_pairs),
        ])
    return buf.getvalue()
