"""Per-pair PPV / sensitivity bookkeeping and harmonic-mean re-ranking."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, NamedTuple, Union

from .concepts import ConceptPair, RankedPair
from .errors import ConfigError, ZeroPopulation
from .preprocess import Document
from .readability import contains_pair


class ConfusionCounts(NamedTuple):
    R: int
    S: int
    TP: int
    FP: int
    FN: int
    TN: int


def ppv(tp: int, fp: int) -> float:
    return tp / (tp + fp) if tp + fp else 0.0


def sensitivity(tp: int, fn: int) -> float:
    return tp / (tp + fn) if tp + fn else 0.0


def harmonic_mean(p: float, s: float) -> float:
    return 2 * p * s / (p + s) if p + s else 0.0


def accuracy(tp: int, tn: int, fp: int, fn: int) -> float:
    total = tp + tn + fp + fn
    if total == 0:
        raise ZeroPopulation("accuracy is undefined for an empty population")
    return (tp + tn) / total


def both_set(doc: Document, pair: ConceptPair, fold_plurals: bool = False) -> frozenset[int]:
    return frozenset(s.position for s in doc.sentences if all(contains_pair(s, pair, fold_plurals)))


def confusion_counts(
    doc: Document, selected: Iterable[int], pair: ConceptPair, fold_plurals: bool = False
) -> ConfusionCounts:
    """R is the whole selected set, S the document sentences holding both concepts."""
    selected = frozenset(selected)
    if not selected <= {s.position for s in doc.sentences}:
        raise ConfigError("selected positions must come from the document")
    relevant = both_set(doc, pair, fold_plurals)
    r, s = len(selected), len(relevant)
    tp = len(selected & relevant)
    fp, fn = r - tp, s - tp
    return ConfusionCounts(r, s, tp, fp, fn, len(doc) - tp - fp - fn)


@dataclass(frozen=True)
class PairEvaluation:
    pair: ConceptPair
    counts: ConfusionCounts

    @property
    def ppv(self) -> float:
        return ppv(self.counts.TP, self.counts.FP)

    @property
    def sensitivity(self) -> float:
        return sensitivity(self.counts.TP, self.counts.FN)

    @property
    def harmonic_mean(self) -> float:
        return harmonic_mean(self.ppv, self.sensitivity)

    @property
    def accuracy(self) -> float:
        c = self.counts
        return accuracy(c.TP, c.TN, c.FP, c.FN)

    @property
    def exact_score(self) -> Fraction:
        # 2TP / (R + S): the harmonic mean as an exact rational, used for ranking
        c = self.counts
        return Fraction(2 * c.TP, c.R + c.S) if c.R + c.S else Fraction(0)


@dataclass(frozen=True)
class RepresentativeEntry:
    evaluation: PairEvaluation
    rank: int
    frequency: int | None = None


def evaluate_pair(doc: Document, selected: Iterable[int], pair: ConceptPair, fold_plurals: bool = False) -> PairEvaluation:
    return PairEvaluation(pair, confusion_counts(doc, selected, pair, fold_plurals))


def representative_pairs(
    doc: Document,
    selected: Iterable[int],
    candidates: Iterable[Union[RankedPair, ConceptPair]],
    top_n: int = 10,
    fold_plurals: bool = False,
) -> list[RepresentativeEntry]:
    """Re-rank candidates by harmonic mean (dense ranks) and keep the first ``top_n``.

    Ties are compared exactly, so pairs with equal 2TP/(R+S) always share a
    rank; at the cut they are ordered lexicographically.
    """
    if top_n < 1:
        raise ConfigError(f"top_n must be at least 1, got {top_n}")
    selected = frozenset(selected)
    scored = []
    for c in candidates:
        pair, freq = (c.pair, c.frequency) if isinstance(c, RankedPair) else (c, None)
        scored.append((evaluate_pair(doc, selected, pair, fold_plurals), freq))
    scored.sort(key=lambda ef: (-ef[0].exact_score, ef[0].pair))
    out = []
    rank, last = 0, None
    for ev, freq in scored[:top_n]:
        if ev.exact_score != last:
            rank, last = rank + 1, ev.exact_score
        out.append(RepresentativeEntry(ev, rank, freq))
    return out


def load_gold(path: Union[str, Path]) -> frozenset[ConceptPair]:
    """Known-related pairs, one ``concept_a<TAB>concept_b`` per line."""
    pairs = set()
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ConfigError(f"{path}:{lineno}: expected two tab-separated concepts")
            pairs.add(ConceptPair.of(*parts))
    return frozenset(pairs)
