"""Noun extraction and the co-occurrence association matrix."""

from __future__ import annotations

import shlex
import subprocess
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Iterable, Optional, Protocol, Sequence, Union

from .errors import AdapterFailure, ConfigError
from .preprocess import Sentence, tokenize

NOUN_TAGS = frozenset({"NN", "NNS", "NNP", "NNPS"})

# verb/adverb endings first, then adjective endings (excito-toxic, dramatic, ...)
BLOCKED_SUFFIXES = ("ing", "ed", "ly", "ic", "ous", "ive", "ful", "less", "able", "ible")


@lru_cache(maxsize=4096)
def concept_tokens(concept: str) -> tuple[str, ...]:
    return tuple(t.normalized for t in tokenize(concept))


def normalize_concept(concept: str) -> str:
    return " ".join(concept_tokens(concept))


@dataclass(frozen=True, order=True)
class ConceptPair:
    """Unordered pair of concepts, stored with ``a < b``."""

    a: str
    b: str

    def __post_init__(self):
        if not self.a or not self.b:
            raise ConfigError("concepts must be non-empty")
        if not self.a < self.b:
            raise ConfigError(f"pair must be canonical and distinct: {self.a!r}, {self.b!r}")

    @classmethod
    def of(cls, x: str, y: str) -> "ConceptPair":
        x, y = normalize_concept(x), normalize_concept(y)
        if not x or not y:
            raise ConfigError("concepts must contain at least one word")
        if x == y:
            raise ConfigError(f"concepts must differ, got {x!r} twice")
        return cls(*sorted((x, y)))

    @property
    def label(self) -> str:
        return f"{self.a}-{self.b}"


AssociationMatrix = Counter  # Counter[ConceptPair]


@dataclass(frozen=True)
class RankedPair:
    pair: ConceptPair
    frequency: int
    rank: int


class NounExtractor(Protocol):
    def extract(self, sentences: Sequence[Sentence]) -> list[frozenset[str]]:
        """One set of normalized noun tokens per input sentence."""
        ...


def read_word_list(path: Union[str, Path]) -> frozenset[str]:
    with open(path, encoding="utf-8") as f:
        return frozenset(line.strip().casefold() for line in f if line.strip())


def _bundled(name: str) -> frozenset[str]:
    with resources.files("fogconcepts.data").joinpath(name).open(encoding="utf-8") as f:
        return frozenset(line.strip().casefold() for line in f if line.strip())


class HeuristicExtractor:
    """Dictionary-free noun guesser.

    A token is kept if it is not a stopword, not a bare number, at least two
    characters long, and does not end in a blocked verb/adverb/adjective
    suffix. Whitelisted tokens bypass the suffix check only.
    """

    name = "heuristic"

    def __init__(self, stopwords: Optional[Iterable[str]] = None, whitelist: Optional[Iterable[str]] = None):
        self.stopwords = frozenset(stopwords) if stopwords is not None else _bundled("stopwords.txt")
        self.whitelist = frozenset(whitelist) if whitelist is not None else _bundled("whitelist.txt")
        self._cache: dict[str, bool] = {}

    @classmethod
    def from_files(cls, stopwords_path=None, whitelist_path=None) -> "HeuristicExtractor":
        return cls(
            read_word_list(stopwords_path) if stopwords_path else None,
            read_word_list(whitelist_path) if whitelist_path else None,
        )

    def is_noun(self, token: str) -> bool:
        hit = self._cache.get(token)
        if hit is None:
            hit = self._classify(token)
            self._cache[token] = hit
        return hit

    def _classify(self, token: str) -> bool:
        if len(token) < 2 or token in self.stopwords:
            return False
        if not any(c.isalpha() for c in token):
            return False
        if token.endswith(BLOCKED_SUFFIXES) and token not in self.whitelist:
            return False
        return True

    def extract(self, sentences: Sequence[Sentence]) -> list[frozenset[str]]:
        return [frozenset(t for t in s.normalized if self.is_noun(t)) for s in sentences]


class TaggerAdapter:
    """Runs an external POS tagger once per batch over a line protocol.

    stdin: one sentence per line, surface tokens joined by single spaces.
    stdout: one line per sentence of ``token<TAB>TAG`` items joined by single
    spaces. NN, NNS, NNP and NNPS mark nouns.
    """

    def __init__(self, command: Union[str, Sequence[str]], timeout: Optional[float] = None):
        self.argv = shlex.split(command) if isinstance(command, str) else list(command)
        if not self.argv:
            raise ConfigError("empty tagger command")
        self.timeout = timeout

    @property
    def name(self) -> str:
        return shlex.join(self.argv)

    def extract(self, sentences: Sequence[Sentence]) -> list[frozenset[str]]:
        if not sentences:
            return []
        payload = "".join(" ".join(t.surface for t in s.tokens) + "\n" for s in sentences)
        try:
            proc = subprocess.run(
                self.argv,
                input=payload.encode("utf-8"),
                capture_output=True,
                timeout=self.timeout,
                check=False,
            )
        except (OSError, subprocess.SubprocessError) as e:
            raise AdapterFailure(f"tagger {self.argv[0]!r} could not run: {e}") from e
        if proc.returncode != 0:
            err = proc.stderr.decode("utf-8", "replace").strip().splitlines()[-1:]
            raise AdapterFailure(f"tagger exited with status {proc.returncode}: {' '.join(err)}")
        try:
            out = proc.stdout.decode("utf-8")
        except UnicodeDecodeError as e:
            raise AdapterFailure(f"tagger output is not UTF-8: {e}") from e
        lines = out.split("\n")
        if out.endswith("\n"):
            lines.pop()
        if len(lines) != len(sentences):
            raise AdapterFailure(f"tagger returned {len(lines)} lines for {len(sentences)} sentences")
        return [self._parse_line(i, line, s) for i, (line, s) in enumerate(zip(lines, sentences), 1)]

    @staticmethod
    def _parse_line(lineno: int, line: str, sentence: Sentence) -> frozenset[str]:
        if not line:
            return frozenset()
        known = set(sentence.normalized)
        nouns = set()
        for item in line.split(" "):
            parts = item.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise AdapterFailure(f"line {lineno}: malformed token/tag item {item!r}")
            token, tag = parts[0].casefold(), parts[1]
            if token not in known:
                raise AdapterFailure(f"line {lineno}: token {parts[0]!r} is not in the input sentence")
            if tag in NOUN_TAGS:
                nouns.add(token)
        return frozenset(nouns)


def extract_nouns(sentence: Sentence, extractor: NounExtractor) -> frozenset[str]:
    return extractor.extract([sentence])[0]


def count_pairs(noun_sets: Iterable[Iterable[str]]) -> Counter:
    """Each sentence adds 1 to every unordered pair of distinct nouns it holds."""
    raw: Counter = Counter()
    for nouns in noun_sets:
        raw.update(combinations(sorted(set(nouns)), 2))
    return Counter({ConceptPair(a, b): n for (a, b), n in raw.items()})


def build_matrix(sentences: Sequence[Sentence], extractor: NounExtractor) -> Counter:
    return count_pairs(extractor.extract(sentences))


def top_pairs(matrix: Counter, k: int) -> list[RankedPair]:
    """The ``k`` most frequent pairs with dense ranks; ties at the cut go lexicographically."""
    if k < 1:
        raise ConfigError(f"k must be at least 1, got {k}")
    ordered = sorted(matrix.items(), key=lambda kv: (-kv[1], kv[0]))[:k]
    ranked = []
    rank, last = 0, None
    for pair, freq in ordered:
        if freq != last:
            rank, last = rank + 1, freq
        ranked.append(RankedPair(pair, freq, rank))
    return ranked
