"""End-to-end runs over single documents and directories, plus report rendering."""

from __future__ import annotations

import json
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

from .concepts import ConceptPair, HeuristicExtractor, NounExtractor, TaggerAdapter, count_pairs, top_pairs
from .errors import ConfigError, FogConceptsError, InputError
from .evaluation import load_gold, representative_pairs
from .preprocess import Document, StripConfig, build_document
from .readability import CATEGORIES, FormulaVariant, categorize_sentences, category_stats, score_document
from .selection import DEFAULT_FRACTIONS, chunk_evolution, check_descending, check_fraction, evolution_csv, rank_sentences, select_chunk

PRECISION = 4


@dataclass(frozen=True)
class PipelineConfig:
    pair: Optional[tuple[str, str]] = None
    chunk_fraction: float = 0.30
    top_k_pairs: int = 20
    top_n_representative: int = 10
    formula: FormulaVariant = FormulaVariant.PAPER
    tagger_cmd: Optional[str] = None
    strip_refs: bool = False
    strip_front: bool = False
    fold_plurals: bool = False
    evolution_fractions: tuple[float, ...] = DEFAULT_FRACTIONS
    gold_path: Optional[str] = None
    stopwords_path: Optional[str] = None
    whitelist_path: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "formula", FormulaVariant(self.formula))
        object.__setattr__(self, "evolution_fractions", tuple(self.evolution_fractions))
        if self.pair is not None:
            object.__setattr__(self, "pair", tuple(self.pair))
        self.validate()

    def validate(self) -> None:
        check_fraction(self.chunk_fraction)
        if self.top_k_pairs < 1 or self.top_n_representative < 1:
            raise ConfigError("--top-pairs and --top-rep must be at least 1")
        if self.top_n_representative > self.top_k_pairs:
            raise ConfigError("--top-rep cannot exceed --top-pairs")
        if self.pair is not None:
            if len(self.pair) != 2:
                raise ConfigError("a concept pair has exactly two concepts")
            self.concept_pair  # validates
        check_descending(self.evolution_fractions)

    @property
    def concept_pair(self) -> Optional[ConceptPair]:
        return ConceptPair.of(*self.pair) if self.pair is not None else None

    @property
    def strip(self) -> StripConfig:
        return StripConfig(references=self.strip_refs, front_matter=self.strip_front)

    def make_extractor(self) -> NounExtractor:
        if self.tagger_cmd:
            return TaggerAdapter(self.tagger_cmd)
        return HeuristicExtractor.from_files(self.stopwords_path, self.whitelist_path)

    def to_dict(self) -> dict:
        return {
            "pair": list(self.pair) if self.pair is not None else None,
            "chunk_fraction": self.chunk_fraction,
            "top_k_pairs": self.top_k_pairs,
            "top_n_representative": self.top_n_representative,
            "formula": self.formula.value,
            "extractor": "adapter" if self.tagger_cmd else "heuristic",
            "tagger_cmd": self.tagger_cmd,
            "strip_refs": self.strip_refs,
            "strip_front": self.strip_front,
            "fold_plurals": self.fold_plurals,
            "evolution_fractions": list(self.evolution_fractions),
            "gold_path": self.gold_path,
            "stopwords_path": self.stopwords_path,
            "whitelist_path": self.whitelist_path,
        }


def _r(x: Optional[float]) -> Optional[float]:
    return None if x is None else round(x, PRECISION)


def read_text(path: Union[str, Path]) -> str:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except UnicodeDecodeError as e:
        raise InputError(f"{path}: not valid UTF-8 ({e.reason} at byte {e.start})") from e
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from e


def _with_context(e: FogConceptsError, path) -> FogConceptsError:
    msg = str(e)
    if not msg.startswith(str(path)):
        e.args = (f"{path}: {msg}",)
    return e


def analyze(
    doc: Document,
    name: str,
    config: PipelineConfig,
    extractor: Optional[NounExtractor] = None,
    gold: Optional[frozenset[ConceptPair]] = None,
) -> dict:
    """Run every stage after preprocessing and return the JSON-ready report."""
    extractor = extractor or config.make_extractor()
    pair = config.concept_pair
    ranked = rank_sentences(doc, config.formula)
    selected = select_chunk(ranked, config.chunk_fraction)
    # one extractor call per document; an adapter process sees the whole text once
    noun_sets = extractor.extract(doc.sentences)
    matrix = count_pairs(noun_sets[p] for p in sorted(selected))
    ranked_pairs = top_pairs(matrix, config.top_k_pairs)
    representative = representative_pairs(
        doc, selected, ranked_pairs, config.top_n_representative, config.fold_plurals
    )

    def gold_flag(p: ConceptPair) -> Optional[bool]:
        return None if gold is None else p in gold

    stats = None
    if pair is not None:
        stats = [
            {"category": c.category, "sentence_count": c.sentence_count, "mean_fi_norm": _r(c.mean_fi_norm)}
            for c in category_stats(doc, pair, config.formula, config.fold_plurals)
        ]

    return {
        "document": name,
        "config": config.to_dict(),
        "counts": {
            "sentences": len(doc),
            "words": doc.word_count,
            "syllables": doc.syllable_count,
            "avg_syllables_per_word": _r(doc.avg_syllables_per_word),
            "selected": len(selected),
            "distinct_pairs": len(matrix),
        },
        "selected_positions": [e.position for e in ranked.entries[: len(selected)]],
        "category_stats": stats,
        "top_pairs": [
            {"rank": r.rank, "a": r.pair.a, "b": r.pair.b, "frequency": r.frequency, "gold": gold_flag(r.pair)}
            for r in ranked_pairs
        ],
        "representative": [
            {
                "rank": e.rank,
                "a": e.evaluation.pair.a,
                "b": e.evaluation.pair.b,
                "frequency": e.frequency,
                **e.evaluation.counts._asdict(),
                "ppv": _r(e.evaluation.ppv),
                "sensitivity": _r(e.evaluation.sensitivity),
                "harmonic_mean": _r(e.evaluation.harmonic_mean),
                "harmonic_mean_x100": _r(100 * e.evaluation.harmonic_mean),
                "accuracy": _r(e.evaluation.accuracy),
                "gold": gold_flag(e.evaluation.pair),
            }
            for e in representative
        ],
    }


def load_document(path: Union[str, Path], config: PipelineConfig) -> Document:
    return build_document(read_text(path), config.strip)


def _gold(config: PipelineConfig) -> Optional[frozenset[ConceptPair]]:
    if config.gold_path is None:
        return None
    try:
        return load_gold(config.gold_path)
    except UnicodeDecodeError as e:
        raise InputError(f"{config.gold_path}: not valid UTF-8") from e
    except OSError as e:
        raise InputError(f"{config.gold_path}: {e.strerror or e}") from e


def run_document(path: Union[str, Path], config: PipelineConfig, extractor: Optional[NounExtractor] = None) -> dict:
    try:
        doc = load_document(path, config)
        return analyze(doc, Path(path).name, config, extractor, _gold(config))
    except FogConceptsError as e:
        raise _with_context(e, path)


def _corpus_worker(path: str, config: PipelineConfig):
    try:
        doc = load_document(path, config)
        report = analyze(doc, Path(path).name, config, None, _gold(config))
        sums = None
        if config.concept_pair is not None:
            sums = [
                (c.category, c.sentence_count, c.sum_fi_norm, c.mean_fi_norm)
                for c in category_stats(doc, config.concept_pair, config.formula, config.fold_plurals)
            ]
        return {"ok": True, "report": report, "sums": sums}
    except FogConceptsError as e:
        e = _with_context(e, path)
        return {"ok": False, "file": Path(path).name, "kind": type(e).__name__, "message": str(e), "exit_code": e.exit_code}


def corpus_files(directory: Union[str, Path]) -> list[Path]:
    d = Path(directory)
    if not d.is_dir():
        raise InputError(f"{directory}: not a directory")
    files = sorted(p for p in d.iterdir() if p.is_file() and not p.name.startswith("."))
    if not files:
        raise InputError(f"{directory}: no input files")
    return files


def summarize(results: Sequence[dict], config: PipelineConfig) -> dict:
    ok = [r for r in results if r["ok"]]
    summary: dict = {"files": len(results), "processed": len(ok), "failed": len(results) - len(ok)}

    if config.pair is not None:
        pooled = {c: [0, 0.0] for c in CATEGORIES}
        means = defaultdict(list)
        for r in ok:
            for cat, n, total, mean in r["sums"]:
                pooled[cat][0] += n
                pooled[cat][1] += total
                if mean is not None:
                    means[cat].append(mean)
        summary["category_stats"] = [
            {
                "category": c,
                "sentence_count": pooled[c][0],
                "pooled_mean_fi_norm": _r(pooled[c][1] / pooled[c][0]) if pooled[c][0] else None,
                "mean_of_means_fi_norm": _r(sum(means[c]) / len(means[c])) if means[c] else None,
                "documents_with_category": len(means[c]),
            }
            for c in CATEGORIES
        ]
    else:
        summary["category_stats"] = None

    union: dict[tuple[str, str], list[int]] = defaultdict(lambda: [0, 0])
    for r in ok:
        for row in r["report"]["top_pairs"]:
            acc = union[(row["a"], row["b"])]
            acc[0] += row["frequency"]
            acc[1] += 1
    summary["pair_frequencies"] = [
        {"a": a, "b": b, "total_frequency": tot, "documents": docs}
        for (a, b), (tot, docs) in sorted(union.items(), key=lambda kv: (-kv[1][0], kv[0]))
    ]
    return summary


def run_corpus(directory: Union[str, Path], config: PipelineConfig, jobs: int = 1) -> dict:
    """Process every file in ``directory`` in filename order.

    Per-file failures are collected rather than raised; output order never
    depends on completion order.
    """
    files = [str(p) for p in corpus_files(directory)]
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(files))) as pool:
            results = list(pool.map(_corpus_worker, files, [config] * len(files)))
    else:
        results = [_corpus_worker(f, config) for f in files]
    return {
        "documents": [r["report"] for r in results if r["ok"]],
        "failures": [{k: r[k] for k in ("file", "kind", "message", "exit_code")} for r in results if not r["ok"]],
        "summary": summarize(results, config),
    }


def run_evolution(path: Union[str, Path], config: PipelineConfig, extractor: Optional[NounExtractor] = None) -> str:
    try:
        doc = load_document(path, config)
        baseline, transitions, _ = chunk_evolution(
            doc,
            extractor or config.make_extractor(),
            config.evolution_fractions,
            config.top_k_pairs,
            config.formula,
        )
    except FogConceptsError as e:
        raise _with_context(e, path)
    return evolution_csv(baseline, transitions)


def score_rows(path: Union[str, Path], config: PipelineConfig) -> list[dict]:
    """Per-sentence counts and scores, for inspecting the readability filter."""
    try:
        doc = load_document(path, config)
    except FogConceptsError as e:
        raise _with_context(e, path)
    category = {}
    if config.concept_pair is not None:
        for cat, positions in categorize_sentences(doc, config.concept_pair, config.fold_plurals).items():
            category.update(dict.fromkeys(positions, cat))
    return [
        {
            "position": s.position,
            "words": s.sentence.word_count,
            "complex": s.sentence.complex_count,
            "syllables": s.sentence.syllable_count,
            "fi": _r(s.fi),
            "fi_norm": _r(s.fi_norm),
            "category": category.get(s.position),
            "text": s.sentence.text,
        }
        for s in score_document(doc, config.formula)
    ]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _flag(value: Optional[bool]) -> str:
    return "" if value is None else ("yes" if value else "no")


def report_tsv(report: dict) -> str:
    """Two tables: frequent pairs (rank, pair, frequency, gold) and the
    representative set (rank, pair, harmonic mean x100, gold)."""
    lines = [f"# document\t{report['document']}", "rank\tpair\tfrequency\tgold"]
    for row in report["top_pairs"]:
        lines.append(f"{row['rank']}\t{row['a']}-{row['b']}\t{row['frequency']}\t{_flag(row['gold'])}")
    lines += ["", "rank\tpair\tharmonic_mean\tgold"]
    for row in report["representative"]:
        lines.append(f"{row['rank']}\t{row['a']}-{row['b']}\t{row['harmonic_mean_x100']:.2f}\t{_flag(row['gold'])}")
    return "\n".join(lines) + "\n"


def score_tsv(rows: Sequence[dict]) -> str:
    cols = ("position", "words", "complex", "syllables", "fi", "fi_norm", "category", "text")
    out = ["\t".join(cols)]
    for r in rows:
        out.append("\t".join(
            f"{r[c]:.4f}" if c in ("fi", "fi_norm") else ("" if r[c] is None else str(r[c])) for c in cols
        ))
    return "\n".join(out) + "\n"
