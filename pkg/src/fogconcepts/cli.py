"""Command-line entry point: ``fogconcepts extract|evolve|score``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import ConfigError, FogConceptsError
from .pipeline import (
    PipelineConfig,
    dumps,
    report_tsv,
    run_corpus,
    run_document,
    run_evolution,
    score_rows,
    score_tsv,
)
from .readability import FormulaVariant
from .selection import DEFAULT_FRACTIONS

EXIT_OK, EXIT_PARTIAL, EXIT_INVALID, EXIT_ADAPTER = 0, 1, 2, 3


def parse_pair(value: str) -> tuple[str, str]:
    parts = value.split(",")
    if len(parts) != 2 or not all(p.strip() for p in parts):
        raise argparse.ArgumentTypeError(f"expected A,B; got {value!r}")
    return parts[0].strip(), parts[1].strip()


def parse_fractions(value: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers; got {value!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pair", type=parse_pair, help="concept pair A,B (phrases allowed, e.g. 'brain neurons,ischemia')")
    common.add_argument("--chunk", type=float, default=0.30, help="fraction of most difficult sentences kept (default 0.30)")
    common.add_argument("--top-pairs", type=int, default=20, help="frequent pairs kept from the association matrix (default 20)")
    common.add_argument("--top-rep", type=int, default=10, help="representative pairs after re-ranking (default 10)")
    common.add_argument("--formula", choices=[f.value for f in FormulaVariant], default="paper")
    common.add_argument("--tagger-cmd", help="external POS tagger speaking the token<TAB>TAG line protocol")
    common.add_argument("--stopwords", help="stopword list, one per line")
    common.add_argument("--whitelist", help="nouns exempt from the suffix filter, one per line")
    common.add_argument("--strip-refs", action="store_true", help="drop everything from a References/Acknowledgements/Bibliography heading on")
    common.add_argument("--strip-front", action="store_true", help="drop lines before the first line ending a sentence")
    common.add_argument("--fold-plurals", action="store_true", help="let concepts match with or without a trailing 's'")
    common.add_argument("--gold", help="known-related pairs, concept_a<TAB>concept_b per line")
    common.add_argument("--fractions", type=parse_fractions, default=DEFAULT_FRACTIONS, help="descending chunk fractions for evolve")
    common.add_argument("--out", help="write here instead of stdout")

    ap = argparse.ArgumentParser(prog="fogconcepts", description="Extract connected concepts from difficult sentences.")
    sub = ap.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("extract", parents=[common], help="frequent and representative pairs for a file or directory")
    ex.add_argument("path")
    ex.add_argument("--format", choices=["json", "tsv"], default="json")
    ex.add_argument("--jobs", type=int, default=1, help="parallel workers in directory mode")

    ev = sub.add_parser("evolve", parents=[common], help="new/dropped pairs across chunk fractions (CSV)")
    ev.add_argument("path")

    sc = sub.add_parser("score", parents=[common], help="per-sentence Fog Index dump")
    sc.add_argument("path")
    sc.add_argument("--format", choices=["json", "tsv"], default="tsv")
    return ap


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    return PipelineConfig(
        pair=args.pair,
        chunk_fraction=args.chunk,
        top_k_pairs=args.top_pairs,
        top_n_representative=args.top_rep,
        formula=FormulaVariant(args.formula),
        tagger_cmd=args.tagger_cmd,
        strip_refs=args.strip_refs,
        strip_front=args.strip_front,
        fold_plurals=args.fold_plurals,
        evolution_fractions=args.fractions,
        gold_path=args.gold,
        stopwords_path=args.stopwords,
        whitelist_path=args.whitelist,
    )


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _extract(args, config: PipelineConfig) -> int:
    if not Path(args.path).is_dir():
        report = run_document(args.path, config)
        _emit(dumps(report) if args.format == "json" else report_tsv(report), args.out)
        return EXIT_OK

    result = run_corpus(args.path, config, jobs=args.jobs)
    for failure in result["failures"]:
        print(f"fogconcepts: {failure['message']}", file=sys.stderr)
    if result["documents"]:
        if args.format == "json":
            _emit(dumps(result), args.out)
        else:
            _emit("\n".join(report_tsv(r) for r in result["documents"]), args.out)
    if not result["failures"]:
        return EXIT_OK
    if result["documents"]:
        return EXIT_PARTIAL
    codes = {f["exit_code"] for f in result["failures"]}
    return EXIT_ADAPTER if codes == {EXIT_ADAPTER} else EXIT_INVALID


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "jobs", 1) < 1:
            raise ConfigError("--jobs must be at least 1")
        config = config_from_args(args)
        if args.command == "extract":
            return _extract(args, config)
        if args.command == "evolve":
            _emit(run_evolution(args.path, config), args.out)
        else:
            rows = score_rows(args.path, config)
            _emit(dumps(rows) if args.format == "json" else score_tsv(rows), args.out)
        return EXIT_OK
    except FogConceptsError as e:
        print(f"fogconcepts: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
