"""Connected-concept extraction with a readability filter and a PPV/sensitivity re-ranker."""

from .errors import (
    AdapterFailure,
    ConfigError,
    EmptyDocument,
    FogConceptsError,
    InputError,
    InvalidFraction,
    ZeroPopulation,
    ZeroSyllableAverage,
    ZeroWords,
)
from .preprocess import Document, Sentence, StripConfig, Token, build_document
from .readability import FormulaVariant, fog_index, normalize_fi
from .concepts import ConceptPair, HeuristicExtractor, TaggerAdapter, build_matrix, top_pairs
from .selection import rank_sentences, select_chunk, chunk_evolution
from .evaluation import harmonic_mean, representative_pairs
from .pipeline import PipelineConfig, run_corpus, run_document, run_evolution

__version__ = "0.1.0"

__all__ = [
    "AdapterFailure",
    "ConceptPair",
    "ConfigError",
    "Document",
    "EmptyDocument",
    "FogConceptsError",
    "InputError",
    "FormulaVariant",
    "HeuristicExtractor",
    "InvalidFraction",
    "PipelineConfig",
    "Sentence",
    "StripConfig",
    "TaggerAdapter",
    "Token",
    "ZeroPopulation",
    "ZeroSyllableAverage",
    "ZeroWords",
    "build_document",
    "build_matrix",
    "chunk_evolution",
    "fog_index",
    "harmonic_mean",
    "normalize_fi",
    "rank_sentences",
    "representative_pairs",
    "run_corpus",
    "run_document",
    "run_evolution",
    "select_chunk",
    "top_pairs",
]
