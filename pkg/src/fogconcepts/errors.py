"""Exception hierarchy. Each class carries the CLI exit status it maps to."""


class FogConceptsError(Exception):
    exit_code = 2


class ConfigError(FogConceptsError, ValueError):
    exit_code = 2


class InputError(FogConceptsError):
    """Input file missing, unreadable, or not UTF-8."""

    exit_code = 2


class EmptyDocument(FogConceptsError):
    """No sentence with at least one token survived preprocessing."""

    exit_code = 2


class InvalidFraction(FogConceptsError, ValueError):
    exit_code = 2


class ZeroWords(FogConceptsError, ValueError):
    exit_code = 2


class ZeroSyllableAverage(FogConceptsError, ValueError):
    exit_code = 2


class ZeroPopulation(FogConceptsError, ValueError):
    exit_code = 2


class AdapterFailure(FogConceptsError):
    """External tagger missing, crashed, or broke the line protocol."""

    exit_code = 3
