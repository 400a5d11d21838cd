"""Shared exception types."""


class ParseError(ValueError):
    """A record in an input file could not be parsed; carries the line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class CorpusError(ValueError):
    """Corpus-level failure (empty corpus, unsatisfiable split, ...)."""
