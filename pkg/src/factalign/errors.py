"""Exception types shared across the pipeline."""


class FactAlignError(Exception):
    """Base class for all pipeline errors."""


class ConfigurationError(FactAlignError):
    """Invalid configuration value (bad dimension, empty corpus, bad weights...)."""


class ProviderError(FactAlignError):
    """An external provider call failed; message names the failing slot/component."""


class DumpParseError(FactAlignError):
    """Malformed input dump; message carries the byte offset where parsing failed."""


class MissingLabelError(FactAlignError):
    """No usable label for an entity in the requested language."""

    def __init__(self, qid: str, language: str):
        self.qid = qid
        self.language = language
        super().__init__(f"no label for {qid} in language {language!r} (fallback disabled)")


class SchemaError(FactAlignError):
    """A serialized record does not match its file schema."""


class DuplicateTaskError(FactAlignError):
    """Task with identical content (and task id) already exists."""


class DuplicateSubmissionError(FactAlignError):
    """This (task, annotator) pair already has a stored submission."""


class AnnotationError(FactAlignError):
    """Invalid annotation-service request (unknown annotator, foreign fact id...)."""
