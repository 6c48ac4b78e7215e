"""Exception types shared across the toolkit."""


class OhsegError(Exception):
    """Base class for all toolkit errors."""


class ParseError(OhsegError):
    """A corpus file could not be parsed as JSON."""

    def __init__(self, path, message, offset=None):
        self.path = str(path)
        self.offset = offset
        detail = f"{path}: {message}"
        if offset is not None:
            detail += f" (byte offset {offset})"
        super().__init__(detail)


class ValidationError(OhsegError):
    """A corpus invariant was violated."""

    def __init__(self, message, transcript_id=None, annotator=None):
        self.transcript_id = transcript_id
        self.annotator = annotator
        context = []
        if transcript_id:
            context.append(f"transcript={transcript_id}")
        if annotator:
            context.append(f"annotator={annotator}")
        if context:
            message = f"{message} [{', '.join(context)}]"
        super().__init__(message)


class ConfigurationError(OhsegError):
    """A required configuration input (e.g. the stopword file) is missing or bad."""


class ParameterError(OhsegError):
    """An algorithm parameter is out of its valid range."""


class DegenerateDataError(OhsegError):
    """The data cannot support the requested statistic (e.g. all values tied)."""
