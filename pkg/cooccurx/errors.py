"""Exception classes raised by cooccurx."""


class CooccurrenceError(Exception):
    pass


class InvalidQueryError(CooccurrenceError):
    """Query set has fewer than two distinct members or cannot be encoded."""


class PredecessorBuildError(CooccurrenceError):
    """Keys handed to a predecessor map are unsorted, duplicated or outside the universe."""


class GadgetSpecError(CooccurrenceError):
    pass


class CorpusMismatchError(CooccurrenceError):
    """Index was built from a different corpus than the one supplied."""


class IndexFormatError(CooccurrenceError):
    """Serialized index stream is malformed."""


class BadMagicError(IndexFormatError):
    pass


class VersionMismatchError(IndexFormatError):
    pass


class TruncatedIndexError(IndexFormatError):
    pass


class ChecksumError(IndexFormatError):
    pass


class CorpusEncodingError(CooccurrenceError):
    """Token-mode corpus is not valid UTF-8."""


class UsageError(CooccurrenceError):
    """Command line arguments are missing or malformed."""
