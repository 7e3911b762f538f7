"""Exception types shared across the toolkit."""


class UrdusegError(Exception):
    """Base class for every error raised by this package."""


class IoFailure(UrdusegError):
    """An underlying file could not be read or written."""


class CorpusParseError(UrdusegError):
    """Base class for malformed annotated input.

    Attributes:
        position: character offset into the offending (normalized) line,
            or None when no single position is to blame.
        line_no: 1-based line number, filled in by corpus loading.
    """

    def __init__(self, message, position=None, line_no=None):
        super().__init__(message)
        self.position = position
        self.line_no = line_no


class EmptySentence(CorpusParseError):
    """A line contains no characters besides boundary markers."""


class AdjacentMarkers(CorpusParseError):
    """Two boundary markers touch, or a marker sits at a line edge."""


class EmptyCorpus(UrdusegError):
    """An operation that needs at least one sentence got none."""


class EmptyInput(UrdusegError):
    """An operation that needs at least one item got an empty sequence."""


class LengthMismatch(UrdusegError):
    """Two parallel sequences differ in length."""


class AlignmentMismatch(UrdusegError):
    """Gold and predicted label sequences do not line up."""


class PositionOutOfRange(UrdusegError, IndexError):
    """A character index falls outside the sequence."""


class DivergenceDetected(UrdusegError):
    """The training objective or gradient became non-finite."""


class VersionMismatch(UrdusegError):
    """A model file was written by an incompatible format version."""


class CorruptModel(UrdusegError):
    """A model file is structurally damaged or fails its checksum."""


class EmptyAfterNormalization(UrdusegError):
    """Input text has no segmentable characters once cleaned up."""
