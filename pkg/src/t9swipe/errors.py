"""Exception hierarchy shared across the toolkit."""


class T9Error(Exception):
    """Base class for all toolkit errors."""


class InvalidWordError(T9Error):
    """Word contains characters outside a-z."""


class MalformedTraceError(T9Error):
    """Touch samples arrived out of time order."""


class NormalizationError(T9Error):
    """Key-1 emission with no preceding digit to duplicate."""


class EmptyCodeError(T9Error):
    """Candidate lookup called with an empty key sequence."""


class InvalidSelectionError(T9Error):
    """Commit of a word that is not in the current candidate list."""


class InvalidDurationError(T9Error):
    """Non-positive transcription duration."""


class UndefinedMetricError(T9Error):
    """Metric has no defined value for this input (e.g. empty transcription)."""


class InvalidTargetError(T9Error):
    """Target phrase is empty."""


class UnnormalizedSequenceError(T9Error):
    """Error classification received a sequence containing digits outside 2-9."""


class InsufficientPhrasesError(T9Error):
    """Requested more phrases than the phrase set contains."""


class ReplayMismatchError(T9Error):
    """Recorded log event diverges from deterministic recomputation."""

    def __init__(self, message, event_index=None):
        super().__init__(message)
        self.event_index = event_index


class MalformedLogError(T9Error):
    """Session log file violates the line-delimited JSON schema."""
