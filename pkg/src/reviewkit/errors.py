"""Exception types shared across the pipeline."""


class ReviewKitError(Exception):
    """Base class for all errors raised by this package."""


class MalformedXml(ReviewKitError):
    """Input is not well-formed XML."""


class EmptyDocument(ReviewKitError):
    """Manuscript XML has no abstract and no body divisions."""


class SchemaViolation(ReviewKitError):
    """A corpus record is missing a required field or has a wrong type.

    The message names the offending field path, e.g. "manuscripts[0].version".
    """


class EmptyTitle(ReviewKitError):
    """Section title is empty after trimming."""


class TooFewRecords(ReviewKitError):
    """Not enough records to produce a train/validation/test split."""


class EmptyEvaluation(ReviewKitError):
    """Evaluation was asked to aggregate zero candidate/reference pairs."""


class BackendError(ReviewKitError):
    """Base class for generation-backend failures."""


class BackendUnavailable(BackendError):
    """Backend process or endpoint cannot be reached."""


class BackendTimeout(BackendError):
    """Backend did not answer within the configured deadline."""


class BackendProtocolError(BackendError):
    """Backend answered with an invalid, empty, or error response."""
