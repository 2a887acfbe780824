"""Exception hierarchy shared by all modules."""


class AntimagicError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(AntimagicError, ValueError):
    pass


class UnsupportedDimension(InvalidParameter):
    pass


class InvalidInput(AntimagicError, ValueError):
    pass


class MergeConflict(AntimagicError):
    pass


class SizeLimitExceeded(AntimagicError):
    def __init__(self, what, limit, actual):
        super().__init__(f"{what} {actual} exceeds the limit of {limit}")
        self.limit = limit
        self.actual = actual


class InvalidLabeling(AntimagicError, ValueError):
    pass


class PartitionFailure(AntimagicError):
    pass


class PreconditionViolation(AntimagicError):
    pass


class InternalConsistencyError(AntimagicError):
    pass
