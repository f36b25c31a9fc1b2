"""Exception hierarchy for jordanblocks."""


class JordanBlocksError(Exception):
    """Base class for every error raised by this package."""


class PoleProximity(JordanBlocksError):
    pass


class DegreeTooLarge(JordanBlocksError):
    pass


class IllConditioned(JordanBlocksError):
    pass


class TailTooShort(JordanBlocksError):
    pass


class NotAFactor(JordanBlocksError):
    pass


class NotInvariant(JordanBlocksError):
    pass


class NoMatch(JordanBlocksError):
    """Classification failed numerically; cannot happen in exact arithmetic."""


class SizeBudgetExceeded(JordanBlocksError):
    pass


class NotASubmodule(JordanBlocksError):
    pass


class NotReducing(JordanBlocksError):
    pass


class ReconstructionMismatch(JordanBlocksError):
    pass


class NotDoublyCommuting(JordanBlocksError):
    pass


class DegreeBudget(JordanBlocksError):
    pass


class NotRankOne(JordanBlocksError):
    pass


class TruncationInconclusive(JordanBlocksError):
    pass


class AmbientMismatch(JordanBlocksError):
    pass


class ParseError(JordanBlocksError):
    """Malformed scenario input. ``path`` names the offending field."""

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
