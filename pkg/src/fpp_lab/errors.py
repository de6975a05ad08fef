"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so keep the split between a failed
hypothesis (the input does not satisfy a theorem's assumptions) and a
representability failure (the exact object exists but cannot be stored).
"""


class FppLabError(Exception):
    """Base class for all toolkit errors."""


class HypothesisError(FppLabError):
    """An input violates the assumptions of the construction requested."""


class RepresentabilityError(FppLabError):
    """The exact result leaves the finite representation used here."""


class ExhaustionError(HypothesisError):
    """Finite data ran out before a selection threshold could be met."""


class CaseMismatchError(HypothesisError):
    """A grinding block has the wrong sign structure for the chosen targets."""


class NormingError(FppLabError):
    """No norming vector within the requested margin was found."""


class VerificationError(FppLabError):
    """A claimed identity or inequality failed on exact data.

    Raised when a check that must hold for correct input fails; this points
    at a bug or at caller-supplied data, never at rounding.
    """
