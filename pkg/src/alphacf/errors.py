"""Exception hierarchy for alphacf."""


class AlphaCFError(Exception):
    """Base class for all alphacf errors."""


class DomainError(AlphaCFError):
    """An argument lies outside the mathematical domain of an operation."""


class SingularityError(AlphaCFError):
    """A denominator came too close to zero to continue."""


class HypothesisError(AlphaCFError):
    """A pair of points does not satisfy any transfer-relation hypothesis."""


class TransferViolation(AlphaCFError):
    """A satisfied transfer hypothesis whose conclusion failed numerically."""
