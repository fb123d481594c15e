"""Errors raised by the engine and the constructions."""


class ShiftError(Exception):
    """Base class for every toolkit error"""
    pass


class AlphabetError(ShiftError):
    pass


class WordLengthError(ShiftError):
    pass


class InvalidParameter(ShiftError):
    """A numeric argument outside its admissible range"""
    pass


class EmptyShiftError(ShiftError):
    """The graph (or product of graphs) presents the empty shift"""
    pass


class EmptySetError(ShiftError):
    pass


class NotStronglyConnected(ShiftError):
    pass


class LevelUnavailable(ShiftError):
    def __init__(self, needed, available):
        self.needed = needed
        self.available = available
        super().__init__(f"Block distribution has level {available}, level {needed} is required")


class CapExceeded(ShiftError):
    """A configurable size cap was hit; ``lower_bound`` is a certified lower bound on the true size"""

    def __init__(self, cap_name, limit, lower_bound=None, detail=''):
        self.cap_name = cap_name
        self.limit = limit
        self.lower_bound = lower_bound
        message = f"{cap_name} exceeded (limit {limit})"
        if lower_bound is not None:
            message += f"; true size is at least {lower_bound}"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class NotInLanguage(ShiftError):
    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class ConstructionError(ShiftError):
    """A construction parameter violates the invariants the construction needs"""
    pass


class BoundViolation(ShiftError):
    """A verified inequality failed; carries both sides as exact rationals"""

    def __init__(self, name, lhs, relation, rhs, detail=''):
        self.name = name
        self.lhs = lhs
        self.relation = relation
        self.rhs = rhs
        message = f"{name}: {lhs} {relation} {rhs} does not hold"
        if detail:
            message += f" ({detail})"
        super().__init__(message)
