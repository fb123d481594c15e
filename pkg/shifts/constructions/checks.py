from dataclasses import dataclass

from ..engine.exceptions import BoundViolation


@dataclass(frozen=True)
class Check:
    """One verified relation, with both sides kept exact"""

    name: str
    ok: bool
    lhs: object = None
    relation: str = ''
    rhs: object = None
    detail: str = ''

    @classmethod
    def less(cls, name, lhs, rhs, detail=''):
        return cls(name, bool(lhs < rhs), lhs, '<', rhs, detail)

    @classmethod
    def at_most(cls, name, lhs, rhs, detail=''):
        return cls(name, bool(lhs <= rhs), lhs, '<=', rhs, detail)

    @classmethod
    def greater(cls, name, lhs, rhs, detail=''):
        return cls(name, bool(lhs > rhs), lhs, '>', rhs, detail)

    @classmethod
    def at_least(cls, name, lhs, rhs, detail=''):
        return cls(name, bool(lhs >= rhs), lhs, '>=', rhs, detail)

    @classmethod
    def equal(cls, name, lhs, rhs, detail=''):
        return cls(name, bool(lhs == rhs), lhs, '==', rhs, detail)

    @classmethod
    def truth(cls, name, flag, detail=''):
        return cls(name, bool(flag), bool(flag), 'is', True, detail)

    def violation(self):
        return BoundViolation(self.name, self.lhs, self.relation, self.rhs, self.detail)


def first_failure(checks):
    return next((c for c in checks if not c.ok), None)
