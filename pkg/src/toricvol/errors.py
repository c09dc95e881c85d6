"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
2 invalid germ, 3 invariant violation, 4 domain error, 5 internal limit.
"""


class ToricError(ValueError):
    exit_code = 1


class InvalidGerm(ToricError):
    exit_code = 2


class NotFullDimensional(InvalidGerm):
    pass


class NotStronglyConvex(InvalidGerm):
    pass


class NotQGorenstein(InvalidGerm):
    pass


class InvariantViolation(ToricError):
    exit_code = 3


class NotPrimary(InvariantViolation):
    pass


class EmptyIdeal(InvariantViolation):
    pass


class GermMismatch(InvariantViolation):
    pass


class DomainError(ToricError):
    exit_code = 4


class Unbounded(DomainError):
    pass


class IrrationalMode(DomainError):
    pass


class Infeasible(DomainError):
    pass


class UnboundedObjective(DomainError):
    pass


class NoInteriorStart(DomainError):
    pass


class UnsupportedRank(ToricError):
    exit_code = 5
