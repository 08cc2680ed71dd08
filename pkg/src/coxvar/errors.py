"""Exception hierarchy for coxvar."""


class CoxvarError(Exception):
    """Base class for all coxvar errors."""


class ParseError(CoxvarError):
    pass


class UnsupportedType(CoxvarError):
    pass


class RankOutOfRange(CoxvarError):
    pass


class OrderLimitExceeded(CoxvarError):
    def __init__(self, msg, known_order=None):
        super().__init__(msg)
        self.known_order = known_order


class NonFiniteDiagram(CoxvarError):
    pass


class MixedRings(CoxvarError, TypeError):
    pass


class DivisionByZero(CoxvarError, ZeroDivisionError):
    pass


class UnassignedVariable(CoxvarError, KeyError):
    pass


class GeneratorNotInJ(CoxvarError):
    pass


class ReflectionNotOnEdge(CoxvarError):
    pass


class InvarianceViolation(CoxvarError):
    pass


class BlocksOverlap(CoxvarError):
    pass


class NoFullSupportReflection(CoxvarError):
    pass


class VariableCollision(CoxvarError):
    pass


class NonIntegerExponent(CoxvarError):
    pass
