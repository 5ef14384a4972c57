"""Exception hierarchy.

``InputError`` subclasses signal malformed or inconsistent input (the CLI
exits with status 2); ``MathError`` subclasses signal that the mathematics
itself has no answer for the given data (status 3).
"""


class IdempotentError(Exception):
    pass


class InputError(IdempotentError, ValueError):
    pass


class MathError(IdempotentError, ArithmeticError):
    pass


class InvalidScalar(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class SemiringMismatch(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class GridMismatch(InputError):
    pass


class StepMismatch(InputError):
    pass


class GroupMismatch(InputError):
    pass


class EmptySet(InputError):
    pass


class NotAGroup(InputError):
    pass


class ZeroVector(InputError):
    pass


class NonPositiveInput(InputError):
    pass


class ZeroNotInvertible(MathError):
    pass


class NotASemifield(MathError):
    pass


class NotAlgebraicallyClosed(MathError):
    pass


class NonStable(MathError):
    """The Kleene star / Bellman iteration does not converge (divergent cycle)."""


class NotDominated(MathError):
    pass


class NotInvertible(MathError):
    pass


class NoCycle(MathError):
    pass


class NotIrreducible(MathError):
    pass


class NotCommuting(MathError):
    pass


class NotNilpotent(MathError):
    pass


class ExhaustedCandidates(MathError):
    pass


class AllBottom(MathError):
    pass


class UnstableParameters(MathError):
    pass


class InvariantViolation(MathError, AssertionError):
    """An internal correctness gate failed; this is a bug, never expected."""
