"""Idempotent semirings, their standard order, and their dequantization.

A scalar is either the sentinel :data:`BOTTOM` (the semiring zero) or a
finite number (``int``, ``float`` or :class:`fractions.Fraction`).  Inside
arrays the zero is stored as the semiring's own IEEE infinity (``-inf`` for
the max-based semirings, ``+inf`` for min-plus); each semiring only ever
uses a single infinity under its multiplication, so ``nan`` cannot arise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational, Real
from typing import Iterable

import numpy as np

from .errors import (
    EmptySet,
    InvalidScalar,
    NotAlgebraicallyClosed,
    NotASemifield,
    ZeroNotInvertible,
)

__all__ = [
    "BOTTOM", "Semiring", "MAXPLUS", "MINPLUS", "MAXMIN", "BOOLEAN", "INTMAXPLUS",
    "SEMIRINGS", "get_semiring", "add", "mul", "leq", "inv", "nth_root",
    "sup_set", "inf_set", "deq_add", "phi_h", "is_bottom",
]


class _Bottom:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()


def is_bottom(x) -> bool:
    return x is BOTTOM


def _normalize_number(x):
    """Collapse integral Fractions to int so results compare and print cleanly."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


@dataclass(frozen=True, eq=False)
class Semiring:
    """One built-in idempotent semiring.

    ``plus``/``times`` are numpy ufuncs acting on the array encoding, so the
    same object drives both scalar and dense-array code paths.
    """

    name: str
    plus: np.ufunc
    times: np.ufunc
    zero_code: float
    one: object
    semifield: bool
    radicable: bool
    integral: bool = False

    def __repr__(self):
        return f"Semiring({self.name})"

    @property
    def zero(self):
        return BOTTOM

    @property
    def max_ordered(self) -> bool:
        """True when the standard order agrees with the conventional one."""
        return self.plus is np.maximum

    def plus_reduce(self, arr, axis=None):
        return self.plus.reduce(arr, axis=axis, initial=self.zero_code)

    def dual_reduce(self, arr, axis=None):
        # greatest lower bound in the standard order
        return (np.minimum if self.max_ordered else np.maximum).reduce(arr, axis=axis)

    # -- encoding -----------------------------------------------------
    def encode(self, x):
        """Scalar -> array code.  Validates membership in the carrier set."""
        if x is BOTTOM:
            return self.zero_code
        if isinstance(x, (bool, np.bool_)) and self is BOOLEAN:
            return 1 if x else self.zero_code
        if isinstance(x, np.generic):
            x = x.item()
        if not isinstance(x, Real):
            raise InvalidScalar(f"{x!r} is not a scalar of {self.name}")
        if isinstance(x, float):
            if math.isnan(x):
                raise InvalidScalar("nan is not a scalar")
            if x == self.zero_code:
                return self.zero_code
            if math.isinf(x) and not (self is MAXMIN and x > 0):
                raise InvalidScalar(f"{x} is not a scalar of {self.name}")
        if self is BOOLEAN and x != 1:
            if x == 0:
                return self.zero_code
            raise InvalidScalar(f"{x!r} is not a Boolean scalar")
        if self.integral:
            if isinstance(x, float) and not x.is_integer():
                raise InvalidScalar(f"{x!r} is not an integer")
            if isinstance(x, Fraction) and x.denominator != 1:
                raise InvalidScalar(f"{x!r} is not an integer")
            if abs(x) > 2**53:
                raise InvalidScalar(f"{x!r} exceeds the exact integer range")
        return x

    def decode(self, code):
        if isinstance(code, np.generic):
            code = code.item()
        if code == self.zero_code:
            return BOTTOM
        if self.integral:
            return int(code)
        if self is BOOLEAN:
            return 1
        return _normalize_number(code)

    def is_zero_code(self, arr):
        return np.asarray(arr == self.zero_code, dtype=bool)


MAXPLUS = Semiring("maxplus", np.maximum, np.add, -math.inf, 0, True, True)
MINPLUS = Semiring("minplus", np.minimum, np.add, math.inf, 0, True, True)
MAXMIN = Semiring("maxmin", np.maximum, np.minimum, -math.inf, math.inf, False, False)
BOOLEAN = Semiring("boolean", np.maximum, np.minimum, -math.inf, 1, False, False)
INTMAXPLUS = Semiring("intmaxplus", np.maximum, np.add, -math.inf, 0, True, False, integral=True)

SEMIRINGS = {s.name: s for s in (MAXPLUS, MINPLUS, MAXMIN, BOOLEAN, INTMAXPLUS)}


def get_semiring(name: str | Semiring) -> Semiring:
    if isinstance(name, Semiring):
        return name
    try:
        return SEMIRINGS[name.lower()]
    except KeyError:
        raise InvalidScalar(
            f"unknown semiring {name!r}; choose from {', '.join(SEMIRINGS)}"
        ) from None


def _scalar_op(ufunc, a, b):
    if ufunc is np.maximum:
        return a if a >= b else b
    if ufunc is np.minimum:
        return a if a <= b else b
    return a + b


def add(s: Semiring, a, b):
    return s.decode(_scalar_op(s.plus, s.encode(a), s.encode(b)))


def mul(s: Semiring, a, b):
    return s.decode(_scalar_op(s.times, s.encode(a), s.encode(b)))


def leq(s: Semiring, a, b) -> bool:
    """Standard order: ``a <= b`` iff ``a (+) b == b``."""
    return add(s, a, b) == b


def _require_semifield(s: Semiring):
    if not s.semifield:
        raise NotASemifield(f"{s.name} is not a semifield")


def inv(s: Semiring, a):
    _require_semifield(s)
    if s.encode(a) == s.zero_code:
        raise ZeroNotInvertible("the semiring zero has no inverse")
    return _normalize_number(-a)


def nth_root(s: Semiring, a, n: int):
    """The unique ``y`` with ``y (*) ... (*) y`` (n factors) equal to ``a``."""
    if not isinstance(n, Integral) or n < 1:
        raise ValueError("n must be a positive integer")
    if s.integral:
        if a is BOTTOM:
            return BOTTOM
        if s.encode(a) % n:
            raise NotAlgebraicallyClosed(f"{a} has no integer {n}-th root")
        return int(a) // n
    if not s.radicable:
        raise NotAlgebraicallyClosed(f"{s.name} is not algebraically closed")
    code = s.encode(a)
    if code == s.zero_code:
        return BOTTOM
    if isinstance(code, Rational):
        return _normalize_number(Fraction(code) / n)
    return code / n


def sup_set(s: Semiring, xs: Iterable):
    """Least upper bound of a finite set; the empty set gives the zero."""
    acc = s.zero_code
    for x in xs:
        acc = _scalar_op(s.plus, acc, s.encode(x))
    return s.decode(acc)


def inf_set(s: Semiring, xs: Iterable):
    codes = [s.encode(x) for x in xs]
    if not codes:
        raise EmptySet("infimum of the empty set is undefined")
    return s.decode(min(codes) if s.max_ordered else max(codes))


def deq_add(u: float, v: float, h: float) -> float:
    """Dequantized sum ``h ln(exp(u/h) + exp(v/h))`` in overflow-safe form."""
    if not h > 0:
        raise ValueError("h must be positive")
    m = max(u, v)
    return m + h * math.log1p(math.exp(-abs(u - v) / h))


def phi_h(x: float, h: float):
    """The change of variables ``x -> h ln x`` on the nonnegative reals.

    ``phi_h(0)`` is :data:`BOTTOM` (continuous extension, ``-inf``).
    """
    if not h > 0:
        raise ValueError("h must be positive")
    if x < 0:
        raise ValueError("phi_h is defined on nonnegative reals")
    if x == 0:
        return BOTTOM
    return h * math.log(x)
