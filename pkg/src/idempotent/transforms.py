"""Idempotent integration, sup/inf-convolution and the Legendre transform.

Functions live on uniform 1-D grids; outside the stored samples a function
is the semiring zero, so every supremum runs over the stored support only.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import semiring as sr
from .errors import AllBottom, GridMismatch, GroupMismatch, SemiringMismatch, StepMismatch
from .groups import FiniteGroup
from .linalg import _as_exact, _encode_array
from .semiring import MAXPLUS, MINPLUS

__all__ = [
    "SampledFunction", "GroupFunction", "XiGrid", "idempotent_integral",
    "integral_wrt_measure", "scalar_product", "convolve_group", "convolve_grid",
    "legendre", "legendre_involution", "delta_group",
]


class SampledFunction:
    """Samples ``values[i]`` at ``x = origin + i * step`` in the encoding of ``semiring``."""

    __slots__ = ("semiring", "origin", "step", "values")

    def __init__(self, semiring, origin, step, values, *, _raw=False):
        self.semiring = sr.get_semiring(semiring)
        if not step > 0:
            raise ValueError("step must be positive")
        self.origin = origin
        self.step = step
        self.values = values if _raw else _encode_array(self.semiring, values, 1)
        if self.values.ndim != 1 or self.values.shape[0] < 1:
            raise ValueError("need at least one sample")
        self.values.flags.writeable = False

    @property
    def count(self) -> int:
        return self.values.shape[0]

    def xs(self) -> np.ndarray:
        return np.array([self.origin + i * self.step for i in range(self.count)],
                        dtype=object if isinstance(self.origin + self.step, Fraction) else float)

    def entries(self) -> list:
        return [self.semiring.decode(v) for v in self.values]

    def __getitem__(self, i):
        return self.semiring.decode(self.values[i])

    def same_grid(self, other: "SampledFunction") -> bool:
        return (self.origin == other.origin and self.step == other.step
                and self.count == other.count)

    def __eq__(self, other):
        if not isinstance(other, SampledFunction):
            return NotImplemented
        return (self.semiring is other.semiring and self.same_grid(other)
                and bool(np.all(self.values == other.values)))

    def __repr__(self):
        return (f"SampledFunction({self.semiring.name}, origin={self.origin}, "
                f"step={self.step}, values={self.entries()!r})")


@dataclass(frozen=True)
class XiGrid:
    origin: float
    step: float
    count: int

    def __post_init__(self):
        if not self.step > 0 or self.count < 1:
            raise ValueError("XiGrid needs step > 0 and count >= 1")

    @classmethod
    def span(cls, lo, hi, count: int) -> "XiGrid":
        if count == 1:
            return cls(lo, 1.0, 1)
        return cls(lo, (hi - lo) / (count - 1), count)

    def points(self) -> list:
        return [self.origin + i * self.step for i in range(self.count)]


@dataclass(frozen=True, eq=False)
class GroupFunction:
    group: FiniteGroup
    values: np.ndarray

    def __post_init__(self):
        vals = _encode_array(MAXPLUS, self.values, 1)
        if vals.shape[0] != self.group.order:
            raise GroupMismatch(f"need {self.group.order} values, got {vals.shape[0]}")
        object.__setattr__(self, "values", vals)

    def entries(self) -> list:
        return [MAXPLUS.decode(v) for v in self.values]

    def __eq__(self, other):
        return (isinstance(other, GroupFunction) and self.group is other.group
                and bool(np.all(self.values == other.values)))


def delta_group(G: FiniteGroup) -> GroupFunction:
    """Unit of the convolution semiring: ``0`` at the identity, ``-inf`` elsewhere."""
    vals = [sr.BOTTOM] * G.order
    vals[G.identity] = 0
    return GroupFunction(G, vals)


def idempotent_integral(phi: SampledFunction):
    """Supremum of the samples (infimum, in the usual sense, over min-plus)."""
    s = phi.semiring
    return s.decode(s.plus_reduce(phi.values))


def integral_wrt_measure(phi: SampledFunction, psi: SampledFunction):
    if phi.semiring is not psi.semiring:
        raise SemiringMismatch(f"{phi.semiring.name} vs {psi.semiring.name}")
    if not phi.same_grid(psi):
        raise GridMismatch("functions are sampled on different grids")
    s = phi.semiring
    return s.decode(s.plus_reduce(s.times(phi.values, psi.values)))


def scalar_product(phi: SampledFunction, psi: SampledFunction):
    return integral_wrt_measure(phi, psi)


def convolve_group(phi: GroupFunction, psi: GroupFunction) -> GroupFunction:
    """``(phi * psi)(g) = max_x phi(x) + psi(x^-1 g)``."""
    if phi.group is not psi.group:
        raise GroupMismatch("functions on different groups")
    G = phi.group
    t = G.table
    inv = np.array(G.inverses)
    # idx[x, g] = x^-1 g
    idx = t[inv[:, None], np.arange(G.order)[None, :]]
    terms = phi.values[:, None] + psi.values[idx]
    return GroupFunction(G, [MAXPLUS.decode(v) for v in np.max(terms, axis=0)])


def convolve_grid(phi: SampledFunction, psi: SampledFunction) -> SampledFunction:
    """Sup- (max-plus) or inf- (min-plus) convolution on the Minkowski-sum grid."""
    if phi.semiring is not psi.semiring:
        raise SemiringMismatch(f"{phi.semiring.name} vs {psi.semiring.name}")
    s = phi.semiring
    if s not in (MAXPLUS, MINPLUS, sr.INTMAXPLUS):
        raise SemiringMismatch("grid convolution needs max-plus or min-plus")
    if phi.step != psi.step:
        raise StepMismatch(f"steps differ: {phi.step} vs {psi.step}")
    n, m = phi.count, psi.count
    dtype = object if object in (phi.values.dtype, psi.values.dtype) else float
    out = np.full(n + m - 1, s.zero_code, dtype=dtype)
    for i in range(n):
        seg = out[i:i + m]
        out[i:i + m] = s.plus(seg, s.times(phi.values[i], psi.values))
    return SampledFunction(s, phi.origin + psi.origin, phi.step, out, _raw=True)


def _finite_samples(phi: SampledFunction):
    mask = ~phi.semiring.is_zero_code(phi.values)
    if not mask.any():
        raise AllBottom("function is identically the semiring zero")
    idx = np.flatnonzero(mask)
    xs = phi.xs()[idx]
    return xs, phi.values[idx]


def legendre(phi: SampledFunction, xis: XiGrid) -> SampledFunction:
    """``phi~(xi) = max_x (xi * x + phi(x))`` for every ``xi`` on the grid."""
    if phi.semiring not in (MAXPLUS, sr.INTMAXPLUS):
        raise SemiringMismatch("the Legendre transform is defined for max-plus functions")
    xs, vals = _finite_samples(phi)
    xi = np.array(xis.points(), dtype=object if isinstance(xis.origin + xis.step, Fraction) else float)
    if xs.dtype == object or vals.dtype == object or xi.dtype == object:
        xs, vals, xi = _as_exact(xs), _as_exact(vals), _as_exact(xi)
    out = np.max(xi[:, None] * xs[None, :] + vals[None, :], axis=1)
    return SampledFunction(MAXPLUS, xis.origin, xis.step, out, _raw=True)


def _exact(x):
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(x) if not isinstance(x, Fraction) else x


def legendre_involution(phi: SampledFunction) -> SampledFunction:
    """Back-transform of the Legendre transform, on the original grid.

    The dual variable ranges over the negated slope of every chord between
    two finite samples (``phi~(xi) - xi * x`` is a line of slope ``-xi``).
    That set contains each edge of the upper concave envelope, so
    ``min_xi (phi~(xi) - xi * x)`` reproduces the envelope exactly inside the
    support hull; outside it the result is the semiring zero.  Arithmetic is
    rational, so integer data gives exact (possibly fractional) values.
    """
    if phi.semiring not in (MAXPLUS, sr.INTMAXPLUS):
        raise SemiringMismatch("the Legendre transform is defined for max-plus functions")
    xs, vals = _finite_samples(phi)
    xs = [_exact(x) for x in xs]
    vals = [_exact(v) for v in vals]
    slopes = sorted({(vals[i] - vals[j]) / (xs[j] - xs[i])
                     for i in range(len(xs)) for j in range(i + 1, len(xs))}) or [Fraction(0)]
    dual = [max(xi * x + v for x, v in zip(xs, vals)) for xi in slopes]
    lo, hi = xs[0], xs[-1]
    out = []
    for x in phi.xs():
        x = _exact(x)
        if x < lo or x > hi:
            out.append(-np.inf)
        else:
            out.append(sr._normalize_number(min(d - xi * x for xi, d in zip(slopes, dual))))
    return SampledFunction(MAXPLUS, phi.origin, phi.step, np.array(out, dtype=object), _raw=True)
