"""Monomial representations of finite groups over an idempotent semifield.

Every invertible matrix over an idempotent semifield is monomial, so a
representation is stored as one :class:`MonomialMatrix` per group element.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from . import semiring as sr
from .errors import (
    ExhaustedCandidates,
    GroupMismatch,
    InvariantViolation,
    NotAlgebraicallyClosed,
    NotASemifield,
    NotInvertible,
    NotNilpotent,
    ShapeMismatch,
    ZeroVector,
)
from .groups import FiniteGroup, center, generated_subgroup, lower_central_series
from .linalg import Vector, scalar_mul
from .semiring import MAXPLUS
from .spectral import (
    MonomialMatrix,
    eigen_monomial,
    expand_from_generators,
    joint_eigenvector_commuting,
    normalize,
    restrict_to_generators,
)

__all__ = [
    "Representation", "Character", "validate_representation", "representation_defect",
    "orbit_sum", "joint_eigenvector_finite", "joint_eigenvector_nilpotent",
    "character_check", "coset_representation", "regular_representation",
    "trivial_representation", "direct_sum", "conjugate", "random_monomial",
    "random_representation",
]


@dataclass(frozen=True, eq=False)
class Representation:
    group: FiniteGroup
    images: tuple
    semiring: sr.Semiring = MAXPLUS

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.group.order:
            raise ShapeMismatch(f"need {self.group.order} images, got {len(images)}")
        if len({m.dim for m in images}) != 1:
            raise ShapeMismatch("all images must have the same dimension")
        if not self.semiring.semifield:
            raise NotASemifield(f"{self.semiring.name} is not a semifield")

    @property
    def dim(self) -> int:
        return self.images[0].dim

    def __call__(self, g: int) -> MonomialMatrix:
        return self.images[g]


@dataclass(frozen=True, eq=False)
class Character:
    group: FiniteGroup
    values: tuple

    def __call__(self, g: int):
        return self.values[g]


def representation_defect(pi: Representation) -> str | None:
    """Describe the first failed homomorphism check, or ``None`` if ``pi`` is valid."""
    G = pi.group
    if pi.images[G.identity] != MonomialMatrix.identity(pi.dim, pi.semiring):
        return f"image of the identity element {G.identity} is not the identity matrix"
    for g in G.elements():
        for h in G.elements():
            if pi.images[G.mul(g, h)] != pi.images[g] @ pi.images[h]:
                return f"pi({g}*{h}) != pi({g}) pi({h})"
    return None


def validate_representation(pi: Representation) -> bool:
    # images are MonomialMatrix instances, invertible by construction
    return representation_defect(pi) is None


def orbit_sum(pi: Representation, x: Vector) -> Vector:
    """``a = (+)_g pi(g) x``, a vector fixed by every ``pi(g)``."""
    s = pi.semiring
    if x.dim != pi.dim:
        raise ShapeMismatch(f"vector has dim {x.dim}, representation has dim {pi.dim}")
    if x.is_zero():
        raise ZeroVector("orbit sum of the zero vector")
    acc = None
    for m in pi.images:
        y = m.apply(x).values
        acc = y if acc is None else s.plus(acc, y)
    a = Vector._wrap(x.semiring, acc)
    for g, m in enumerate(pi.images):
        if m.apply(a) != a:
            raise InvariantViolation(f"orbit sum is not fixed by element {g}")
    return a


def joint_eigenvector_finite(pi: Representation, seed: Vector | None = None):
    """Fixed vector (eigenvalue ``1`` for every element) as an orbit sum."""
    s = pi.semiring
    if seed is None:
        seed = Vector(s, [s.one] * pi.dim)
    a = orbit_sum(pi, seed)
    return a, Character(pi.group, (s.one,) * pi.group.order)


def character_check(lam: Character) -> bool:
    """Exhaustive test of ``lam(gh) = lam(g) (*) lam(h)``."""
    G = lam.group
    if len(lam.values) != G.order:
        return False
    for g in G.elements():
        for h in G.elements():
            if lam(G.mul(g, h)) != lam(g) + lam(h):
                return False
    return lam(G.identity) == 0


def _pairwise_commute(ms: Sequence[MonomialMatrix]) -> bool:
    return all(a @ b == b @ a for a, b in combinations(ms, 2))


def _generators(G: FiniteGroup) -> list[int]:
    gens, sub = [], frozenset({G.identity})
    for g in G.elements():
        if g not in sub:
            gens.append(g)
            sub = generated_subgroup(G, gens)
    return gens


def _orbits(perms: Sequence[tuple], n: int) -> list[list[int]]:
    seen, out = set(), []
    for start in range(n):
        if start in seen:
            continue
        orbit, stack = [], [start]
        seen.add(start)
        while stack:
            j = stack.pop()
            orbit.append(j)
            for p in perms:
                if p[j] not in seen:
                    seen.add(p[j])
                    stack.append(p[j])
        out.append(sorted(orbit))
    return out


def _solve_rational(rows: list[list[Fraction]], rhs: list[Fraction]):
    """One solution of a (possibly over-determined) linear system, or ``None``."""
    m = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots, r = [], 0
    for c in range(m):
        piv = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(all(x == 0 for x in row[:-1]) and row[-1] != 0 for row in aug):
        return None
    sol = [Fraction(0)] * m
    for i, c in enumerate(pivots):
        sol[c] = aug[i][-1]
    return sol


def _orbit_search(G: FiniteGroup, images: Sequence[MonomialMatrix]) -> Vector:
    """Exhaustive search over supports that are orbits of the permutation parts.

    A joint eigenvector restricted to one orbit is again a joint eigenvector,
    so single orbits are the only candidate supports.  On an orbit the
    eigen relations ``v[j] - v[perm_g(j)] + lam_g = w_g[j]`` form an additive
    linear system, solved over the rationals with ``v`` fixed to ``0`` at the
    orbit's smallest index.
    """
    gens = _generators(G) or [G.identity]
    n = images[0].dim
    for orbit in _orbits([images[g].perm for g in gens], n):
        col = {j: k for k, j in enumerate(orbit[1:])}
        nv = len(col)
        rows, rhs = [], []
        for gi, g in enumerate(gens):
            m = images[g]
            for j in orbit:
                row = [Fraction(0)] * (nv + len(gens))
                if j in col:
                    row[col[j]] += 1
                if m.perm[j] in col:
                    row[col[m.perm[j]]] -= 1
                row[nv + gi] = Fraction(1)
                rows.append(row)
                rhs.append(Fraction(m.weights[j]))
        sol = _solve_rational(rows, rhs)
        if sol is None:
            continue
        coords = [-np.inf] * n
        coords[orbit[0]] = 0
        for j, k in col.items():
            coords[j] = sr._normalize_number(sol[k])
        return Vector._wrap(MAXPLUS, np.array(coords, dtype=object))
    raise ExhaustedCandidates("no orbit supports a joint eigenvector")


def _engel(G: FiniteGroup, images: list[MonomialMatrix], centre: list[int]) -> Vector:
    distinct = list(dict.fromkeys(images))
    if _pairwise_commute(distinct):
        return joint_eigenvector_commuting(distinct).eigenvector
    for z in centre:
        mz = images[z]
        if mz.is_scalar():
            continue
        pairs = eigen_monomial(mz)
        for lam in sorted({p.eigenvalue for p in pairs}):
            gens = [p.eigenvector for p in pairs if p.eigenvalue == lam]
            try:
                restricted = [restrict_to_generators(m, gens) for m in images]
                u = _engel(G, restricted, centre)
            except (NotInvertible, ExhaustedCandidates):
                continue
            return expand_from_generators(u, gens)
    # every central element is scalar here, so it only contributes a constant
    # to the character; the orbit search absorbs it
    return _orbit_search(G, images)


def joint_eigenvector_nilpotent(pi: Representation):
    """Joint eigenvector of a representation of a finite nilpotent group.

    Descends through eigenspaces of central elements (which every ``pi(g)``
    preserves) until the restricted images commute, then hands over to the
    commuting-family routine.  The result is verified for every element.
    """
    if pi.semiring is not MAXPLUS:
        raise NotAlgebraicallyClosed("joint eigenvectors are computed over max-plus only")
    G = pi.group
    if not lower_central_series(G).nilpotent:
        raise NotNilpotent(f"{G.name} is not nilpotent")
    ident = MonomialMatrix.identity(pi.dim)
    if all(m == ident for m in pi.images):
        v = Vector(MAXPLUS, [0] * pi.dim)
    else:
        v = normalize(_engel(G, list(pi.images), center(G)))
    i = int(np.flatnonzero(v.support())[0])
    values = []
    for g, m in enumerate(pi.images):
        lam = sr._normalize_number(m.apply(v).values[i] - v.values[i])
        if m.apply(v) != scalar_mul(lam, v):
            raise InvariantViolation(f"eigen relation fails for element {g}")
        values.append(lam)
    chi = Character(G, tuple(values))
    if not character_check(chi):
        raise InvariantViolation("eigenvalue map is not a character")
    return v, chi


# -- builders -------------------------------------------------------------

def coset_representation(G: FiniteGroup, subgroup) -> Representation:
    """Permutation representation on the left cosets ``xH``.

    ``pi(g)`` sends the coordinate of ``xH`` to that of ``g^-1 x H``, which
    makes ``pi(gh) = pi(g) pi(h)`` under the row-to-column convention of
    :class:`MonomialMatrix`.
    """
    H = frozenset(subgroup)
    if G.identity not in H:
        raise GroupMismatch("subgroup must contain the identity")
    cosets, index = [], {}
    for x in G.elements():
        if x in index:
            continue
        coset = frozenset(G.mul(x, h) for h in H)
        for y in coset:
            index[y] = len(cosets)
        cosets.append(min(coset))
    images = []
    for g in G.elements():
        gi = G.inv(g)
        perm = tuple(index[G.mul(gi, rep)] for rep in cosets)
        images.append(MonomialMatrix(perm, (0,) * len(cosets)))
    return Representation(G, images)


def regular_representation(G: FiniteGroup) -> Representation:
    return coset_representation(G, {G.identity})


def trivial_representation(G: FiniteGroup, dim: int = 1) -> Representation:
    return Representation(G, [MonomialMatrix.identity(dim)] * G.order)


def direct_sum(a: Representation, b: Representation) -> Representation:
    if a.group is not b.group:
        raise GroupMismatch("direct sum of representations of different groups")
    off = a.dim
    images = [
        MonomialMatrix(ma.perm + tuple(p + off for p in mb.perm), ma.weights + mb.weights)
        for ma, mb in zip(a.images, b.images)
    ]
    return Representation(a.group, images, a.semiring)


def conjugate(pi: Representation, q: MonomialMatrix) -> Representation:
    """``g -> q pi(g) q^-1``, a twist by a coboundary."""
    qi = q.inverse()
    return Representation(pi.group, [q @ m @ qi for m in pi.images], pi.semiring)


def random_monomial(n: int, rng: random.Random, lo: int = -5, hi: int = 5) -> MonomialMatrix:
    perm = list(range(n))
    rng.shuffle(perm)
    return MonomialMatrix(tuple(perm), tuple(rng.randint(lo, hi) for _ in range(n)))


def random_representation(G: FiniteGroup, rng: random.Random, max_summands: int = 2) -> Representation:
    """Random valid monomial representation.

    A direct sum of permutation representations on cosets of cyclic subgroups
    (the trivial subgroup gives the regular representation), conjugated by a
    random monomial matrix.
    """
    pi = None
    for _ in range(rng.randint(1, max_summands)):
        H = generated_subgroup(G, [rng.randrange(G.order)])
        part = coset_representation(G, H)
        pi = part if pi is None else direct_sum(pi, part)
    return conjugate(pi, random_monomial(pi.dim, rng))
