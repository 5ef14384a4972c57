"""Finite groups given by Cayley tables.

Elements are the indices ``0..n-1``; ``table[i][j]`` is the index of the
product ``g_i g_j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

import numpy as np

from .errors import NotAGroup

__all__ = [
    "FiniteGroup", "LowerCentralSeries", "validate_group", "lower_central_series",
    "cyclic_group", "dihedral_group", "quaternion_group", "symmetric_group",
    "heisenberg_group", "group_from_elements", "generated_subgroup", "center",
]


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    identity: int
    inverses: tuple = field(default=())
    name: str = "G"

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def commutator(self, a: int, b: int) -> int:
        """``[a, b] = a^-1 b^-1 a b``."""
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def validate_group(table, identity: int | None = None, name: str = "G") -> FiniteGroup:
    """Check the group axioms exhaustively and return the group.

    Raises :class:`NotAGroup` naming the first violation found.
    """
    t = np.array(table, dtype=int)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotAGroup(f"table must be square and nonempty, got shape {t.shape}")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise NotAGroup("table entries must be element indices")
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(t[i]), full):
            raise NotAGroup(f"row {i} is not a permutation (not a Latin square)")
        if not np.array_equal(np.sort(t[:, i]), full):
            raise NotAGroup(f"column {i} is not a permutation (not a Latin square)")
    # (ab)c == a(bc) for all triples, vectorised over c
    left = t[t]                       # left[a, b, c] = t[t[a, b], c]
    right = t[:, t]                   # right[a, b, c] = t[a, t[b, c]]
    bad = np.argwhere(left != right)
    if bad.size:
        a, b, c = bad[0]
        raise NotAGroup(f"associativity fails for ({a}, {b}, {c})")
    if identity is None:
        cands = [e for e in range(n) if np.array_equal(t[e], full) and np.array_equal(t[:, e], full)]
        if not cands:
            raise NotAGroup("no identity element")
        identity = cands[0]
    elif not (0 <= identity < n and np.array_equal(t[identity], full)
              and np.array_equal(t[:, identity], full)):
        raise NotAGroup(f"element {identity} is not an identity")
    inverses = []
    for a in range(n):
        (b,) = np.flatnonzero(t[a] == identity)
        if t[b, a] != identity:
            raise NotAGroup(f"element {a} has no two-sided inverse")
        inverses.append(int(b))
    t.flags.writeable = False
    return FiniteGroup(t, int(identity), tuple(inverses), name)


def group_from_elements(elements, op, name: str = "G") -> FiniteGroup:
    """Build the Cayley table of a finite set closed under ``op``."""
    elements = list(elements)
    index = {e: i for i, e in enumerate(elements)}
    try:
        table = [[index[op(a, b)] for b in elements] for a in elements]
    except KeyError as exc:
        raise NotAGroup(f"set is not closed under the operation: {exc}") from None
    return validate_group(table, name=name)


def cyclic_group(n: int) -> FiniteGroup:
    return group_from_elements(range(n), lambda a, b: (a + b) % n, name=f"C{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular ``n``-gon (order ``2n``); ``(k, f)`` is ``r^k s^f``."""
    elems = [(k, f) for f in (0, 1) for k in range(n)]

    def op(a, b):
        (k1, f1), (k2, f2) = a, b
        return ((k1 + (-k2 if f1 else k2)) % n, f1 ^ f2)

    return group_from_elements(elems, op, name=f"D{n}")


def quaternion_group() -> FiniteGroup:
    """Q8 as unit quaternions ``(sign, axis)`` with axis in 1, i, j, k."""
    # multiplication table of basis units: (axis_a, axis_b) -> (sign, axis)
    unit = {
        ("1", x): (1, x) for x in "1ijk"
    } | {
        (x, "1"): (1, x) for x in "1ijk"
    } | {
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    elems = [(s, x) for x in "1ijk" for s in (1, -1)]

    def op(a, b):
        sign, axis = unit[(a[1], b[1])]
        return (a[0] * b[0] * sign, axis)

    return group_from_elements(elems, op, name="Q8")


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of ``0..n-1`` under composition ``(p q)(x) = p(q(x))``."""
    elems = list(permutations(range(n)))
    return group_from_elements(elems, lambda p, q: tuple(p[q[x]] for x in range(n)), name=f"S{n}")


def heisenberg_group(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices mod ``p`` as triples ``(a, b, c)``."""
    elems = list(product(range(p), repeat=3))

    def op(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return group_from_elements(elems, op, name=f"Heis({p})")


def generated_subgroup(G: FiniteGroup, gens) -> frozenset:
    """Smallest subgroup containing ``gens`` (closure under products)."""
    sub = {G.identity}
    frontier = list(set(gens))
    sub.update(frontier)
    while frontier:
        new = []
        for a in frontier:
            for b in list(sub):
                for c in (G.mul(a, b), G.mul(b, a)):
                    if c not in sub:
                        sub.add(c)
                        new.append(c)
        frontier = new
    return frozenset(sub)


def center(G: FiniteGroup) -> list[int]:
    t = G.table
    return [z for z in G.elements() if np.array_equal(t[z], t[:, z])]


@dataclass(frozen=True)
class LowerCentralSeries:
    subgroups: tuple
    nilpotent: bool
    nilpotency_class: int | None


def lower_central_series(G: FiniteGroup) -> LowerCentralSeries:
    """``G = Gamma_1 >= Gamma_2 >= ...`` with ``Gamma_{i+1} = [G, Gamma_i]``, until it stabilises."""
    series = [frozenset(G.elements())]
    while True:
        comms = {G.commutator(g, x) for g in G.elements() for x in series[-1]}
        nxt = generated_subgroup(G, comms)
        if nxt == series[-1]:
            break
        series.append(nxt)
    nilpotent = series[-1] == {G.identity}
    return LowerCentralSeries(tuple(series), nilpotent, len(series) - 1 if nilpotent else None)
