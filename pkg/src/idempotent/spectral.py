"""Max-plus spectral theory: cycle means, eigenvectors, joint eigenvectors.

Integer (or rational) input is lifted to :class:`~fractions.Fraction`
arithmetic, so eigenvalues such as ``1/3`` and the eigenvectors built from
them satisfy ``A v = lambda v`` exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from . import semiring as sr
from .errors import (
    InvariantViolation,
    NoCycle,
    NotCommuting,
    NotInvertible,
    NotIrreducible,
    ShapeMismatch,
)
from .linalg import (
    Matrix, Vector, _as_exact, closure_star, is_monomial, mat_mul, mat_vec, residual, scalar_mul,
)
from .semiring import BOTTOM, MAXPLUS

__all__ = [
    "MonomialMatrix", "EigenPair", "JointEigenReport", "max_cycle_mean",
    "eigenvector_irreducible", "eigen_monomial", "eigenspace_generators",
    "joint_eigenvector_commuting", "is_irreducible", "restrict_to_generators",
    "expand_from_generators", "normalize",
]

NEG_INF = -np.inf


def _exact_value(x):
    """Lift integral floats to int; keep genuine floats and Fractions."""
    if isinstance(x, float) and x.is_integer():
        return int(x)
    return x


def _as_maxplus(A: Matrix) -> Matrix:
    if A.semiring is sr.INTMAXPLUS:
        return Matrix._wrap(MAXPLUS, A.values.copy())
    if A.semiring is not MAXPLUS:
        raise ValueError(f"spectral operations need a max-plus matrix, got {A.semiring.name}")
    return A


def _exactify(arr: np.ndarray) -> np.ndarray:
    """Object array of ints/Fractions when every finite entry is rational-valued."""
    flat = arr.ravel().tolist()
    if all(isinstance(x, (int, Fraction)) or (isinstance(x, float) and (x.is_integer() or x == NEG_INF))
           for x in flat):
        return np.array([x if x == NEG_INF else _exact_value(x) for x in flat],
                        dtype=object).reshape(arr.shape)
    return arr


@dataclass(frozen=True)
class MonomialMatrix:
    """Invertible max-plus matrix: entry ``weights[i]`` sits at ``(i, perm[i])``.

    Applied to a vector, ``(M v)[i] = weights[i] + v[perm[i]]``.
    """

    perm: tuple
    weights: tuple
    semiring: sr.Semiring = MAXPLUS

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        weights = tuple(_exact_value(w) for w in self.weights)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "weights", weights)
        n = len(perm)
        if n == 0 or len(weights) != n:
            raise ShapeMismatch("perm and weights must be nonempty and of equal length")
        if sorted(perm) != list(range(n)):
            raise NotInvertible(f"{perm} is not a permutation")
        if any(w is BOTTOM or w == self.semiring.zero_code for w in weights):
            raise NotInvertible("monomial weights must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int, semiring=MAXPLUS):
        return cls(tuple(range(n)), (0,) * n, semiring)

    @classmethod
    def from_matrix(cls, A: Matrix) -> "MonomialMatrix":
        if not is_monomial(A):
            raise NotInvertible("matrix is not monomial")
        cols = np.argmax(A.support(), axis=1)
        return cls(tuple(int(c) for c in cols),
                   tuple(A.values[i, c] for i, c in enumerate(cols)), A.semiring)

    def to_matrix(self) -> Matrix:
        s = self.semiring
        exact = any(isinstance(w, Fraction) for w in self.weights)
        arr = np.full((self.dim, self.dim), s.zero_code, dtype=object if exact else float)
        for i, (p, w) in enumerate(zip(self.perm, self.weights)):
            arr[i, p] = w
        return Matrix._wrap(s, arr)

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        # (AB)[i, pb(pa(i))] = wa[i] + wb[pa(i)]
        return MonomialMatrix(
            tuple(other.perm[p] for p in self.perm),
            tuple(w + other.weights[p] for w, p in zip(self.weights, self.perm)),
            self.semiring,
        )

    def inverse(self) -> "MonomialMatrix":
        perm = [0] * self.dim
        weights = [0] * self.dim
        for i, (p, w) in enumerate(zip(self.perm, self.weights)):
            perm[p] = i
            weights[p] = -w
        return MonomialMatrix(tuple(perm), tuple(weights), self.semiring)

    def apply(self, v: Vector) -> Vector:
        vals = v.values
        exact = vals.dtype == object or any(isinstance(w, Fraction) for w in self.weights)
        if exact:
            vals = _as_exact(vals)
        out = np.array([w + vals[p] for w, p in zip(self.weights, self.perm)],
                       dtype=object if exact else float)
        return Vector._wrap(v.semiring, out)

    def is_scalar(self) -> bool:
        return self.perm == tuple(range(self.dim)) and len(set(self.weights)) == 1

    def cycles(self) -> list[list[int]]:
        """Permutation cycles, each starting at its smallest index, in order."""
        seen = [False] * self.dim
        out = []
        for start in range(self.dim):
            if seen[start]:
                continue
            cyc, i = [], start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.perm[i]
            out.append(cyc)
        return out


@dataclass(frozen=True)
class EigenPair:
    eigenvalue: object
    eigenvector: Vector


@dataclass(frozen=True)
class JointEigenReport:
    eigenvector: Vector
    eigenvalues: tuple


def normalize(v: Vector) -> Vector:
    """Scale so the first non-zero coordinate is the unit."""
    supp = np.flatnonzero(v.support())
    if not supp.size:
        return v
    return scalar_mul(sr.inv(v.semiring, v[int(supp[0])]), v)


def is_irreducible(A: Matrix) -> bool:
    """Strong connectivity of the precedence graph ``i -> j`` iff ``A[i, j] != 0``."""
    reach = A.support().astype(bool) | np.eye(A.rows, dtype=bool)
    for k in range(A.rows):
        reach = reach | (reach[:, k:k + 1] & reach[k:k + 1, :])
    return bool(reach.all())


def max_cycle_mean(A: Matrix):
    """Maximum cycle mean by Karp's dynamic program.

    Walk weights ``D[k][v]`` (exactly ``k`` edges ending at ``v``, any start)
    are built for ``k = 0..n``; then
    ``lambda = max_v min_k (D[n][v] - D[k][v]) / (n - k)``.
    """
    A = _as_maxplus(A)
    if A.rows != A.cols:
        raise ShapeMismatch("expected a square matrix")
    n = A.rows
    W = _exactify(A.values)
    exact = W.dtype == object
    D = [np.zeros(n, dtype=object if exact else float)]
    for _ in range(n):
        prev = D[-1]
        D.append(np.max(prev[:, None] + W, axis=0))
    best = None
    for v in range(n):
        dn = D[n][v]
        if dn == NEG_INF:
            continue
        worst = None
        for k in range(n):
            dk = D[k][v]
            if dk == NEG_INF:
                continue
            mean = Fraction(dn - dk, n - k) if exact else (dn - dk) / (n - k)
            if worst is None or mean < worst:
                worst = mean
        if best is None or worst > best:
            best = worst
    if best is None:
        raise NoCycle("the precedence graph is acyclic")
    return sr._normalize_number(best)


def _critical_data(A: Matrix, lam):
    """``(B*, critical nodes)`` for ``B = (-lam) (*) A``."""
    B = scalar_mul(sr.inv(MAXPLUS, lam), Matrix._wrap(MAXPLUS, _exactify(A.values)))
    star = closure_star(B, "iterate")
    plus = mat_mul(B, star)
    crit = [i for i in range(A.rows) if plus.values[i, i] == 0]
    return star, crit


def eigenvector_irreducible(A: Matrix) -> EigenPair:
    A = _as_maxplus(A)
    if A.rows != A.cols:
        raise ShapeMismatch("expected a square matrix")
    if is_monomial(A):
        pairs = eigen_monomial(MonomialMatrix.from_matrix(A))
        lam = max(p.eigenvalue for p in pairs)
        return next(p for p in pairs if p.eigenvalue == lam)
    if not is_irreducible(A):
        raise NotIrreducible("precedence graph is not strongly connected")
    lam = max_cycle_mean(A)
    star, crit = _critical_data(A, lam)
    v = normalize(star.column(crit[0]))
    _check_eigen(A, lam, v)
    return EigenPair(lam, v)


def _check_eigen(A: Matrix, lam, v: Vector):
    if mat_vec(Matrix._wrap(MAXPLUS, _exactify(A.values)), v) != scalar_mul(lam, v):
        raise InvariantViolation(f"eigen relation fails for lambda={lam}")


def eigen_monomial(M: MonomialMatrix) -> list[EigenPair]:
    """One eigenpair per permutation cycle.

    On a cycle of length ``l`` and weight ``w`` the eigenvalue is the ``l``-th
    root of ``w``; the coordinates follow ``v[perm[i]] = lam + v[i] - w[i]``
    from the unit at the cycle's smallest index.
    """
    pairs = []
    for cyc in M.cycles():
        w = 0
        for i in cyc:
            w = w + M.weights[i]
        lam = sr.nth_root(MAXPLUS, w, len(cyc))
        coords = [NEG_INF] * M.dim
        coords[cyc[0]] = 0
        for i in cyc[:-1]:
            coords[M.perm[i]] = lam + coords[i] - M.weights[i]
        exact = any(isinstance(c, Fraction) for c in coords)
        v = Vector._wrap(MAXPLUS, np.array(coords, dtype=object if exact else float))
        pairs.append(EigenPair(lam, v))
    return pairs


def eigenspace_generators(A, lam) -> list[Vector]:
    """Generators of ``{v : A v = lam v}``.

    Monomial input: one vector per permutation cycle whose mean is ``lam``
    (empty if ``lam`` is not an eigenvalue).  Irreducible input: one critical
    column of ``((-lam) A)*`` per critical class, smallest index first.
    """
    if isinstance(A, MonomialMatrix):
        return [p.eigenvector for p in eigen_monomial(A) if p.eigenvalue == lam]
    A = _as_maxplus(A)
    if is_monomial(A):
        return eigenspace_generators(MonomialMatrix.from_matrix(A), lam)
    if not is_irreducible(A):
        raise NotIrreducible("generators are only computed for irreducible or monomial matrices")
    if lam != max_cycle_mean(A):
        return []
    star, crit = _critical_data(A, lam)
    gens, covered = [], set()
    for i in crit:
        if i in covered:
            continue
        for j in crit:
            if star.values[i, j] + star.values[j, i] == 0:
                covered.add(j)
        gens.append(normalize(star.column(i)))
    return gens


def restrict_to_generators(M: MonomialMatrix, gens: Sequence[Vector]) -> MonomialMatrix:
    """Matrix of ``M`` on the span of ``gens`` in generator coordinates.

    Column ``b`` holds the residuation coefficients of ``M g_b`` against each
    ``g_a`` on the support of ``g_a``; the result must reproduce ``M g_b``
    exactly, otherwise :class:`InvariantViolation` is raised.
    """
    k = len(gens)
    supports = [g.support() for g in gens]
    coeffs = np.full((k, k), NEG_INF, dtype=object)
    for b, g in enumerate(gens):
        y = M.apply(g)
        for a, (ga, sa) in enumerate(zip(gens, supports)):
            if not y.support()[sa].any():
                continue
            idx = np.flatnonzero(sa)
            coeffs[a, b] = MAXPLUS.encode(residual(
                Vector._wrap(MAXPLUS, ga.values[idx]), Vector._wrap(MAXPLUS, y.values[idx])))
        rebuilt = expand_from_generators(Vector._wrap(MAXPLUS, coeffs[:, b].copy()), gens)
        if rebuilt != y:
            raise InvariantViolation("operator does not preserve the generated subspace")
    C = Matrix._wrap(MAXPLUS, coeffs)
    return MonomialMatrix.from_matrix(C)


def expand_from_generators(u: Vector, gens: Sequence[Vector]) -> Vector:
    """``(+)_a u[a] (*) g_a``."""
    acc = np.full(gens[0].dim, NEG_INF, dtype=object)
    for a, g in enumerate(gens):
        if u.values[a] == NEG_INF:
            continue
        acc = np.maximum(acc, _as_exact(g.values) + _exact_value(u.values[a]))
    return Vector._wrap(MAXPLUS, acc)


def _as_monomials(ms) -> list[MonomialMatrix]:
    out = []
    for m in ms:
        if isinstance(m, MonomialMatrix):
            out.append(m)
        else:
            out.append(MonomialMatrix.from_matrix(_as_maxplus(m)))
    if not out:
        raise ValueError("need at least one matrix")
    if len({m.dim for m in out}) != 1:
        raise ShapeMismatch("all matrices must have the same dimension")
    return out


class _DeadEnd(Exception):
    pass


def _joint(monos: list[MonomialMatrix]):
    first, rest = monos[0], monos[1:]
    pairs = eigen_monomial(first)
    for lam in sorted({p.eigenvalue for p in pairs}):
        gens = [p.eigenvector for p in pairs if p.eigenvalue == lam]
        if not rest:
            return gens[0], [lam]
        try:
            restricted = [restrict_to_generators(m, gens) for m in rest]
        except NotInvertible:
            continue
        try:
            u, lams = _joint(restricted)
        except _DeadEnd:
            continue
        return expand_from_generators(u, gens), [lam] + lams
    raise _DeadEnd


def joint_eigenvector_commuting(ms) -> JointEigenReport:
    """Common eigenvector of pairwise commuting invertible max-plus matrices.

    Descends through eigenspaces: the generators of one eigenspace of the
    first operator span a subspace every other operator preserves, so the
    problem restarts on the smaller family of restricted operators.
    """
    monos = _as_monomials(ms)
    for a, b in combinations(monos, 2):
        if a @ b != b @ a:
            raise NotCommuting("matrices do not commute")
    try:
        v, lams = _joint(monos)
    except _DeadEnd:
        raise InvariantViolation("no joint eigenvector found for a commuting family") from None
    v = normalize(v)
    for m, lam in zip(monos, lams):
        if m.apply(v) != scalar_mul(lam, v):
            raise InvariantViolation("joint eigen relation fails")
    return JointEigenReport(v, tuple(lams))
