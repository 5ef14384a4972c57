"""Dense matrices and vectors over an idempotent semiring.

Storage is a read-only numpy array in the semiring's array encoding (see
:mod:`idempotent.semiring`).  The dtype is ``float64`` unless some entry is
a :class:`~fractions.Fraction`, in which case an ``object`` array keeps the
arithmetic exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import semiring as sr
from .errors import (
    IndexOutOfRange,
    NonStable,
    NotASemifield,
    NotDominated,
    NotInvertible,
    SemiringMismatch,
    ShapeMismatch,
)
from .semiring import MINPLUS, Semiring

__all__ = [
    "Matrix", "Vector", "WeightedGraph", "SolveReport",
    "mat_add", "mat_mul", "mat_vec", "identity", "zeros", "closure_star",
    "solve_bellman", "shortest_paths", "graph_to_matrix", "residual",
    "is_archimedean", "invert_matrix", "is_monomial", "scalar_mul", "vec_add",
    "mat_leq", "vec_leq",
]


def _encode_array(s: Semiring, data, ndim: int) -> np.ndarray:
    obj = np.array(data, dtype=object)
    if obj.ndim != ndim:
        raise ShapeMismatch(f"expected a {ndim}-dimensional array, got shape {obj.shape}")
    flat = [s.encode(x) for x in obj.ravel()]
    exact = any(isinstance(x, Fraction) for x in flat)
    arr = np.array(flat, dtype=object if exact else float).reshape(obj.shape)
    arr.flags.writeable = False
    return arr


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class Matrix:
    """Immutable ``rows x cols`` matrix over ``semiring``.

    Build from nested lists of scalars (``BOTTOM`` allowed)::

        Matrix(MAXPLUS, [[0, BOTTOM], [3, 1]])
    """

    __slots__ = ("semiring", "values")

    def __init__(self, semiring, entries, *, _raw: bool = False):
        self.semiring = sr.get_semiring(semiring)
        if _raw:
            self.values = _frozen(entries)
        else:
            self.values = _encode_array(self.semiring, entries, 2)
        if self.values.shape[0] < 1 or self.values.shape[1] < 1:
            raise ShapeMismatch("matrices must have at least one row and column")

    @classmethod
    def _wrap(cls, s, arr):
        return cls(s, arr, _raw=True)

    @property
    def shape(self):
        return self.values.shape

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    @property
    def exact(self) -> bool:
        return self.values.dtype == object

    def __getitem__(self, idx):
        i, j = idx
        return self.semiring.decode(self.values[i, j])

    def entries(self) -> list[list]:
        return [[self.semiring.decode(c) for c in row] for row in self.values]

    def column(self, j: int) -> "Vector":
        return Vector._wrap(self.semiring, self.values[:, j].copy())

    def row(self, i: int) -> "Vector":
        return Vector._wrap(self.semiring, self.values[i, :].copy())

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self.semiring, self.values.T.copy())

    def support(self) -> np.ndarray:
        """Boolean mask of the non-zero entries."""
        return ~self.semiring.is_zero_code(self.values)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.semiring is other.semiring and self.shape == other.shape
                and bool(np.all(self.values == other.values)))

    def __hash__(self):
        return hash((self.semiring.name, self.shape, tuple(self.values.ravel().tolist())))

    def __add__(self, other):
        return mat_add(self, other)

    def __matmul__(self, other):
        if isinstance(other, Vector):
            return mat_vec(self, other)
        return mat_mul(self, other)

    def __repr__(self):
        return f"Matrix({self.semiring.name}, {self.entries()!r})"


class Vector:
    """Element of the free semimodule ``K^n``."""

    __slots__ = ("semiring", "values")

    def __init__(self, semiring, entries, *, _raw: bool = False):
        self.semiring = sr.get_semiring(semiring)
        self.values = _frozen(entries) if _raw else _encode_array(self.semiring, entries, 1)
        if self.values.shape[0] < 1:
            raise ShapeMismatch("vectors must have positive dimension")

    @classmethod
    def _wrap(cls, s, arr):
        return cls(s, arr, _raw=True)

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    def __len__(self):
        return self.dim

    def __getitem__(self, i):
        return self.semiring.decode(self.values[i])

    def entries(self) -> list:
        return [self.semiring.decode(c) for c in self.values]

    def support(self) -> np.ndarray:
        return ~self.semiring.is_zero_code(self.values)

    def is_zero(self) -> bool:
        return not self.support().any()

    def as_column(self) -> Matrix:
        return Matrix._wrap(self.semiring, self.values.reshape(-1, 1).copy())

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return (self.semiring is other.semiring and self.dim == other.dim
                and bool(np.all(self.values == other.values)))

    def __hash__(self):
        return hash((self.semiring.name, tuple(self.values.tolist())))

    def __add__(self, other):
        return vec_add(self, other)

    def __repr__(self):
        return f"Vector({self.semiring.name}, {self.entries()!r})"


def _same_semiring(a, b) -> Semiring:
    if a.semiring is not b.semiring:
        raise SemiringMismatch(f"{a.semiring.name} vs {b.semiring.name}")
    return a.semiring


def _result_dtype(*arrays):
    return object if any(a.dtype == object for a in arrays) else float


def _as_exact(arr: np.ndarray) -> np.ndarray:
    """Object copy with integral finite floats turned into ints.

    Mixing float and Fraction operands would otherwise silently round.
    """
    out = arr.astype(object)
    for idx, x in np.ndenumerate(out):
        if isinstance(x, float) and x.is_integer():
            out[idx] = int(x)
    return out


def _mm(s: Semiring, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    n, k = A.shape
    dtype = _result_dtype(A, B)
    if dtype == object:
        A, B = _as_exact(A), _as_exact(B)
    out = np.full((n, B.shape[1]), s.zero_code, dtype=dtype)
    for t in range(k):
        out = s.plus(out, s.times(A[:, t:t + 1], B[t:t + 1, :]))
    return out


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    s = _same_semiring(A, B)
    if A.shape != B.shape:
        raise ShapeMismatch(f"{A.shape} vs {B.shape}")
    return Matrix._wrap(s, s.plus(A.values, B.values))


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    s = _same_semiring(A, B)
    if A.cols != B.rows:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return Matrix._wrap(s, _mm(s, A.values, B.values))


def mat_vec(A: Matrix, x: Vector) -> Vector:
    s = _same_semiring(A, x)
    if A.cols != x.dim:
        raise ShapeMismatch(f"cannot apply {A.shape} to a vector of dim {x.dim}")
    return Vector._wrap(s, _mm(s, A.values, x.values.reshape(-1, 1)).ravel())


def vec_add(x: Vector, y: Vector) -> Vector:
    s = _same_semiring(x, y)
    if x.dim != y.dim:
        raise ShapeMismatch(f"{x.dim} vs {y.dim}")
    return Vector._wrap(s, s.plus(x.values, y.values))


def scalar_mul(a, x):
    """``a (*) x`` for a Vector or Matrix ``x``."""
    s = x.semiring
    code = s.encode(a)
    base = x.values
    if isinstance(code, Fraction) or base.dtype == object:
        base = _as_exact(base)
    return type(x)._wrap(s, np.asarray(s.times(base, code)))


def mat_leq(A: Matrix, B: Matrix) -> bool:
    s = _same_semiring(A, B)
    return bool(np.all(s.plus(A.values, B.values) == B.values))


def vec_leq(x: Vector, y: Vector) -> bool:
    s = _same_semiring(x, y)
    return bool(np.all(s.plus(x.values, y.values) == y.values))


def identity(s, n: int) -> Matrix:
    s = sr.get_semiring(s)
    if n < 1:
        raise ShapeMismatch("n must be at least 1")
    arr = np.full((n, n), s.zero_code, dtype=float)
    np.fill_diagonal(arr, s.encode(s.one))
    return Matrix._wrap(s, arr)


def zeros(s, rows: int, cols: int) -> Matrix:
    s = sr.get_semiring(s)
    return Matrix._wrap(s, np.full((rows, cols), s.zero_code, dtype=float))


def _square(A: Matrix):
    if A.rows != A.cols:
        raise ShapeMismatch(f"expected a square matrix, got {A.shape}")


def _scalar_star(s: Semiring, a):
    """``1 (+) a (+) a^2 (+) ...`` for a single code, or raise NonStable."""
    one = s.encode(s.one)
    p = sr._scalar_op(s.plus, one, a)
    if sr._scalar_op(s.times, p, p) != p:
        raise NonStable(f"diagonal element {s.decode(a)} has no finite star")
    return p


def closure_star(A: Matrix, method: str = "iterate") -> Matrix:
    """Kleene star ``A* = I (+) A (+) A^2 (+) ...``.

    ``iterate`` squares ``I (+) A`` until the power covers all walks of
    length ``n - 1`` and then checks that one more factor changes nothing.
    ``gauss_jordan`` is the Floyd-Warshall/Lehmann elimination.
    """
    _square(A)
    s, n = A.semiring, A.rows
    ident = identity(s, n).values
    if method == "iterate":
        B = s.plus(ident, A.values)
        power = 1
        while power < n - 1:
            B = _mm(s, B, B)
            power *= 2
        if not np.all(_mm(s, B, s.plus(ident, A.values)) == B):
            raise NonStable("closure does not stabilise: divergent cycle")
        return Matrix._wrap(s, B)
    if method == "gauss_jordan":
        M = np.array(A.values, dtype=A.values.dtype)
        for k in range(n):
            star = _scalar_star(s, M[k, k])
            col = s.times(M[:, k:k + 1], star)
            M = s.plus(M, s.times(col, M[k:k + 1, :]))
        return Matrix._wrap(s, s.plus(ident, M))
    raise ValueError(f"unknown closure method {method!r}")


@dataclass(frozen=True)
class SolveReport:
    solution: Matrix
    iterations: int
    method: str
    stable: bool = True


def solve_bellman(H: Matrix, F: Matrix, method: str = "jacobi") -> SolveReport:
    """Least solution of ``X = H (*) X (+) F``.

    Both schemes start from ``X = F`` and stop after the first pass that
    changes nothing.  A pass count beyond ``n`` means some divergent cycle
    feeds the right-hand side, reported as :class:`NonStable`.
    """
    s = _same_semiring(H, F)
    _square(H)
    if F.rows != H.rows:
        raise ShapeMismatch(f"H is {H.shape} but F is {F.shape}")
    n = H.rows
    Hv, Fv = H.values, F.values
    X = np.array(Fv, dtype=_result_dtype(Hv, Fv))
    if method == "jacobi":
        for it in range(1, n + 1):
            nxt = s.plus(_mm(s, Hv, X), Fv)
            if np.all(nxt == X):
                return SolveReport(Matrix._wrap(s, nxt), it, method)
            X = nxt
    elif method == "gauss_seidel":
        for it in range(1, n + 1):
            changed = False
            for i in range(n):
                row = s.plus(s.plus_reduce(s.times(Hv[i, :, None], X), axis=0), Fv[i])
                if not np.all(row == X[i]):
                    X[i] = row
                    changed = True
            if not changed:
                return SolveReport(Matrix._wrap(s, X), it, method)
    else:
        raise ValueError(f"unknown method {method!r}")
    raise NonStable(f"no fixed point after {n} {method} passes: divergent cycle")


@dataclass(frozen=True)
class WeightedGraph:
    node_count: int
    edges: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.node_count < 1:
            raise ShapeMismatch("a graph needs at least one node")
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        for u, v, _ in self.edges:
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise IndexOutOfRange(f"edge ({u}, {v}) outside 0..{self.node_count - 1}")


def graph_to_matrix(g: WeightedGraph, s=MINPLUS) -> Matrix:
    """Adjacency matrix, duplicate edges combined with the semiring sum."""
    s = sr.get_semiring(s)
    codes = [[s.zero_code] * g.node_count for _ in range(g.node_count)]
    for u, v, w in g.edges:
        codes[u][v] = sr._scalar_op(s.plus, codes[u][v], s.encode(w))
    exact = any(isinstance(c, Fraction) for row in codes for c in row)
    return Matrix._wrap(s, np.array(codes, dtype=object if exact else float))


def shortest_paths(g: WeightedGraph, source: int, method: str = "jacobi") -> Vector:
    """Min-plus distances from ``source``; unreachable nodes are ``BOTTOM`` (+inf).

    ``method`` is ``jacobi`` (Bellman), ``gauss_seidel`` (Ford), ``iterate``
    or ``gauss_jordan`` (closure based).
    """
    if not 0 <= source < g.node_count:
        raise IndexOutOfRange(f"source {source} outside 0..{g.node_count - 1}")
    A = graph_to_matrix(g, MINPLUS)
    if method in ("iterate", "gauss_jordan"):
        return closure_star(A, method).row(source)
    e = np.full((g.node_count, 1), MINPLUS.zero_code)
    e[source, 0] = 0
    report = solve_bellman(A.T, Matrix._wrap(MINPLUS, e), method)
    return report.solution.column(0)


def _require_semifield(s: Semiring):
    if not s.semifield:
        raise NotASemifield(f"{s.name} is not a semifield")


def is_archimedean(x: Vector) -> bool:
    _require_semifield(x.semiring)
    return bool(x.support().all())


def residual(x: Vector, y: Vector):
    """Least scalar ``k`` with ``k (*) x >= y`` in the standard order.

    Over a semifield this is the semiring sum of ``y_i / x_i``.  Raises
    :class:`NotDominated` when ``y`` is nonzero somewhere ``x`` is zero.
    """
    s = _same_semiring(x, y)
    _require_semifield(s)
    if x.dim != y.dim:
        raise ShapeMismatch(f"{x.dim} vs {y.dim}")
    xs, ys = x.support(), y.support()
    if (ys & ~xs).any():
        raise NotDominated("y is nonzero on a coordinate where x is zero")
    xv, yv = x.values, y.values
    if _result_dtype(xv, yv) == object:
        xv, yv = _as_exact(xv), _as_exact(yv)
    k = s.zero_code
    for i in np.flatnonzero(ys):
        k = sr._scalar_op(s.plus, k, yv[i] - xv[i])
    return s.decode(k)


def is_monomial(A: Matrix) -> bool:
    if A.rows != A.cols:
        return False
    supp = A.support()
    return bool((supp.sum(axis=0) == 1).all() and (supp.sum(axis=1) == 1).all())


def invert_matrix(A: Matrix) -> Matrix:
    """Inverse of a monomial matrix over a semifield (the only invertible ones)."""
    s = A.semiring
    _require_semifield(s)
    if not is_monomial(A):
        raise NotInvertible("only monomial matrices are invertible over an idempotent semifield")
    out = np.full(A.shape, s.zero_code, dtype=A.values.dtype)
    for i, j in zip(*np.nonzero(A.support())):
        out[j, i] = s.encode(sr.inv(s, s.decode(A.values[i, j])))
    return Matrix._wrap(s, out)
