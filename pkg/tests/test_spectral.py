import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from idempotent import (
    BOTTOM, MAXPLUS, Matrix, MonomialMatrix, Vector, eigen_monomial, eigenspace_generators,
    eigenvector_irreducible, identity, is_irreducible, joint_eigenvector_commuting,
    max_cycle_mean, normalize, scalar_mul, vec_add,
)
from idempotent.errors import NoCycle, NotCommuting, NotInvertible, NotIrreducible

B = BOTTOM
A2 = Matrix(MAXPLUS, [[0, 3], [-1, 1]])
SWAP = Matrix(MAXPLUS, [[B, 4], [-2, B]])


def test_max_cycle_mean_examples():
    assert max_cycle_mean(A2) == 1
    assert max_cycle_mean(Matrix(MAXPLUS, [[7]])) == 7
    with pytest.raises(NoCycle):
        max_cycle_mean(Matrix(MAXPLUS, [[B, 1, 2], [B, B, 3], [B, B, B]]))


def test_max_cycle_mean_is_exact_fraction():
    A = Matrix(MAXPLUS, [[B, 1, B], [B, B, 1], [0, B, B]])
    assert max_cycle_mean(A) == Fraction(2, 3)


def test_eigenvector_irreducible_examples():
    pair = eigenvector_irreducible(A2)
    assert pair.eigenvalue == 1
    assert A2 @ pair.eigenvector == scalar_mul(1, pair.eigenvector)
    one = eigenvector_irreducible(Matrix(MAXPLUS, [[5]]))
    assert one.eigenvalue == 5 and one.eigenvector.entries() == [0]
    ident = eigenvector_irreducible(identity(MAXPLUS, 3))
    assert ident.eigenvalue == 0 and ident.eigenvector.entries() == [0, B, B]


def test_eigenvector_irreducible_rejects_reducible():
    with pytest.raises(NotIrreducible):
        eigenvector_irreducible(Matrix(MAXPLUS, [[1, 2], [B, 0]]))
    assert not is_irreducible(Matrix(MAXPLUS, [[1, 2], [B, 0]]))


def test_eigen_monomial_examples():
    (pair,) = eigen_monomial(MonomialMatrix.from_matrix(SWAP))
    assert pair.eigenvalue == 1
    assert pair.eigenvector.entries() == [0, -3]
    assert (SWAP @ pair.eigenvector).entries() == [1, -2]
    diag = eigen_monomial(MonomialMatrix((0, 1), (2, 5)))
    assert [(p.eigenvalue, p.eigenvector.entries()) for p in diag] == [(2, [0, B]), (5, [B, 0])]
    ident = eigen_monomial(MonomialMatrix.identity(3))
    assert [p.eigenvalue for p in ident] == [0, 0, 0]


def test_eigenspace_generators_examples():
    gens = eigenspace_generators(A2, 1)
    assert len(gens) == 1
    for g in gens:
        assert A2 @ g == scalar_mul(1, g)
    assert len(eigenspace_generators(identity(MAXPLUS, 3), 0)) == 3
    (g,) = eigenspace_generators(MonomialMatrix.from_matrix(SWAP), 1)
    assert g.entries() == [0, -3]


def test_joint_eigenvector_examples():
    d1 = Matrix(MAXPLUS, [[1, B], [B, 2]])
    d2 = Matrix(MAXPLUS, [[3, B], [B, 0]])
    rep = joint_eigenvector_commuting([d1, d2])
    assert rep.eigenvector.entries() == [0, B]
    assert rep.eigenvalues == (1, 3)
    rep = joint_eigenvector_commuting([SWAP, SWAP @ SWAP])
    assert rep.eigenvector.entries() == [0, -3]
    assert rep.eigenvalues == (1, 2)
    with pytest.raises(NotCommuting):
        joint_eigenvector_commuting([SWAP, Matrix(MAXPLUS, [[0, B], [B, 5]])])
    with pytest.raises(NotInvertible):
        joint_eigenvector_commuting([A2])


def test_oracle_detects_missing_joint_eigenvector():
    swap = ((1, 0), (4, -2))
    diag = ((0, 1), (0, 5))
    assert not oracles.joint_eigen_exists([swap, diag])
    assert oracles.joint_eigen_exists([swap, ((0, 1), (3, 3))])


def test_normalize():
    v = normalize(Vector(MAXPLUS, [B, 4, 7]))
    assert v.entries() == [B, 0, 3]


def test_monomial_algebra():
    M = MonomialMatrix.from_matrix(SWAP)
    assert (M @ M.inverse()) == MonomialMatrix.identity(2)
    assert (M @ M).to_matrix() == SWAP @ SWAP
    with pytest.raises(NotInvertible):
        MonomialMatrix((0, 0), (1, 1))
    with pytest.raises(NotInvertible):
        MonomialMatrix((1, 0), (1, B))


# -- properties -------------------------------------------------------------

def int_matrix(n, density, rng):
    return [[rng.randint(-9, 9) if rng.random() < density else -math.inf for _ in range(n)]
            for _ in range(n)]


def to_matrix(adj):
    return Matrix(MAXPLUS, [[B if x == -math.inf else x for x in row] for row in adj])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.sampled_from([0.3, 0.7, 1.0]), st.randoms(use_true_random=False))
def test_karp_equals_enumeration(n, density, rng):
    adj = int_matrix(n, density, rng)
    ref = oracles.max_cycle_mean_bruteforce(adj)
    A = to_matrix(adj)
    if ref is None:
        with pytest.raises(NoCycle):
            max_cycle_mean(A)
    else:
        assert max_cycle_mean(A) == ref


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(-20, 20), st.randoms(use_true_random=False))
def test_scaling_invariance(n, c, rng):
    adj = int_matrix(n, 1.0, rng)
    A = to_matrix(adj)
    cA = scalar_mul(c, A)
    assert max_cycle_mean(cA) == max_cycle_mean(A) + c
    assert eigenvector_irreducible(cA).eigenvector == eigenvector_irreducible(A).eigenvector


@settings(max_examples=60, deadline=None)
@given(st.permutations(range(6)), st.lists(st.integers(-9, 9), min_size=6, max_size=6))
def test_monomial_span_has_full_support(perm, weights):
    M = MonomialMatrix(tuple(perm), tuple(weights))
    pairs = eigen_monomial(M)
    assert len(pairs) == len(M.cycles())
    span = pairs[0].eigenvector
    for p in pairs[1:]:
        span = vec_add(span, p.eigenvector)
    assert all(x is not B for x in span.entries())
    for p in pairs:
        assert M.apply(p.eigenvector) == scalar_mul(p.eigenvalue, p.eigenvector)


def test_joint_eigenvector_on_shared_cycle_structure():
    rng = random.Random(31)
    for _ in range(40):
        n = rng.randint(2, 6)
        perm = list(range(n))
        rng.shuffle(perm)
        seed = MonomialMatrix(tuple(perm), tuple(rng.randint(-5, 5) for _ in range(n)))
        fam = [seed, seed @ seed, MonomialMatrix.identity(n) @ seed.inverse()]
        rep = joint_eigenvector_commuting(fam)
        for m, lam in zip(fam, rep.eigenvalues):
            assert m.apply(rep.eigenvector) == scalar_mul(lam, rep.eigenvector)
