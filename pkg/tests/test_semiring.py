import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from idempotent import (
    BOOLEAN, BOTTOM, INTMAXPLUS, MAXMIN, MAXPLUS, MINPLUS, add, deq_add, get_semiring, inf_set,
    inv, leq, mul, nth_root, phi_h, sup_set,
)
from idempotent.errors import (
    EmptySet, InvalidScalar, NotAlgebraicallyClosed, NotASemifield, ZeroNotInvertible,
)

ints = st.integers(-10**6, 10**6)
maybe_bottom = st.one_of(st.just(BOTTOM), ints)


def test_basic_operations():
    assert add(MAXPLUS, 3, 5) == 5
    assert mul(MAXPLUS, 3, 5) == 8
    assert add(MINPLUS, 3, 5) == 3
    assert mul(MAXPLUS, BOTTOM, 7) is BOTTOM
    assert add(MAXPLUS, BOTTOM, 7) == 7
    assert mul(MAXMIN, 3, 5) == 3
    assert mul(MAXMIN, math.inf, 5) == 5
    assert add(BOOLEAN, BOTTOM, 1) == 1
    assert mul(BOOLEAN, BOTTOM, 1) is BOTTOM


def test_order_follows_plus():
    assert leq(MAXPLUS, 2, 5) and not leq(MAXPLUS, 5, 2)
    assert leq(MINPLUS, 5, 2)
    assert leq(MAXPLUS, BOTTOM, -1000)
    assert leq(MINPLUS, BOTTOM, 1000)


def test_inverse_and_roots():
    assert inv(MAXPLUS, 3) == -3
    assert inv(MINPLUS, Fraction(1, 2)) == Fraction(-1, 2)
    with pytest.raises(ZeroNotInvertible):
        inv(MAXPLUS, BOTTOM)
    with pytest.raises(NotASemifield):
        inv(MAXMIN, 3)
    assert nth_root(MAXPLUS, 2, 3) == Fraction(2, 3)
    assert nth_root(MAXPLUS, 6, 3) == 2
    assert nth_root(MAXPLUS, 1.5, 3) == 0.5
    assert nth_root(INTMAXPLUS, 6, 3) == 2
    with pytest.raises(NotAlgebraicallyClosed):
        nth_root(INTMAXPLUS, 7, 3)
    with pytest.raises(NotAlgebraicallyClosed):
        nth_root(BOOLEAN, 1, 2)


def test_sets():
    assert sup_set(MAXPLUS, []) is BOTTOM
    assert sup_set(MAXPLUS, [1, 9, -3]) == 9
    assert inf_set(MAXPLUS, [1, 9, -3]) == -3
    assert inf_set(MINPLUS, [1, 9, -3]) == 9
    with pytest.raises(EmptySet):
        inf_set(MAXPLUS, [])


def test_membership_is_validated():
    with pytest.raises(InvalidScalar):
        MAXPLUS.encode(math.nan)
    with pytest.raises(InvalidScalar):
        MAXPLUS.encode(math.inf)
    with pytest.raises(InvalidScalar):
        INTMAXPLUS.encode(1.5)
    with pytest.raises(InvalidScalar):
        BOOLEAN.encode(3)
    with pytest.raises(InvalidScalar):
        MAXPLUS.encode("1")
    with pytest.raises(InvalidScalar):
        get_semiring("tropical")
    assert MAXMIN.encode(math.inf) == math.inf


def test_deq_add_examples():
    assert deq_add(0, 0, 1) == pytest.approx(math.log(2), abs=1e-12)
    assert deq_add(0, 3, 0.1) == pytest.approx(3.0, abs=1e-9)
    # the direct formula would overflow here
    assert deq_add(1000, 1000, 1) == pytest.approx(1000 + math.log(2))


def test_phi_h():
    assert phi_h(0, 0.5) is BOTTOM
    assert phi_h(math.e, 2) == pytest.approx(2)
    with pytest.raises(ValueError):
        phi_h(-1, 1)


@given(maybe_bottom, maybe_bottom, maybe_bottom)
def test_intmaxplus_laws_exact(a, b, c):
    s = INTMAXPLUS
    assert add(s, add(s, a, b), c) == add(s, a, add(s, b, c))
    assert add(s, a, b) == add(s, b, a)
    assert add(s, a, a) == a
    assert mul(s, mul(s, a, b), c) == mul(s, a, mul(s, b, c))
    assert mul(s, a, add(s, b, c)) == add(s, mul(s, a, b), mul(s, a, c))
    assert add(s, BOTTOM, a) == a and mul(s, BOTTOM, a) is BOTTOM and mul(s, 0, a) == a


@given(st.lists(ints, min_size=1, max_size=8), ints)
def test_generalized_distributivity(xs, a):
    assert mul(MAXPLUS, a, sup_set(MAXPLUS, xs)) == sup_set(MAXPLUS, [a + x for x in xs])
    assert mul(MAXPLUS, a, inf_set(MAXPLUS, xs)) == inf_set(MAXPLUS, [a + x for x in xs])


@given(ints, ints, ints)
def test_order_is_total_and_partial(a, b, c):
    s = MINPLUS
    assert leq(s, a, a)
    assert leq(s, a, b) or leq(s, b, a)
    if leq(s, a, b) and leq(s, b, a):
        assert a == b
    if leq(s, a, b) and leq(s, b, c):
        assert leq(s, a, c)


@given(st.floats(-1e6, 1e6), st.integers(1, 50))
def test_nth_root_recovers_argument(a, n):
    r = nth_root(MAXPLUS, a, n)
    assert float(r) * n == pytest.approx(a, abs=1e-12 * max(1, abs(a)))


@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.floats(1e-4, 10))
def test_deq_add_bounds(u, v, h):
    gap = deq_add(u, v, h) - max(u, v)
    assert -1e-12 <= gap <= h * math.log(2) + 1e-9
    assert deq_add(u, v, h) == deq_add(v, u, h)
