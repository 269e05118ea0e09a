"""Elimination, intersection, quotient, saturation and radical membership."""

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import F7, Q3, bounded_polys
from tclab.errors import AlgebraError
from tclab.groebner import Ideal
from tclab.ideal_ops import (
    divide_exact,
    eliminate,
    ideal_power,
    intersect,
    intersect_all,
    quotient,
    radical_member,
    saturate,
    variables_ideal,
)

monomials = st.tuples(*[st.integers(0, 3)] * 3).filter(any)


def mono_ideal(ring, exps):
    return Ideal(ring, [ring.monomial(e) for e in exps])


def lcm_ideal(ring, A, B):
    return Ideal(ring, [ring.monomial(tuple(max(x, y) for x, y in zip(a, b))) for a, b in product(A, B)])


@settings(max_examples=50, deadline=None)
@given(st.lists(monomials, min_size=1, max_size=3), st.lists(monomials, min_size=1, max_size=3))
def test_monomial_intersection_is_pairwise_lcm(A, B):
    got = intersect(mono_ideal(F7, A), mono_ideal(F7, B))
    assert got.equals(lcm_ideal(F7, A, B))


@settings(max_examples=40, deadline=None)
@given(st.lists(bounded_polys(F7, 2), min_size=1, max_size=2), st.lists(bounded_polys(F7, 2), min_size=1, max_size=2))
def test_intersection_contains_product(gi, gj):
    I, J = Ideal(F7, gi), Ideal(F7, gj)
    K = intersect(I, J)
    assert K.issubset(I) and K.issubset(J)
    assert (I * J).issubset(K)


@settings(max_examples=40, deadline=None)
@given(st.lists(bounded_polys(F7, 2), min_size=1, max_size=2), st.lists(bounded_polys(F7, 2), min_size=1, max_size=2))
def test_quotient_times_divisor_lands_in_ideal(gi, gj):
    I, J = Ideal(F7, gi), Ideal(F7, gj)
    Q = quotient(I, J)
    assert I.issubset(Q)
    assert (Q * J).issubset(I)


@settings(max_examples=50, deadline=None)
@given(st.lists(monomials, min_size=1, max_size=4), monomials)
def test_monomial_quotient_by_monomial(A, b):
    # (m_i) : n is generated by m_i / gcd(m_i, n)
    want = Ideal(F7, [F7.monomial(tuple(max(x - y, 0) for x, y in zip(a, b))) for a in A])
    assert quotient(mono_ideal(F7, A), mono_ideal(F7, [b])).equals(want)


def test_saturation_removes_embedded_component():
    # (x^2, x*y) = (x) ∩ (x^2, y); saturating by y kills the embedded part
    I = Ideal(Q3, [Q3("x^2"), Q3("x*y")])
    assert saturate(I, Q3("y")).canonical() == ["x"]
    assert saturate(I, Q3("x")).is_unit()


def test_saturation_by_unit_and_nonzerodivisor():
    I = Ideal(F7, [F7("x*z-y^2"), F7("x^3-z^2")])
    assert saturate(I, F7("1")).equals(I)
    # saturation only grows the ideal; y^6-z^5 is already in I (lex basis)
    assert I.issubset(saturate(I, F7("x")))
    assert saturate(I, F7("x")).contains(F7("y^6-z^5"))


def test_elimination_of_parametrization():
    # image of t -> (t, t^2, t^3), variables ordered t first
    from tclab.poly import PolyRing

    T = PolyRing(0, ["t", "x", "y", "z"])
    I = Ideal(T, [T("x-t"), T("y-t^2"), T("z-t^3")])
    E = eliminate(I, ["t"])
    for f in ("y-x^2", "z-x*y", "x*z-y^2"):
        assert E.contains(T(f))
    assert not E.contains(T("x"))
    assert all(g.terms == {} or all(m[0] == 0 for m in g.terms) for g in E.generators)


def test_eliminate_unknown_variable():
    with pytest.raises(AlgebraError):
        eliminate(Ideal(F7, [F7("x")]), ["w"])


def test_radical_membership():
    I = Ideal(F7, [F7("x^3"), F7("y^2*z")])
    assert radical_member(F7("x"), I)
    assert radical_member(F7("y*z"), I)
    assert not radical_member(F7("y"), I)
    assert not radical_member(F7("z"), I)
    assert radical_member(F7("x+y*z"), I)


def test_power_and_variables_ideal():
    m = variables_ideal(F7)
    assert m.canonical() == ["x", "y", "z"]
    assert len(ideal_power(m, 2).groebner()) == 6
    assert ideal_power(m, 0).is_unit()
    assert variables_ideal(F7, ["x", "z"]).canonical() == ["x", "z"]


def test_intersect_all_and_exact_division():
    I = intersect_all([Ideal(F7, [F7("x")]), Ideal(F7, [F7("y")]), Ideal(F7, [F7("z")])])
    assert I.canonical() == ["x*y*z"]
    assert divide_exact(F7("x^2-y^2"), F7("x+y")) == F7("x-y")
    with pytest.raises(AlgebraError):
        divide_exact(F7("x^2+1"), F7("x+y"))


def test_operations_require_same_ring():
    other = Ideal(Q3, [Q3("x")])
    with pytest.raises(AlgebraError):
        intersect(Ideal(F7, [F7("x")]), other)
