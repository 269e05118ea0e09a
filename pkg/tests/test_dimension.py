"""Krull dimension, height and minimal primes."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_dim, brute_height, brute_min_primes
from strategies import F7, Q3
from tclab.dimension import (
    DERIVED,
    USER,
    PresentedAlgebra,
    PrimeWitness,
    big_height,
    components_of,
    height,
    is_equiheight,
    is_squarefree_monomial,
    krull_dim,
    local_height,
    monomial_min_primes,
    verify_components,
)
from tclab.errors import AlgebraError, DomainError, VerificationError
from tclab.groebner import Ideal
from tclab.poly import PolyRing


def supports(exps):
    return [frozenset(i for i, e in enumerate(m) if e) for m in exps]


def var_sets(data):
    """Variable indices generating each (monomial) minimal prime."""
    return [
        frozenset(i for g in P.nonzero_generators for i, e in enumerate(next(iter(g.terms))) if e)
        for P in data.minimal_primes
    ]


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(*[st.integers(0, 2)] * n).filter(any), min_size=1, max_size=5))))
def test_monomial_ideals_match_subset_brute_force(case):
    n, exps = case
    ring = PolyRing(7, [f"x{i}" for i in range(n)])
    I = Ideal(ring, [ring.monomial(e) for e in exps])
    R = PresentedAlgebra(ring, I)
    assert krull_dim(R) == brute_dim(supports(exps), n)
    assert height(I) == brute_height(supports(exps), n)
    data = monomial_min_primes(I)
    assert var_sets(data) == brute_min_primes(supports(exps), n)
    assert data.heights == [len(s) for s in var_sets(data)]


def test_plane_and_line_example():
    R = PresentedAlgebra.from_strings(0, "xyz", ["x*z", "y*z"])
    assert krull_dim(R) == 2
    assert height(R.defining_ideal) == 1
    comp = components_of(R)
    assert [P.canonical() for P in comp.minimal_primes] == [["z"], ["x", "y"]]
    assert comp.heights == [1, 2]
    assert comp.provenance == DERIVED
    assert big_height(R.defining_ideal, comp) == 2
    assert not is_equiheight(R, comp)
    assert local_height(comp, Ideal(Q3, [Q3("x"), Q3("y"), Q3("z")])) == 1
    assert local_height(comp, Ideal(Q3, [Q3("x"), Q3("y")])) == 2


def test_dimension_of_non_monomial_ideals():
    assert krull_dim(PresentedAlgebra.from_strings(7, "xyz", ["x^3+y^3+z^3"])) == 2
    assert krull_dim(PresentedAlgebra.from_strings(7, "xyz", ["x*z-y^2", "x^3-z^2"])) == 1
    assert krull_dim(PresentedAlgebra.from_strings(7, "xyz", ["x-1", "y-2", "z"])) == 0
    assert krull_dim(PresentedAlgebra.from_strings(7, "xyz", [])) == 3
    assert height(Ideal(F7, [F7("x*y-1")])) == 1


def test_unit_ideal_is_a_domain_error():
    R = PresentedAlgebra.from_strings(7, "xy", ["x", "x-1"])
    with pytest.raises(DomainError):
        components_of(R)
    with pytest.raises(DomainError):
        R.require_proper()
    with pytest.raises(DomainError):
        krull_dim(R)


def test_zero_ideal_has_itself_as_minimal_prime():
    data = monomial_min_primes(Ideal(F7, []))
    assert data.heights == [0]
    assert data.minimal_primes[0].is_zero()


def test_user_components_are_verified():
    ring = PolyRing(7, "xyz")
    I = Ideal(ring, [ring("x^3+y^3+z^3")])
    data = verify_components(I, [I])
    assert data.provenance == USER and data.heights == [1]

    nodal = Ideal(ring, [ring("x*y*(x+y)")])
    parts = [Ideal(ring, [ring(g)]) for g in ("x", "y", "x+y")]
    assert verify_components(nodal, parts).heights == [1, 1, 1]

    with pytest.raises(VerificationError) as info:
        verify_components(nodal, parts[:2])
    assert info.value.failed_checks[0].startswith("(b)")
    with pytest.raises(VerificationError) as info:
        verify_components(nodal, parts + [Ideal(ring, [ring("z")])])
    assert info.value.failed_checks[0].startswith("(a)")
    with pytest.raises(VerificationError) as info:
        verify_components(nodal, parts + [Ideal(ring, [ring("x"), ring("y")])])
    assert any(c.startswith("(c)") for c in info.value.failed_checks)
    assert info.value.code == "E_VERIFY"


def test_non_monomial_without_components():
    R = PresentedAlgebra.from_strings(7, "xyz", ["x^3+y^3+z^3"])
    with pytest.raises(AlgebraError):
        components_of(R)


def test_flags_and_witnesses():
    with pytest.raises(AlgebraError):
        PresentedAlgebra.from_strings(7, "xy", ["x"], flags=["assume_smooth"])
    assert is_squarefree_monomial(Ideal(F7, [F7("x*y"), F7("z")]))
    assert not is_squarefree_monomial(Ideal(F7, [F7("x^2")]))
    assert not is_squarefree_monomial(Ideal(F7, [F7("x+y")]))
    assert PrimeWitness.of(Ideal(F7, [F7("x"), F7("z")])).verified
    assert not PrimeWitness.of(Ideal(F7, [F7("x^2+y^2")])).verified
