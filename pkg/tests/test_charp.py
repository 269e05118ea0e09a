"""Frobenius powers and the bounded tight-closure checks."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import MacaulayOracle
from tclab.charp import (
    CERTIFIED,
    REFUTED,
    UNDETERMINED,
    CharPContext,
    frobenius_closure_member,
    frobenius_power,
    jacobian_multipliers,
    krull_truncation_check,
    tc_certify_in,
    tc_refute_in,
    test_multiplier_harness as run_harness,
    truncate_presentation,
)
from tclab.dimension import PresentedAlgebra, components_of
from tclab.errors import AlgebraError, DomainError
from tclab.groebner import Ideal
from tclab.instances import HARNESS_SUITE, TRUNCATION_CASES
from tclab.poly import PolyRing


def fermat(p=7):
    R = PresentedAlgebra.from_strings(p, "xyz", ["x^3+y^3+z^3"], flags=["assume_reduced"])
    comp = components_of(R, [R.defining_ideal])
    ring = R.ring
    return R, comp, Ideal(ring, [ring("x"), ring("y")])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(*[st.integers(0, 3)] * 3).filter(any), min_size=1, max_size=3), st.sampled_from([1, 5, 25]))
def test_bracket_power_of_monomial_ideal_scales_exponents(exps, q):
    ring = PolyRing(5, "xyz")
    I = Ideal(ring, [ring.monomial(e) for e in exps])
    want = Ideal(ring, [ring.monomial(tuple(q * a for a in e)) for e in exps])
    assert frobenius_power(I, q).equals(want)


def test_bracket_power_is_generated_by_qth_powers():
    ring = PolyRing(7, "xyz")
    I = Ideal(ring, [ring("x+y"), ring("z^2-x")])
    assert frobenius_power(I, 7).equals(Ideal(ring, [ring("x^7+y^7"), ring("z^14-x^7")]))
    with pytest.raises(AlgebraError):
        frobenius_power(I, 6)


def test_macaulay_oracle_confirms_certificate_at_q7():
    # independent check of x^2 * z^14 ∈ (x^7, y^7, x^3+y^3+z^3) over F_7
    R, _, _ = fermat()
    ring = R.ring
    gens = [ring("x^7").terms, ring("y^7").terms, ring("x^3+y^3+z^3").terms]
    oracle = MacaulayOracle(gens, 3, 7)
    assert oracle.member(ring("x^2*z^14").terms, 16, 17) is not None


def test_certify_fermat_cubic():
    R, comp, I = fermat()
    ring = R.ring
    v = tc_certify_in(R, ring("z^2"), I, ring("x^2"), CharPContext(7, 2), comp)
    assert v.status == CERTIFIED
    assert [e for e, _ in v.evidence] == [0, 1, 2]
    assert v.bound_e == 2
    assert not I.contains(ring("z^2"))
    assert str(I.reduce(ring("z^2"))) == "z^2"


def test_failed_certificate_is_only_undetermined():
    R, comp, I = fermat()
    ring = R.ring
    v = tc_certify_in(R, ring("z"), I, ring("x^2"), CharPContext(7, 2), comp)
    assert v.status == UNDETERMINED
    assert "e=1" in v.caveats[0]


def test_multiplier_must_lie_in_r_circ():
    R, comp, I = fermat()
    ring = R.ring
    with pytest.raises(DomainError):
        tc_certify_in(R, ring("z^2"), I, ring("x^3+y^3+z^3"), CharPContext(7, 1), comp)
    with pytest.raises(DomainError):
        tc_certify_in(R, ring("z^2"), I, ring("0"), CharPContext(7, 1), comp)


def test_char_zero_is_refused():
    R = PresentedAlgebra.from_strings(0, "xy", ["x*y"])
    with pytest.raises(DomainError):
        tc_refute_in(R, R.ring("1"), Ideal(R.ring, [R.ring("x")]), components_of(R))
    with pytest.raises(AlgebraError):
        CharPContext(6)


def test_refute_with_jacobian_witness():
    R, comp, I = fermat()
    ring = R.ring
    v = tc_refute_in(R, ring("1"), I, comp)
    assert v.status == REFUTED
    assert v.evidence == [(None, "z^2")]
    # z^2 itself survives every Jacobian multiplier
    assert tc_refute_in(R, ring("z^2"), I, comp).status == UNDETERMINED
    assert [str(d) for d in jacobian_multipliers(R, comp)] == ["x^2", "y^2", "z^2"]


def test_refutation_needs_reducedness_and_equiheight():
    R = PresentedAlgebra.from_strings(7, "xyz", ["x^3+y^3+z^3"])
    comp = components_of(R, [R.defining_ideal])
    v = tc_refute_in(R, R.ring("1"), Ideal(R.ring, [R.ring("x"), R.ring("y")]), comp)
    assert v.status == UNDETERMINED
    assert "reducedness" in v.caveats[0]
    cross = PresentedAlgebra.from_strings(7, "xyz", ["x*z", "y*z"])
    v = tc_refute_in(cross, cross.ring("1"), Ideal(cross.ring, [cross.ring("x")]), components_of(cross))
    assert v.status == UNDETERMINED and "equiheight" in v.caveats[0]


def test_frobenius_closure():
    R = PresentedAlgebra.from_strings(7, "xy", ["y^2"])
    I = Ideal(R.ring, [R.ring("x")])
    v = frobenius_closure_member(R, R.ring("y"), I, CharPContext(7, 2))
    assert v.status == CERTIFIED and v.evidence[0][0] == 1
    R, _, I = fermat()
    assert frobenius_closure_member(R, R.ring("z^2"), I, CharPContext(7, 1)).status == UNDETERMINED


def test_exponent_guard_keeps_verdict_undetermined():
    p = 2**31 - 1
    R = PresentedAlgebra.from_strings(p, "xy", ["x*y"])
    I = Ideal(R.ring, [R.ring("x+y")])
    v = tc_certify_in(R, R.ring("x"), I, R.ring("x+y"), CharPContext(p, 2), components_of(R))
    assert v.status == UNDETERMINED
    assert any("overflow" in c for c in v.caveats)


@pytest.mark.parametrize("inst", HARNESS_SUITE, ids=lambda i: i.name)
def test_harness_passes_on_bundled_instances(inst):
    rf = inst.ring_file()
    R = rf.algebra()
    comp = components_of(R, rf.component_ideals() or None)
    I = rf.named_ideal(inst.ideal)
    report = run_harness(R, I, list(inst.candidates), CharPContext(R.char, inst.e_max), comp)
    assert report.status == "PASS"
    assert any(r.verdict.status == CERTIFIED for r in report.rows)
    for row in report.rows:
        if row.verdict.status == CERTIFIED:
            assert all(ok for _, ok in row.products)


def test_harness_refuses_outside_hypotheses():
    cross = PresentedAlgebra.from_strings(7, "xyz", ["x*z", "y*z"])
    report = run_harness(cross, Ideal(cross.ring, [cross.ring("x")]), ["x"], CharPContext(7, 1), components_of(cross))
    assert report.status == "REFUSED"


def test_truncation_cases():
    expected = [
        [True, True, True, True],
        [True, False, False, False],
        [True, True, True, True],
    ]
    for (text, delta, u, I, m, n_max), want in zip(TRUNCATION_CASES, expected):
        R = PresentedAlgebra.from_strings(7, "xyz", [text.split("ideal ")[1].rstrip(";")])
        ring = R.ring
        rep = krull_truncation_check(
            ring(delta), ring(u), Ideal(ring, [ring(g) for g in I]), Ideal(ring, [ring(g) for g in m]), n_max, R
        )
        assert [ok for _, ok in rep.rows] == want
        assert rep.monotone


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 3))
def test_truncation_predicate_is_monotone(a, b, c):
    ring = PolyRing(5, "xyz")
    u = ring.monomial((a, b, c))
    I = Ideal(ring, [ring("x^2"), ring("y*z")])
    m = Ideal(ring, ring.gens())
    rep = krull_truncation_check(ring("1"), u, I, m, 5)
    assert rep.monotone
    if I.contains(u):
        assert rep.holds_through


def test_truncate_presentation():
    R = PresentedAlgebra.from_strings(7, "xyz", ["x^3+y^3+z^3", "x*y - z^4"])
    T = truncate_presentation(R, 3)
    assert [str(g) for g in T.defining_ideal.generators] == ["x^3+y^3+z^3", "x*y"]
    with pytest.raises(AlgebraError):
        truncate_presentation(R, 0)
    with pytest.raises(AlgebraError):
        truncate_presentation(R, 2, Ideal(R.ring, [R.ring("x+y")]))
    # grading only in x and y: z^4 has degree 0 there and stays
    T = truncate_presentation(R, 1, Ideal(R.ring, [R.ring("x"), R.ring("y")]))
    assert [str(g) for g in T.defining_ideal.generators] == ["z^3", "-z^4"]


def test_truncate_in_a_subset_of_variables():
    # x-degree at most 1: x^2 is dropped and x^2 ∈ (x)^2
    R = PresentedAlgebra.from_strings(7, "xy", ["x^2 + y"])
    T = truncate_presentation(R, 1, Ideal(R.ring, [R.ring("x")]))
    assert [str(g) for g in T.defining_ideal.generators] == ["y"]
