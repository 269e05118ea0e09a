"""Elimination-based ideal operations.

Auxiliary variables live in extended rings under the reserved names
``@t`` and ``@w``; user variable names can never start with ``@``.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterable

from .errors import AlgebraError, ZeroPolynomialError
from .groebner import Ideal
from .poly import MonomialOrder, Polynomial, PolyRing


def _var_indices(ring: PolyRing, variables: Iterable) -> list[int]:
    out = []
    for v in variables:
        i = v if isinstance(v, int) else ring.index(v)
        if not 0 <= i < ring.nvars:
            raise AlgebraError(f"variable index {i} out of range")
        if i not in out:
            out.append(i)
    return sorted(out)


def eliminate(I: Ideal, drop_vars: Iterable) -> Ideal:
    """Generators of ``I`` intersected with the subring of the kept variables."""
    ring = I.ring
    drop = _var_indices(ring, drop_vars)
    if not drop:
        return Ideal(ring, I.groebner().generators or [ring.zero()])
    keep = [i for i in range(ring.nvars) if i not in drop]
    order = MonomialOrder("elim", ring.nvars, perm=drop + keep, block=len(drop))
    gb = I.groebner(order)
    dropped = set(drop)
    kept = [g for g in gb if not (g.support() & dropped)]
    return Ideal(ring, kept)


def _with_fresh(ring: PolyRing, name: str):
    """Ring with ``name`` prepended, plus the embedding index map."""
    big = PolyRing(ring.field, (name,) + ring.names, ring.order.kind if ring.order.kind != "elim" else "grevlex")
    return big, [i + 1 for i in range(ring.nvars)]


def _back(f: Polynomial, ring: PolyRing) -> Polynomial:
    terms = {}
    for m, c in f.terms.items():
        if m[0]:
            raise AlgebraError("auxiliary variable survived elimination")
        terms[m[1:]] = c
    return Polynomial(ring, terms)


def _eliminate_fresh(big: PolyRing, gens: list[Polynomial], ring: PolyRing) -> Ideal:
    J = eliminate(Ideal(big, gens), [0])
    return Ideal(ring, [_back(g, ring) for g in J.generators if g.terms])


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` as the elimination of t from t*I + (1-t)*J."""
    I._check(J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal.zero(ring)
    big, emb = _with_fresh(ring, "@t")
    t = big.var(0)
    gens = [t * g.map_to(big, emb) for g in I.nonzero_generators]
    gens += [(1 - t) * g.map_to(big, emb) for g in J.nonzero_generators]
    return _eliminate_fresh(big, gens, ring)


def intersect_all(ideals: list[Ideal]) -> Ideal:
    if not ideals:
        raise AlgebraError("intersection of no ideals")
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J)
    return out


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """``f / g`` when ``g`` divides ``f``; raises otherwise."""
    if not g.terms:
        raise ZeroPolynomialError("division by zero polynomial")
    order = f.ring.order
    mg, cg = g.leading_term(order)
    F = f.ring.field
    inv = F.inv(cg)
    quotient = {}
    rest = f
    while rest.terms:
        m, c = rest.leading_term(order)
        if not all(a >= b for a, b in zip(m, mg)):
            raise AlgebraError(f"{g} does not divide {f}")
        qm = tuple(a - b for a, b in zip(m, mg))
        qc = F.mul(c, inv)
        quotient[qm] = qc
        rest = rest - g.mul_term(qm, qc)
    return Polynomial(f.ring, quotient)


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """``(I : J) = {f : f*J ⊆ I}``, intersecting the per-generator quotients."""
    I._check(J)
    ring = I.ring
    gens = J.nonzero_generators
    if not gens:
        return Ideal.unit(ring)
    parts = []
    for g in gens:
        cap = intersect(I, Ideal(ring, [g]))
        parts.append(Ideal(ring, [divide_exact(h, g) for h in cap.nonzero_generators]))
    return intersect_all(parts)


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """``(I : f^∞)`` via I + (1 - w*f) with w eliminated."""
    ring = I.ring
    f = ring(f)
    if not f.terms:
        raise ZeroPolynomialError("cannot saturate by zero")
    big, emb = _with_fresh(ring, "@w")
    w = big.var(0)
    gens = [g.map_to(big, emb) for g in I.nonzero_generators]
    gens.append(1 - w * f.map_to(big, emb))
    return _eliminate_fresh(big, gens, ring)


def radical_member(f: Polynomial, I: Ideal) -> bool:
    """Rabinowitsch test: ``f ∈ √I`` iff 1 ∈ I + (1 - w*f)."""
    ring = I.ring
    f = ring(f)
    if not f.terms:
        return True
    big, emb = _with_fresh(ring, "@w")
    w = big.var(0)
    gens = [g.map_to(big, emb) for g in I.nonzero_generators]
    gens.append(1 - w * f.map_to(big, emb))
    return Ideal(big, gens).is_unit()


def ideal_power(I: Ideal, k: int) -> Ideal:
    if not isinstance(k, int) or k < 0:
        raise AlgebraError(f"ideal power needs a nonnegative integer, got {k!r}")
    if k == 0:
        return Ideal.unit(I.ring)
    gens = I.nonzero_generators
    if not gens:
        return Ideal.zero(I.ring)
    out = []
    for combo in combinations_with_replacement(range(len(gens)), k):
        p = I.ring.one()
        for i in combo:
            p = p * gens[i]
        out.append(p)
    return Ideal(I.ring, out)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return I + J


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return I * J


def variables_ideal(ring: PolyRing, names: Iterable | None = None) -> Ideal:
    """The ideal generated by the given variables (all by default)."""
    idx = range(ring.nvars) if names is None else _var_indices(ring, names)
    return Ideal(ring, [ring.var(i) for i in idx])
