"""Division algorithm, Buchberger's algorithm and ideal membership.

Pairs are processed with the normal selection strategy (smallest lcm
first) and pruned with the Gebauer-Moeller installation of Buchberger's
coprime and chain criteria. Output bases are reduced, monic, and sorted by
leading monomial, largest first.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from .errors import AlgebraError, RingMismatchError, ZeroPolynomialError
from .field import PrimeField
from .poly import (
    MonomialOrder,
    Polynomial,
    PolyRing,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class _Elt:
    """A monic basis element in raw form: leading monomial plus tail terms."""

    __slots__ = ("lm", "tail", "terms")

    def __init__(self, lm, terms):
        self.lm = lm
        self.terms = terms
        self.tail = [(m, c) for m, c in terms.items() if m != lm]


def _reduce(terms: dict, basis: Sequence[_Elt], key, F) -> dict:
    """Full reduction of ``terms`` by the monic ``basis``; returns the remainder."""
    p = F.p if isinstance(F, PrimeField) else 0
    work = dict(terms)
    heap = [(tuple([-k for k in key(m)]), m) for m in work]
    heapq.heapify(heap)
    rem = {}
    lms = [b.lm for b in basis]
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m)
        if not c:
            continue
        for idx, lm in enumerate(lms):
            if all(a <= b for a, b in zip(lm, m)):
                break
        else:
            rem[m] = c
            continue
        q = tuple([a - b for a, b in zip(m, lm)])
        for gm, gc in basis[idx].tail:
            mm = tuple([a + b for a, b in zip(gm, q)])
            old = work.get(mm)
            if old is None:
                v = -c * gc
                work[mm] = v % p if p else v
                heapq.heappush(heap, (tuple([-k for k in key(mm)]), mm))
            else:
                v = old - c * gc
                work[mm] = v % p if p else v
    return rem


def _monic(terms: dict, key, F) -> tuple:
    lm = max(terms, key=key)
    inv = F.inv(terms[lm])
    return lm, {m: F.mul(c, inv) for m, c in terms.items()}


def _spoly(a: _Elt, b: _Elt, F) -> dict:
    lcm = mono_lcm(a.lm, b.lm)
    qa = mono_div(lcm, a.lm)
    qb = mono_div(lcm, b.lm)
    out = {}
    for m, c in a.tail:
        out[mono_mul(m, qa)] = c
    for m, c in b.tail:
        mm = mono_mul(m, qb)
        out[mm] = F.sub(out.get(mm, 0), c)
    return {m: c for m, c in out.items() if c}


def _update(G: list[int], B: list, h: int, elts: list[_Elt]):
    """Gebauer-Moeller update after adding basis element ``h``."""
    lh = elts[h].lm
    C = list(G)
    D = []
    lcm_h = {g: mono_lcm(lh, elts[g].lm) for g in C}
    while C:
        g1 = C.pop()
        l1 = lcm_h[g1]
        if mono_coprime(lh, elts[g1].lm):
            D.append(g1)
            continue
        dominated = any(mono_divides(lcm_h[g2], l1) for g2 in C) or any(
            mono_divides(lcm_h[g2], l1) for g2 in D
        )
        if not dominated:
            D.append(g1)
    E = [(g, h) for g in D if not mono_coprime(lh, elts[g].lm)]
    B_new = []
    for g1, g2, l12 in B:
        if (
            mono_divides(lh, l12)
            and mono_lcm(elts[g1].lm, lh) != l12
            and mono_lcm(elts[g2].lm, lh) != l12
        ):
            continue
        B_new.append((g1, g2, l12))
    for g, hh in E:
        B_new.append((g, hh, lcm_h[g]))
    G_new = [g for g in G if not mono_divides(lh, elts[g].lm)]
    G_new.append(h)
    return G_new, B_new


def _minimal_monomials(monos: Iterable[tuple]) -> list[tuple]:
    out = []
    for m in sorted(set(monos), key=sum):
        if not any(mono_divides(o, m) for o in out):
            out.append(m)
    return out


def _buchberger(polys: list[dict], key, F, nvars: int) -> list[dict]:
    polys = [t for t in polys if t]
    if not polys:
        return []
    one = (0,) * nvars
    if any(len(t) == 1 and one in t for t in polys):
        return [{one: F.coerce(1)}]
    if all(len(t) == 1 for t in polys):
        return [{m: F.coerce(1)} for m in _minimal_monomials(next(iter(t)) for t in polys)]

    elts: list[_Elt] = []
    G: list[int] = []
    B: list = []
    # feed generators smallest first so early elements reduce later ones
    for t in sorted(polys, key=lambda t: key(max(t, key=key))):
        t = _reduce(t, [elts[g] for g in G], key, F) if G else t
        if not t:
            continue
        lm, t = _monic(t, key, F)
        if not any(lm):
            return [{one: F.coerce(1)}]
        elts.append(_Elt(lm, t))
        G, B = _update(G, B, len(elts) - 1, elts)

    while B:
        best = min(range(len(B)), key=lambda i: (key(B[i][2]), B[i][0], B[i][1]))
        g1, g2, _ = B.pop(best)
        s = _spoly(elts[g1], elts[g2], F)
        if not s:
            continue
        h = _reduce(s, [elts[g] for g in G], key, F)
        if not h:
            continue
        lm, h = _monic(h, key, F)
        if not any(lm):
            return [{one: F.coerce(1)}]
        elts.append(_Elt(lm, h))
        G, B = _update(G, B, len(elts) - 1, elts)

    # G is already minimal; interreduce tails
    final = [elts[g] for g in G]
    out = []
    for i, e in enumerate(final):
        others = final[:i] + final[i + 1:]
        tail = _reduce(dict(e.tail), others, key, F) if e.tail else {}
        tail[e.lm] = F.coerce(1)
        out.append(tail)
    return out


class GroebnerBasis:
    """Reduced Groebner basis of an ideal for one monomial order."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, generators: list[Polynomial], source=None):
        self.ring = ring
        self.order = order
        key = order.key
        self.generators = sorted(
            generators, key=lambda g: key(g.leading_monomial(order)), reverse=True
        )
        self.source = source
        self._elts = [_Elt(g.leading_monomial(order), g.terms) for g in self.generators]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    @property
    def leading_monomials(self) -> list[tuple]:
        return [e.lm for e in self._elts]

    def is_unit(self) -> bool:
        return len(self._elts) == 1 and not any(self._elts[0].lm)

    def is_zero(self) -> bool:
        return not self._elts

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} vs {self.ring}")
        if not f.terms or not self._elts:
            return f
        return Polynomial(self.ring, _reduce(f.terms, self._elts, self.order.key, self.ring.field))

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f).terms

    def strings(self) -> list[str]:
        return [self.ring.format(g, self.order) for g in self.generators]

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.order == other.order
            and [g.terms for g in self.generators] == [g.terms for g in other.generators]
        )

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(self.strings())}], order={self.order.name})"


class Ideal:
    """Finitely generated ideal with a per-order cache of reduced bases."""

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        gens = []
        for g in generators:
            g = ring(g)
            gens.append(g)
        self.ring = ring
        self.generators = tuple(gens) if gens else (ring.zero(),)
        self._gb: dict[MonomialOrder, GroebnerBasis] = {}

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [])

    @property
    def nonzero_generators(self) -> list[Polynomial]:
        return [g for g in self.generators if g.terms]

    def groebner(self, order: MonomialOrder | str | None = None) -> GroebnerBasis:
        if order is None:
            order = self.ring.order
        elif isinstance(order, str):
            order = MonomialOrder.from_name(order, self.ring.nvars)
        gb = self._gb.get(order)
        if gb is None:
            gb = groebner_basis(self, order)
            # insert-once: a concurrent writer computed an identical basis
            gb = self._gb.setdefault(order, gb)
        return gb

    def contains(self, f) -> bool:
        return self.groebner().contains(self.ring(f))

    __contains__ = contains

    def reduce(self, f) -> Polynomial:
        return self.groebner().reduce(self.ring(f))

    def is_zero(self) -> bool:
        return not self.nonzero_generators

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_monomial(self) -> bool:
        gens = self.nonzero_generators
        if all(g.is_monomial() for g in gens):
            return True
        return all(g.is_monomial() for g in self.groebner())

    def issubset(self, other: "Ideal") -> bool:
        self._check(other)
        gb = other.groebner()
        return all(gb.contains(g) for g in self.nonzero_generators)

    def equals(self, other: "Ideal") -> bool:
        self._check(other)
        order = self.ring.order
        return self.groebner(order) == other.groebner(order)

    def _check(self, other: "Ideal") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal(self.ring, self.nonzero_generators + other.nonzero_generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal(self.ring, [f * g for f in self.nonzero_generators for g in other.nonzero_generators])

    def canonical(self, order: MonomialOrder | None = None) -> list[str]:
        """Sorted string forms of the reduced basis; stable across runs."""
        return sorted(self.groebner(order).strings())

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"


def normal_form(f: Polynomial, G: GroebnerBasis, order: MonomialOrder | None = None) -> Polynomial:
    if order is not None and order != G.order:
        raise AlgebraError(f"order mismatch: {order.name} vs basis order {G.order.name}")
    return G.reduce(f)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    if f.ring != g.ring:
        raise RingMismatchError(f"{f.ring} vs {g.ring}")
    if not f.terms or not g.terms:
        raise ZeroPolynomialError("S-polynomial of a zero polynomial")
    order = order or f.ring.order
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    F = f.ring.field
    lcm = mono_lcm(mf, mg)
    a = f.mul_term(mono_div(lcm, mf), F.inv(cf))
    b = g.mul_term(mono_div(lcm, mg), F.inv(cg))
    return a - b


def groebner_basis(I: Ideal, order: MonomialOrder | None = None) -> GroebnerBasis:
    ring = I.ring
    order = order or ring.order
    raw = _buchberger([g.terms for g in I.generators], order.key, ring.field, ring.nvars)
    gens = [Polynomial(ring, t) for t in raw]
    return GroebnerBasis(ring, order, gens, source=id(I))


def ideal_member(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)
