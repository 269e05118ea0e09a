"""Krull dimension, heights and minimal primes for quotients of polynomial rings.

Dimensions come from the initial ideal: ``dim T/I = dim T/in(I)``, and the
latter is ``n`` minus the smallest variable set meeting the support of every
leading monomial. Minimal primes are computed only for monomial ideals;
other decompositions are supplied by the user and machine-checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import AlgebraError, DomainError, VerificationError
from .groebner import Ideal
from .ideal_ops import intersect_all, radical_member
from .poly import Polynomial, PolyRing

DERIVED = "derived-monomial"
USER = "user-supplied"


@dataclass
class PresentedAlgebra:
    """``R = T/I`` with ``T = K[vars]``; flags are recorded user assertions."""

    ring: PolyRing
    defining_ideal: Ideal
    flags: frozenset = frozenset()

    KNOWN_FLAGS = ("assume_equidimensional", "assume_reduced")

    def __post_init__(self):
        unknown = set(self.flags) - set(self.KNOWN_FLAGS)
        if unknown:
            raise AlgebraError(f"unknown flags {sorted(unknown)}")
        self.flags = frozenset(self.flags)
        if self.defining_ideal.ring != self.ring:
            raise AlgebraError("defining ideal lives in a different ring")

    @classmethod
    def from_strings(cls, characteristic: int, names, generators: Iterable[str], flags=(), order="grevlex"):
        ring = PolyRing(characteristic, names, order)
        return cls(ring, Ideal(ring, [ring(g) for g in generators]), frozenset(flags))

    @property
    def char(self) -> int:
        return self.ring.characteristic

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def is_unit(self) -> bool:
        return self.defining_ideal.is_unit()

    def require_proper(self) -> None:
        if self.is_unit():
            raise DomainError("defining ideal is the unit ideal; R is the zero ring")

    def is_zero_in_R(self, f: Polynomial) -> bool:
        return self.defining_ideal.contains(f)

    def lift(self, I: Ideal) -> Ideal:
        """Preimage in T of the extension of ``I`` to R."""
        return I + self.defining_ideal


@dataclass
class ComponentData:
    minimal_primes: list
    heights: list
    provenance: str = DERIVED
    failed_checks: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.minimal_primes) != len(self.heights):
            raise AlgebraError("one height per minimal prime is required")


@dataclass
class PrimeWitness:
    """A prime ideal of T; ``verified`` when generated by variables."""

    ideal: Ideal
    verified: bool = False
    note: str = ""

    @classmethod
    def of(cls, ideal: Ideal) -> "PrimeWitness":
        gens = ideal.nonzero_generators
        if all(g.is_monomial() and g.degree() == 1 for g in gens):
            return cls(ideal, True, "generated by variables")
        return cls(ideal, False, "primality asserted by user")


def _minimal_transversals(edges: Sequence[frozenset]) -> list[frozenset]:
    """All inclusion-minimal vertex sets meeting every edge."""
    edges = sorted(set(edges), key=lambda e: (len(e), sorted(e)))
    # drop edges containing another edge; they are hit automatically
    kept = []
    for e in edges:
        if not any(k <= e for k in kept):
            kept.append(e)
    found: set[frozenset] = set()

    def grow(chosen: frozenset, i: int):
        while i < len(kept) and kept[i] & chosen:
            i += 1
        if i == len(kept):
            found.add(chosen)
            return
        for v in sorted(kept[i]):
            grow(chosen | {v}, i + 1)

    grow(frozenset(), 0)
    minimal = []
    for s in sorted(found, key=lambda s: (len(s), sorted(s))):
        if not any(m <= s for m in minimal):
            minimal.append(s)
    return minimal


def _supports(monos: Iterable[tuple]) -> list[frozenset]:
    return [frozenset(i for i, e in enumerate(m) if e) for m in monos]


def _var_prime(ring: PolyRing, indices) -> Ideal:
    return Ideal(ring, [ring.var(i) for i in sorted(indices)])


def initial_dimension(I: Ideal) -> int:
    """``dim T/I`` for a proper ideal, via independent sets of ``in(I)``."""
    ring = I.ring
    if I.is_zero():
        return ring.nvars
    gb = I.groebner()
    if gb.is_unit():
        raise DomainError("unit ideal has no dimension")
    covers = _minimal_transversals(_supports(gb.leading_monomials))
    return ring.nvars - min(len(c) for c in covers)


def krull_dim(R: PresentedAlgebra) -> int:
    R.require_proper()
    return initial_dimension(R.defining_ideal)


def height(I: Ideal) -> int:
    """Height in the polynomial ring: ``n - dim T/I``; 0 for the zero ideal."""
    if I.is_zero():
        return 0
    if I.is_unit():
        raise DomainError("unit ideal has no height")
    return I.ring.nvars - initial_dimension(I)


def _monomial_gens(I: Ideal) -> list[tuple]:
    gens = I.nonzero_generators
    if all(g.is_monomial() for g in gens):
        return [next(iter(g.terms)) for g in gens]
    gb = I.groebner()
    if all(g.is_monomial() for g in gb):
        return list(gb.leading_monomials)
    raise AlgebraError("ideal is not monomial; supply its minimal primes")


def monomial_min_primes(I: Ideal) -> ComponentData:
    """Minimal primes of a monomial ideal as minimal vertex covers of the supports."""
    monos = _monomial_gens(I)
    ring = I.ring
    if not monos:
        return ComponentData([Ideal.zero(ring)], [0], DERIVED)
    if any(not any(m) for m in monos):
        raise DomainError("unit ideal has no minimal primes")
    covers = _minimal_transversals(_supports(monos))
    covers.sort(key=lambda c: (len(c), sorted(c)))
    return ComponentData([_var_prime(ring, c) for c in covers], [len(c) for c in covers], DERIVED)


def verify_components(I: Ideal, claimed: Sequence[Ideal]) -> ComponentData:
    """Machine-check a claimed list of minimal primes of ``I``.

    Checks: (a) ``I ⊆ P`` for every claimed P; (b) the intersection of the
    claims lies in the radical of ``I``; (c) no claim contains another.
    Primality itself stays a user assertion.
    """
    claimed = list(claimed)
    if not claimed:
        raise VerificationError("no components supplied", ["(b) empty component list"])
    failed = []
    for i, P in enumerate(claimed):
        I._check(P)
        if not I.issubset(P):
            failed.append(f"(a) I is not contained in component {i}")
    if not failed:
        cap = intersect_all(claimed)
        for g in cap.nonzero_generators:
            if not radical_member(g, I):
                failed.append(f"(b) {g} lies in every component but not in the radical of I")
                break
    for i, P in enumerate(claimed):
        for j, Q in enumerate(claimed):
            if i != j and Q.issubset(P):
                if P.issubset(Q) and i > j:
                    failed.append(f"(c) components {j} and {i} coincide")
                elif not P.issubset(Q):
                    failed.append(f"(c) component {i} contains component {j}")
    if failed:
        raise VerificationError("component verification failed: " + "; ".join(failed), failed)
    heights = [height(P) for P in claimed]
    return ComponentData(claimed, heights, USER)


def components_of(R: PresentedAlgebra, claimed: Sequence[Ideal] | None = None) -> ComponentData:
    """Derived components for monomial ideals, verified ones otherwise."""
    R.require_proper()
    if claimed:
        return verify_components(R.defining_ideal, claimed)
    if R.defining_ideal.is_monomial():
        return monomial_min_primes(R.defining_ideal)
    raise AlgebraError("defining ideal is not monomial; supply its minimal primes")


def big_height(I: Ideal, components: ComponentData | None = None) -> int:
    if components is None:
        components = monomial_min_primes(I)
    return max(components.heights)


def is_equiheight(R: PresentedAlgebra, components: ComponentData | None) -> bool:
    if components is None:
        raise AlgebraError("components are required for the equiheight test")
    return len(set(components.heights)) == 1


def local_height(components: ComponentData, q: Ideal) -> int:
    """``ht_Q(I)``: least height of a component contained in ``q``."""
    inside = [h for P, h in zip(components.minimal_primes, components.heights) if P.issubset(q)]
    if not inside:
        raise DomainError("no minimal prime of the defining ideal lies in the given prime")
    return min(inside)


def is_squarefree_monomial(I: Ideal) -> bool:
    try:
        monos = _monomial_gens(I)
    except AlgebraError:
        return False
    return all(e <= 1 for m in monos for e in m)
