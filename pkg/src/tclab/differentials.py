"""Jacobian matrices, minors, Fitting ideals and the singular locus.

For ``R = T/I`` with ``I = (f_1..f_r)``, the module of differentials is
presented by the r x n Jacobian matrix, so the i-th Fitting ideal is the
ideal of (n-i)-minors. All ideals returned at the R level are preimages
in T, i.e. they contain the defining ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .dimension import (
    ComponentData,
    PresentedAlgebra,
    PrimeWitness,
    big_height,
    is_equiheight,
    local_height,
    monomial_min_primes,
)
from .errors import AlgebraError, DomainError
from .groebner import Ideal
from .ideal_ops import intersect_all
from .poly import Polynomial, PolyRing

SMOOTHNESS_CAVEAT = "smoothness criterion (perfect base): regularity read via the Jacobian criterion in characteristic p"


@dataclass
class PolyMatrix:
    ring: PolyRing
    entries: list  # rows of Polynomial
    row_labels: list | None = None
    col_labels: list | None = None

    def __post_init__(self):
        if self.row_labels is None:
            self.row_labels = [f"r{i}" for i in range(len(self.entries))]
        if self.col_labels is None:
            self.col_labels = [f"c{j}" for j in range(len(self.entries[0]) if self.entries else 0)]
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise AlgebraError("matrix rows have different lengths")
        if self.entries and len(self.entries[0]) != len(self.col_labels):
            raise AlgebraError("column labels do not match the matrix width")
        if len(self.entries) != len(self.row_labels):
            raise AlgebraError("row labels do not match the matrix height")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.col_labels)

    def strings(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.entries]

    def is_zero(self) -> bool:
        return all(not e.terms for row in self.entries for e in row)


@dataclass
class FittingResult:
    index: int
    ideal: Ideal
    matrix_shape: tuple
    convention: str = ""  # "unit", "zero" or "" when minors were taken


def jacobian_matrix(R: PresentedAlgebra) -> PolyMatrix:
    ring = R.ring
    gens = R.defining_ideal.nonzero_generators
    rows = [[f.derivative(j) for j in range(ring.nvars)] for f in gens]
    return PolyMatrix(ring, rows, [str(f) for f in gens], list(ring.names))


def _determinants(M: PolyMatrix, r: int) -> list[Polynomial]:
    """All r x r minors by cofactor expansion, memoized on (rows, cols)."""
    ring = M.ring
    memo: dict = {}

    def det(rows: tuple, cols: tuple) -> Polynomial:
        if not rows:
            return ring.one()
        hit = memo.get((rows, cols))
        if hit is not None:
            return hit
        top = M.entries[rows[0]]
        total = ring.zero()
        for k, c in enumerate(cols):
            a = top[c]
            if not a.terms:
                continue
            sub = det(rows[1:], cols[:k] + cols[k + 1:])
            if not sub.terms:
                continue
            term = a * sub
            total = total - term if k % 2 else total + term
        memo[(rows, cols)] = total
        return total

    nrows, ncols = M.shape
    return [
        det(rows, cols)
        for rows in combinations(range(nrows), r)
        for cols in combinations(range(ncols), r)
    ]


def minors(M: PolyMatrix, r: int) -> Ideal:
    """Ideal of r x r minors; ``r = 0`` gives the unit ideal."""
    if r < 0:
        raise AlgebraError(f"minor size must be nonnegative, got {r}")
    if r == 0:
        return Ideal.unit(M.ring)
    if r > min(M.shape):
        return Ideal.zero(M.ring)
    return Ideal(M.ring, [d for d in _determinants(M, r) if d.terms])


def fitting_ideal(M: PolyMatrix, i: int, modulo: Ideal | None = None) -> FittingResult:
    """i-th Fitting ideal of the module presented by ``M`` (columns = generators).

    Size ``n - i <= 0`` gives the whole ring, size above ``min(n, m)`` the zero
    ideal. With ``modulo`` the result is lifted to the preimage in T.
    """
    nrows, n = M.shape
    size = n - i
    if size <= 0:
        ideal, conv = Ideal.unit(M.ring), "unit"
    elif size > min(n, nrows):
        ideal, conv = Ideal.zero(M.ring), "zero"
    else:
        ideal, conv = minors(M, size), ""
    if modulo is not None:
        ideal = ideal + modulo
    return FittingResult(i, ideal, (nrows, n), conv)


def jacobian_fitting(R: PresentedAlgebra, i: int) -> FittingResult:
    return fitting_ideal(jacobian_matrix(R), i, R.defining_ideal)


def fitting_chain(R: PresentedAlgebra) -> list[FittingResult]:
    """``J_0, ..., J_n``; the last one is always the unit ideal."""
    M = jacobian_matrix(R)
    return [fitting_ideal(M, i, R.defining_ideal) for i in range(R.nvars + 1)]


def jacobian_ideal(R: PresentedAlgebra, components: ComponentData | None = None) -> Ideal:
    """``J_{n - bight(I)}``: the ideal of bight-size minors, lifted to T."""
    R.require_proper()
    h = big_height(R.defining_ideal, components)
    return minors(jacobian_matrix(R), h) + R.defining_ideal


def rank_at_prime(M: PolyMatrix, q: PrimeWitness | Ideal) -> int:
    """Largest r with some r-minor outside ``q``."""
    ideal = q.ideal if isinstance(q, PrimeWitness) else q
    if ideal.is_unit():
        raise DomainError("the prime must be a proper ideal")
    gb = ideal.groebner()
    rank = 0
    for r in range(1, min(M.shape) + 1):
        # if every r-minor lies in q, so do all larger minors
        if all(gb.contains(d) for d in _determinants(M, r)):
            break
        rank = r
    return rank


def regular_at(
    R: PresentedAlgebra,
    q: PrimeWitness | Ideal,
    components: ComponentData | None = None,
    char_p_ok: bool = False,
) -> bool:
    """Jacobian criterion: R is regular at q iff ``J_{n - ht_Q(I)} ⊄ q``.

    In characteristic p this reads smoothness over the perfect base field;
    callers must opt in with ``char_p_ok`` and report the caveat.
    """
    R.require_proper()
    if R.char and not char_p_ok:
        raise DomainError("characteristic p: pass char_p_ok to accept the smoothness reading")
    ideal = q.ideal if isinstance(q, PrimeWitness) else q
    if not R.defining_ideal.issubset(ideal):
        raise DomainError("the prime does not contain the defining ideal")
    if components is None:
        components = monomial_min_primes(R.defining_ideal)
    h = local_height(components, ideal)
    gb = ideal.groebner()
    return any(not gb.contains(d) for d in minors(jacobian_matrix(R), h).nonzero_generators)


def singular_locus(R: PresentedAlgebra, components: ComponentData | None = None) -> Ideal:
    """Ideal whose zero set is Sing(R), lifted to T."""
    R.require_proper()
    if components is None:
        components = monomial_min_primes(R.defining_ideal)
    if is_equiheight(R, components):
        return jacobian_ideal(R, components)
    M = jacobian_matrix(R)
    parts = [
        minors(M, h) + P + R.defining_ideal
        for P, h in zip(components.minimal_primes, components.heights)
    ]
    return intersect_all(parts)


def caveats_for(R: PresentedAlgebra) -> list[str]:
    return [SMOOTHNESS_CAVEAT] if R.char else []
