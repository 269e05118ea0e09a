"""Bounded tight-closure experiments in characteristic p.

Membership ``u ∈ I*`` quantifies over every ``q = p^e``, so nothing here
decides it. Certification checks ``c * u^q ∈ I^[q]`` for ``e <= e_max`` only;
refutation uses elements of the Jacobian ideal as test multipliers, which
is sound for reduced equidimensional algebras over a perfect field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .dimension import (
    DERIVED,
    ComponentData,
    PresentedAlgebra,
    is_equiheight,
    is_squarefree_monomial,
)
from .differentials import jacobian_ideal
from .errors import AlgebraError, DomainError, VerificationError
from .field import is_prime
from .groebner import Ideal
from .ideal_ops import ideal_power
from .poly import MAX_EXPONENT, Polynomial, is_power_of

CERTIFIED = "CertifiedIn"
REFUTED = "RefutedOut"
UNDETERMINED = "Undetermined"


@dataclass
class CharPContext:
    p: int
    e_max: int = 3

    def __post_init__(self):
        if not is_prime(self.p):
            raise AlgebraError(f"{self.p} is not prime")
        if self.e_max < 0:
            raise AlgebraError("e_max must be nonnegative")

    def q_values(self) -> list[int]:
        return [self.p**e for e in range(self.e_max + 1)]

    def fits(self, q: int, degree: int, extra: int = 0) -> bool:
        """Whether exponents up to ``q * degree + extra`` stay inside the machine word."""
        return q * max(degree, 1) + extra <= MAX_EXPONENT


@dataclass
class TcVerdict:
    status: str
    bound_e: int
    evidence: list = field(default_factory=list)  # (e or None, witness string)
    caveats: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "bound_e": self.bound_e,
            "evidence": [{"e": e, "witness": w} for e, w in self.evidence],
            "caveats": list(self.caveats),
        }


def frobenius_power(I: Ideal, q: int) -> Ideal:
    """Bracket power ``I^[q]``: generators raised to the q-th power."""
    p = I.ring.characteristic
    if p == 0:
        raise AlgebraError("Frobenius powers need positive characteristic")
    if not is_power_of(q, p):
        raise AlgebraError(f"{q} is not a power of the characteristic {p}")
    gens = I.nonzero_generators
    return Ideal(I.ring, [g.frobenius(q) for g in gens])


def _require_charp(R: PresentedAlgebra, ctx: CharPContext | None = None) -> None:
    if R.char == 0:
        raise DomainError("tight-closure tests need positive characteristic")
    if ctx is not None and ctx.p != R.char:
        raise AlgebraError(f"context prime {ctx.p} differs from the characteristic {R.char}")


class _BracketCache:
    """Reduced bases of ``I^[q] + I_def`` keyed by q."""

    def __init__(self, R: PresentedAlgebra, I: Ideal):
        self.R = R
        self.I = I
        self.cache: dict[int, Ideal] = {}

    def __call__(self, q: int) -> Ideal:
        J = self.cache.get(q)
        if J is None:
            J = frobenius_power(self.I, q) + self.R.defining_ideal
            self.cache[q] = J
        return J


def _frob_mod(R: PresentedAlgebra, u: Polynomial, q: int) -> Polynomial:
    """``u^q`` reduced modulo the defining ideal."""
    return R.defining_ideal.reduce(u.frobenius(q))


def _check_multiplier(R, c, components) -> str:
    if R.is_zero_in_R(c):
        raise DomainError(f"multiplier {c} is zero in R (not in R°)")
    if components is not None:
        for P in components.minimal_primes:
            if P.contains(c):
                raise DomainError(f"multiplier {c} lies in a minimal prime (not in R°)")
        return f"c outside every minimal prime ({components.provenance})"
    if "assume_reduced" in R.flags:
        return "c nonzero in R; nonzerodivisor by the assume_reduced flag"
    return "c nonzero in R; nonzerodivisor not established"


def tc_certify_in(
    R: PresentedAlgebra,
    u,
    I: Ideal,
    c,
    ctx: CharPContext,
    components: ComponentData | None = None,
    brackets: _BracketCache | None = None,
) -> TcVerdict:
    """Check ``c * u^q ∈ I^[q] + I_def`` for every ``q = p^e``, ``e <= e_max``."""
    _require_charp(R, ctx)
    ring = R.ring
    u, c = ring(u), ring(c)
    provenance = _check_multiplier(R, c, components)
    brackets = brackets or _BracketCache(R, I)
    degree = max(u.degree(), max((g.degree() for g in I.nonzero_generators), default=0))
    evidence = []
    caveats = [f"certified to bound e_max={ctx.e_max}", provenance]
    for e, q in enumerate(ctx.q_values()):
        if not ctx.fits(q, degree, c.degree()):
            caveats.append(f"e={e} skipped: exponent overflow guard")
            return TcVerdict(UNDETERMINED, ctx.e_max, evidence, caveats[1:])
        lhs = c * _frob_mod(R, u, q)
        if not brackets(q).contains(lhs):
            caveats = [f"c*u^q not in I^[q] at e={e}; a single multiplier failing is not a refutation", provenance]
            return TcVerdict(UNDETERMINED, ctx.e_max, evidence, caveats)
        evidence.append((e, f"c*u^{q} in I^[{q}]"))
    return TcVerdict(CERTIFIED, ctx.e_max, evidence, caveats)


def _hypotheses(R: PresentedAlgebra, components: ComponentData | None) -> list[str]:
    """Reasons the Jacobian-test-element theorem does not apply; empty if it does."""
    missing = []
    if components is None:
        return ["minimal primes unknown"]
    if not is_equiheight(R, components):
        missing.append("defining ideal is not equiheight")
    reduced = "assume_reduced" in R.flags or (
        components.provenance == DERIVED and is_squarefree_monomial(R.defining_ideal)
    )
    if not reduced:
        missing.append("reducedness not established (set assume_reduced)")
    if R.char == 0:
        missing.append("characteristic 0")
    return missing


def reduced_provenance(R: PresentedAlgebra) -> str:
    if "assume_reduced" in R.flags:
        return "reduced by user assertion"
    return "reduced: squarefree monomial defining ideal"


def jacobian_multipliers(R: PresentedAlgebra, components: ComponentData) -> list[Polynomial]:
    """Reduced basis of the Jacobian ideal (lifted to T) minus elements of I_def."""
    J = jacobian_ideal(R, components)
    return [d for d in J.groebner() if not R.is_zero_in_R(d)]


def _multipliers_outside(deltas: list, primes: Sequence[Ideal]) -> list:
    """Elements of the Jacobian ideal avoiding every minimal prime.

    Basis elements come first, then pairwise sums, then the sum of all of
    them; a basis element alone can sit inside a component (x for xy = 0).
    """
    pool = list(deltas)
    pool += [a + b for i, a in enumerate(deltas) for b in deltas[i + 1 :]]
    if len(deltas) > 2:
        pool.append(sum(deltas[1:], deltas[0]))
    return [d for d in pool if d and not any(P.contains(d) for P in primes)]


def tc_refute_in(R: PresentedAlgebra, u, I: Ideal, components: ComponentData | None) -> TcVerdict:
    """RefutedOut when some Jacobian multiplier d has ``d*u ∉ I`` in R."""
    _require_charp(R)
    u = R.ring(u)
    missing = _hypotheses(R, components)
    if missing:
        return TcVerdict(UNDETERMINED, 0, [], ["hypotheses not established: " + "; ".join(missing)])
    caveats = [reduced_provenance(R), "equiheight verified"]
    deltas = jacobian_multipliers(R, components)
    if not deltas:
        return TcVerdict(UNDETERMINED, 0, [], caveats + ["Jacobian ideal is zero in R"])
    target = R.lift(I)
    for d in deltas:
        if not target.contains(d * u):
            return TcVerdict(REFUTED, 0, [(None, str(d))], caveats)
    return TcVerdict(UNDETERMINED, 0, [], caveats + ["every Jacobian multiple of u lies in I"])


def frobenius_closure_member(R: PresentedAlgebra, u, I: Ideal, ctx: CharPContext) -> TcVerdict:
    """CertifiedIn once ``u^q ∈ I^[q] + I_def`` for some ``e <= e_max``."""
    _require_charp(R, ctx)
    u = R.ring(u)
    brackets = _BracketCache(R, I)
    degree = max(u.degree(), max((g.degree() for g in I.nonzero_generators), default=0))
    for e, q in enumerate(ctx.q_values()):
        if not ctx.fits(q, degree):
            return TcVerdict(UNDETERMINED, ctx.e_max, [], [f"e={e} skipped: exponent overflow guard"])
        if brackets(q).contains(_frob_mod(R, u, q)):
            return TcVerdict(CERTIFIED, ctx.e_max, [(e, f"u^{q} in I^[{q}]")], [])
    return TcVerdict(UNDETERMINED, ctx.e_max, [], [f"no e <= {ctx.e_max} with u^q in I^[q]"])


@dataclass
class HarnessRow:
    candidate: str
    verdict: TcVerdict
    multiplier: str | None = None
    products: list = field(default_factory=list)  # (delta, delta*u in I)
    violation: bool = False

    def to_dict(self) -> dict:
        return {
            "candidate": self.candidate,
            "verdict": self.verdict.to_dict(),
            "multiplier": self.multiplier,
            "products": [{"delta": d, "in_ideal": ok} for d, ok in self.products],
            "violation": self.violation,
        }


@dataclass
class HarnessReport:
    status: str  # PASS, FAIL or REFUSED
    rows: list = field(default_factory=list)
    reasons: list = field(default_factory=list)

    @property
    def violations(self) -> list:
        return [r for r in self.rows if r.violation]

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "rows": [r.to_dict() for r in self.rows],
            "reasons": list(self.reasons),
        }


def test_multiplier_harness(
    R: PresentedAlgebra,
    I: Ideal,
    candidates: Sequence,
    ctx: CharPContext,
    components: ComponentData | None,
) -> HarnessReport:
    """For every certified candidate u, check ``d*u ∈ I`` for all Jacobian multipliers d.

    A violation would contradict the Jacobian-test-element theorem, so it
    points at a bug in this package rather than at new mathematics.
    """
    missing = _hypotheses(R, components)
    if missing:
        return HarnessReport("REFUSED", [], missing)
    _require_charp(R, ctx)
    deltas = jacobian_multipliers(R, components)
    if not deltas:
        return HarnessReport("REFUSED", [], ["Jacobian ideal is zero in R"])
    eligible = _multipliers_outside(deltas, components.minimal_primes)
    target = R.lift(I)
    brackets = _BracketCache(R, I)
    rows = []
    for u in candidates:
        u = R.ring(u)
        verdict = TcVerdict(UNDETERMINED, ctx.e_max, [], ["no Jacobian multiplier outside the minimal primes"])
        used = None
        for c in eligible:
            verdict = tc_certify_in(R, u, I, c, ctx, components, brackets)
            if verdict.status == CERTIFIED:
                used = c
                break
        row = HarnessRow(str(u), verdict, str(used) if used is not None else None)
        if verdict.status == CERTIFIED:
            for d in deltas:
                ok = target.contains(d * u)
                row.products.append((str(d), ok))
                if not ok:
                    row.violation = True
        rows.append(row)
    status = "FAIL" if any(r.violation for r in rows) else "PASS"
    return HarnessReport(status, rows, [])


# keep pytest from collecting the harness as a test
test_multiplier_harness.__test__ = False


@dataclass
class TruncationReport:
    rows: list  # (N, member)
    holds_through: bool
    monotone: bool
    first_failure: int | None

    def to_dict(self) -> dict:
        return {
            "rows": [{"N": n, "member": ok} for n, ok in self.rows],
            "holds_through_n_max": self.holds_through,
            "monotone": self.monotone,
            "first_failure": self.first_failure,
        }


def krull_truncation_check(
    delta,
    u,
    I: Ideal,
    m: Ideal,
    n_max: int,
    algebra: PresentedAlgebra | None = None,
) -> TruncationReport:
    """Whether ``delta*u ∈ I + m^N`` (in R when ``algebra`` is given) for N = 1..n_max."""
    if not isinstance(n_max, int) or n_max < 1:
        raise AlgebraError("n_max must be a positive integer")
    ring = I.ring
    prod = ring(delta) * ring(u)
    base = I if algebra is None else algebra.lift(I)
    rows = []
    for N in range(1, n_max + 1):
        rows.append((N, (base + ideal_power(m, N)).contains(prod)))
    flags = [ok for _, ok in rows]
    first = next((n for n, ok in rows if not ok), None)
    monotone = all(not b or a for a, b in zip(flags, flags[1:]))
    return TruncationReport(rows, all(flags), monotone, first)


def _grading_vars(m: Ideal) -> list[int]:
    idx = []
    for g in m.nonzero_generators:
        if not (g.is_monomial() and g.degree() == 1):
            raise AlgebraError("the grading ideal must be generated by variables")
        idx.append(next(i for i, e in enumerate(next(iter(g.terms))) if e))
    return sorted(set(idx))


def truncate_presentation(R: PresentedAlgebra, N: int, m: Ideal | None = None) -> PresentedAlgebra:
    """Replace each generator by its part of degree <= N in the variables of ``m``.

    The dropped part is checked to lie in ``m^(N+1)``.
    """
    if not isinstance(N, int) or N < 1:
        raise AlgebraError("N must be a positive integer")
    ring = R.ring
    if m is None:
        m = Ideal(ring, ring.gens())
    idx = _grading_vars(m)
    high = ideal_power(m, N + 1)
    out = []
    for f in R.defining_ideal.nonzero_generators:
        low = Polynomial(ring, {mo: c for mo, c in f.terms.items() if sum(mo[i] for i in idx) <= N})
        if not high.contains(f - low):
            raise VerificationError(f"residual of {f} is not in m^{N + 1}", ["truncation residual"])
        out.append(low)
    return PresentedAlgebra(ring, Ideal(ring, out), frozenset())
