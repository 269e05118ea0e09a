"""Monomials, monomial orders, polynomial rings and sparse polynomials.

Monomials are dense exponent tuples of the ring's arity. A polynomial is
a dict ``{exponent tuple: nonzero coefficient}`` wrapped together with its
ring; instances are treated as immutable once built.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import (
    AlgebraError,
    ExponentOverflowError,
    RingMismatchError,
    ZeroPolynomialError,
)
from .field import PrimeField, RationalField, field_for

MAX_EXPONENT = 2**31 - 1

Monomial = tuple  # tuple[int, ...]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _check_exponents(exps: Iterable[int]) -> None:
    for e in exps:
        if e > MAX_EXPONENT:
            raise ExponentOverflowError(f"exponent {e} exceeds {MAX_EXPONENT}")


class MonomialOrder:
    """A monomial order: ``lex``, ``grevlex`` or ``elim`` (block order).

    ``perm`` lists variable indices from most to least significant; the
    default is declaration order. For ``elim`` the first ``block`` entries
    of ``perm`` form the block to eliminate, each block compared by grevlex.
    """

    KINDS = ("lex", "grevlex", "elim")

    def __init__(self, kind: str, nvars: int, perm: Sequence[int] | None = None, block: int = 0):
        if kind not in self.KINDS:
            raise AlgebraError(f"unknown monomial order {kind!r}")
        perm = tuple(range(nvars)) if perm is None else tuple(perm)
        if sorted(perm) != list(range(nvars)):
            raise AlgebraError(f"{perm} is not a permutation of {nvars} variables")
        if kind == "elim" and not 0 <= block <= nvars:
            raise AlgebraError(f"block size {block} out of range")
        self.kind = kind
        self.nvars = nvars
        self.perm = perm
        self.block = block if kind == "elim" else 0
        self.key = self._make_key()

    def _make_key(self) -> Callable[[Monomial], tuple]:
        perm = self.perm
        identity = perm == tuple(range(self.nvars))
        if self.kind == "lex":
            if identity:
                return lambda e: e
            return lambda e: tuple(e[i] for i in perm)
        # keys are flat int tuples so callers can negate them elementwise
        if self.kind == "grevlex":
            rev = perm[::-1]
            return lambda e: (sum(e),) + tuple([-e[i] for i in rev])
        first, second = perm[: self.block][::-1], perm[self.block:][::-1]

        def elim_key(e):
            a = [-e[i] for i in first]
            b = [-e[i] for i in second]
            return (-sum(a), *a, -sum(b), *b)

        return elim_key

    @property
    def name(self) -> str:
        if self.kind == "elim":
            return f"elim({self.block})"
        return self.kind

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and (self.kind, self.nvars, self.perm, self.block)
            == (other.kind, other.nvars, other.perm, other.block)
        )

    def __hash__(self):
        return hash((self.kind, self.nvars, self.perm, self.block))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, {self.nvars}, perm={self.perm}, block={self.block})"

    @classmethod
    def from_name(cls, name: str, nvars: int) -> "MonomialOrder":
        """Parse ``lex``, ``grevlex`` or ``elim(k)`` / ``elim k``."""
        text = name.strip().lower()
        if text in ("lex", "grevlex"):
            return cls(text, nvars)
        if text.startswith("elim"):
            rest = text[4:].strip().strip("()").strip()
            if rest.isdigit():
                return cls("elim", nvars, block=int(rest))
        raise AlgebraError(f"unknown monomial order {name!r}")


class PolyRing:
    """``field[names]`` with a default monomial order."""

    def __init__(self, field, names: Sequence[str], order: str | MonomialOrder = "grevlex"):
        if isinstance(field, int):
            field = field_for(field)
        if not isinstance(field, (PrimeField, RationalField)):
            raise AlgebraError(f"unsupported coefficient field {field!r}")
        names = tuple(names)
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate variable names in {names}")
        self.field = field
        self.names = names
        self.nvars = len(names)
        if isinstance(order, str):
            order = MonomialOrder.from_name(order, self.nvars)
        if order.nvars != self.nvars:
            raise AlgebraError("monomial order arity does not match the ring")
        self.order = order
        self._zero_exp = (0,) * self.nvars

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def __eq__(self, other):
        # the default order is a presentation choice, not part of the ring
        return isinstance(other, PolyRing) and self.field == other.field and self.names == other.names

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyRing({self.field}, {list(self.names)}, order={self.order.name!r})"

    def with_order(self, order: str | MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.names, order)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AlgebraError(f"unknown variable {name!r}") from None

    # constructors

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        return Polynomial(self, {self._zero_exp: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise AlgebraError(f"monomial {exps} has wrong arity for {self.nvars} variables")
        if any(e < 0 for e in exps):
            raise AlgebraError(f"negative exponent in {exps}")
        _check_exponents(exps)
        c = self.field.coerce(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def var(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.field.coerce(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def from_terms(self, terms: dict) -> "Polynomial":
        coerce = self.field.coerce
        clean = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != self.nvars:
                raise AlgebraError(f"monomial {m} has wrong arity")
            c = coerce(c)
            if c:
                clean[m] = c
        return Polynomial(self, clean)

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatchError("polynomial belongs to a different ring")
            return value
        if isinstance(value, str):
            from .parse import parse_polynomial

            return parse_polynomial(value, self)
        if isinstance(value, (int, Fraction)):
            return self.constant(value)
        raise AlgebraError(f"cannot coerce {value!r} into {self}")

    # printing

    def format_monomial(self, exps: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, exps):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def format(self, f: "Polynomial", order: MonomialOrder | None = None) -> str:
        if not f.terms:
            return "0"
        order = order or self.order
        out = []
        for m in sorted(f.terms, key=order.key, reverse=True):
            c = self.field.signed(f.terms[m])
            neg = c < 0
            mag = -c if neg else c
            mono = self.format_monomial(m)
            if not mono:
                body = self.field.format(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{self.field.format(mag)}*{mono}"
            if out:
                out.append(("-" if neg else "+") + body)
            else:
                out.append(("-" if neg else "") + body)
        return "".join(out)

    def __str__(self):
        return f"{self.field}[{','.join(self.names)}]"


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # basic queries

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def support(self) -> set[int]:
        """Indices of the variables that occur."""
        out = set()
        for m in self.terms:
            out.update(i for i, e in enumerate(m) if e)
        return out

    def leading_term(self, order: MonomialOrder | None = None):
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        order = order or self.ring.order
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: MonomialOrder | None = None):
        return self.leading_term(order)[1]

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        _, lc = self.leading_term(order)
        return self.scale(self.ring.field.inv(lc))

    # arithmetic

    def _check(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = F.add(out.get(m, 0), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F.coerce(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: F.mul(a, c) for m, a in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        """Multiply by the single term ``c * x^mono``."""
        F = self.ring.field
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring, {mono_mul(m, mono): F.mul(a, c) for m, a in self.terms.items()}
        )

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero()
        n = self.ring.nvars
        top = [
            max(m[i] for m in self.terms) + max(m[i] for m in other.terms) for i in range(n)
        ]
        _check_exponents(top)
        F = self.ring.field
        out: dict = {}
        if isinstance(F, PrimeField):
            p = F.p
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(x + y for x, y in zip(m1, m2))
                    out[m] = (out.get(m, 0) + c1 * c2) % p
        else:
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(x + y for x, y in zip(m1, m2))
                    out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise AlgebraError(f"exponent must be a nonnegative integer, got {k!r}")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius(self, q: int) -> "Polynomial":
        """``self**q`` for ``q`` a power of the characteristic, by exponent scaling.

        Over F_p, ``(sum a_i m_i)^q = sum a_i m_i^q`` since ``a^p = a``.
        """
        p = self.ring.characteristic
        if p == 0:
            raise AlgebraError("Frobenius needs positive characteristic")
        if not is_power_of(q, p):
            raise AlgebraError(f"{q} is not a power of the characteristic {p}")
        top = [q * max((m[i] for m in self.terms), default=0) for i in range(self.ring.nvars)]
        _check_exponents(top)
        return Polynomial(self.ring, {tuple(q * e for e in m): c for m, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # calculus and grading

    def derivative(self, var) -> "Polynomial":
        i = var if isinstance(var, int) else self.ring.index(var)
        F = self.ring.field
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if not e:
                continue
            d = F.mul(c, F.coerce(e))
            if d:
                mm = list(m)
                mm[i] = e - 1
                out[tuple(mm)] = d
        return Polynomial(self.ring, out)

    def truncate(self, n: int) -> "Polynomial":
        """Sum of the terms of total degree at most ``n``."""
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if sum(m) <= n})

    def map_to(self, ring: PolyRing, index_map: Sequence[int]) -> "Polynomial":
        """Relabel into ``ring``: variable ``i`` of ``self`` becomes ``index_map[i]``."""
        out = {}
        for m, c in self.terms.items():
            mm = [0] * ring.nvars
            for i, e in enumerate(m):
                if e:
                    mm[index_map[i]] = e
            out[tuple(mm)] = ring.field.coerce(c)
        return Polynomial(ring, out)

    def __str__(self):
        return self.ring.format(self)

    def __repr__(self):
        return f"Polynomial({self.ring.format(self)!r})"


def is_power_of(q: int, p: int) -> bool:
    if q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def leading_term(f: Polynomial, order: MonomialOrder | None = None):
    """Return ``(monomial, coefficient)`` of the largest term."""
    return f.leading_term(order)


def normalize_monic(f: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    return f.monic(order)
