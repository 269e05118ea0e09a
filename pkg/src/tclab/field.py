"""Coefficient fields: prime fields F_p and the rationals."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import AlgebraError

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    """Deterministic trial division; callers keep ``n`` below 2**31."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    k = 5
    limit = isqrt(n)
    while k <= limit:
        if n % k == 0 or n % (k + 2) == 0:
            return False
        k += 6
    return True


class PrimeField:
    """The field Z/pZ with elements stored as ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool):
            raise AlgebraError(f"characteristic must be an integer, got {p!r}")
        if p >= MAX_PRIME:
            raise AlgebraError(f"characteristic {p} exceeds 2^31")
        if not is_prime(p):
            raise AlgebraError(f"characteristic {p} is not prime")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __str__(self):
        return f"F_{self.p}"

    def coerce(self, a) -> int:
        if isinstance(a, Fraction):
            if a.denominator % self.p == 0:
                raise ZeroDivisionError(f"{a} has no image in F_{self.p}")
            return a.numerator * pow(a.denominator, -1, self.p) % self.p
        return int(a) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        # Fermat inversion
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def signed(self, a: int) -> int:
        """Symmetric representative in (-p/2, p/2], used for printing."""
        return a - self.p if a > self.p // 2 else a

    def format(self, a: int) -> str:
        return str(self.signed(a))


class RationalField:
    """The field Q with elements stored as Fractions in lowest terms."""

    __slots__ = ()

    characteristic = 0

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "RationalField()"

    def __str__(self):
        return "Q"

    def coerce(self, a) -> Fraction:
        return Fraction(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return Fraction(a) / b

    def signed(self, a):
        return a

    def format(self, a) -> str:
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"


def field_for(characteristic: int):
    """``0`` gives Q, a prime gives F_p."""
    if characteristic == 0:
        return RationalField()
    return PrimeField(characteristic)
