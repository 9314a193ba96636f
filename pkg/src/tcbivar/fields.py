"""Exact coefficient fields: the rationals and the prime fields F_p.

Scalars are plain Fraction values over Q, and canonical residues (ints in
[0, p)) over F_p.  The field object owns the arithmetic so algebra code never
branches on the coefficient representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class CoefficientField:
    """The rationals (p is None) or the prime field F_p.

    Build through the classmethods; direct construction skips the primality
    check and is only meant for consistency-check tests.
    """

    p: int | None = None

    @classmethod
    def rationals(cls) -> "CoefficientField":
        return cls(None)

    @classmethod
    def prime_field(cls, p: int) -> "CoefficientField":
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return cls(p)

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    def is_valid(self) -> bool:
        return self.p is None or is_prime(self.p)

    def describe(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    # scalar arithmetic -----------------------------------------------------

    def coerce(self, x) -> Fraction | int:
        """Normalize an int or Fraction into this field's scalar representation."""
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    def scalar_str(self, a) -> str:
        return str(a)
