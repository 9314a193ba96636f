"""Extended naturals and certified bound intervals.

Quantities tracked by the engine are integers in N union {infinity}.  An
Interval [lo, hi] certifies lo <= q <= hi for one quantity q.  The arithmetic
conventions are fixed here once: inf + n = inf, inf * n = inf for n >= 1, and
the shifted ceiling division used by the product-form inequalities maps
(inf, finite) to inf and (anything, inf) to 0.
"""

from __future__ import annotations

from dataclasses import dataclass


class EmptyIntervalError(ValueError):
    """Meet of two intervals became empty (lo > hi)."""


@dataclass(frozen=True, order=False)
class ExtNat:
    """A natural number, or infinity encoded as value None."""

    value: int | None = None

    def __post_init__(self):
        if self.value is not None and self.value < 0:
            raise ValueError(f"extended natural must be >= 0, got {self.value}")

    @property
    def is_inf(self) -> bool:
        return self.value is None

    def __le__(self, other: "ExtNat") -> bool:
        if self.is_inf:
            return other.is_inf
        if other.is_inf:
            return True
        return self.value <= other.value

    def __lt__(self, other: "ExtNat") -> bool:
        return self <= other and self != other

    def __ge__(self, other: "ExtNat") -> bool:
        return other <= self

    def __gt__(self, other: "ExtNat") -> bool:
        return other < self

    def __add__(self, other: "ExtNat") -> "ExtNat":
        if self.is_inf or other.is_inf:
            return INF
        return ExtNat(self.value + other.value)

    def saturating_sub(self, other: "ExtNat") -> "ExtNat":
        """max(0, self - other); anything minus inf is 0, inf minus finite is inf."""
        if other.is_inf:
            return ZERO
        if self.is_inf:
            return INF
        return ExtNat(max(0, self.value - other.value))

    def __str__(self) -> str:
        return "inf" if self.is_inf else str(self.value)

    __repr__ = __str__

    def to_json(self):
        return "inf" if self.is_inf else self.value

    @staticmethod
    def from_json(value) -> "ExtNat":
        if value == "inf":
            return INF
        return ExtNat(int(value))


INF = ExtNat(None)
ZERO = ExtNat(0)
ONE = ExtNat(1)


def ext(value: int | None) -> ExtNat:
    return ExtNat(value)


def ext_max(a: ExtNat, b: ExtNat) -> ExtNat:
    return a if b <= a else b


def ext_min(a: ExtNat, b: ExtNat) -> ExtNat:
    return a if a <= b else b


def shifted_product(a: ExtNat, b: ExtNat) -> ExtNat:
    """(a+1)*(b+1) - 1.  Both shifted factors are >= 1, so inf absorbs."""
    if a.is_inf or b.is_inf:
        return INF
    return ExtNat((a.value + 1) * (b.value + 1) - 1)


def shifted_ceil_div(a: ExtNat, b: ExtNat) -> ExtNat:
    """ceil((a+1)/(b+1)) - 1.

    With a = inf and b finite the quotient is inf; with b = inf the bound
    degenerates to 0 (no information).
    """
    if b.is_inf:
        return ZERO
    if a.is_inf:
        return INF
    return ExtNat((a.value + b.value + 1) // (b.value + 1) - 1)


@dataclass(frozen=True)
class Interval:
    """Certified two-sided bound lo <= q <= hi over the extended naturals."""

    lo: ExtNat = ZERO
    hi: ExtNat = INF

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise EmptyIntervalError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def full() -> "Interval":
        return Interval(ZERO, INF)

    @staticmethod
    def exactly(n: int | None) -> "Interval":
        v = ExtNat(n)
        return Interval(v, v)

    @staticmethod
    def at_least(n: int | None) -> "Interval":
        return Interval(ExtNat(n), INF)

    @staticmethod
    def at_most(n: int | None) -> "Interval":
        return Interval(ZERO, ExtNat(n))

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def meet(self, other: "Interval") -> "Interval":
        lo = ext_max(self.lo, other.lo)
        hi = ext_min(self.hi, other.hi)
        if not lo <= hi:
            raise EmptyIntervalError(
                f"intervals [{self.lo}, {self.hi}] and [{other.lo}, {other.hi}] are disjoint")
        return Interval(lo, hi)

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    def to_json(self):
        return {"lo": self.lo.to_json(), "hi": self.hi.to_json()}

    @staticmethod
    def from_json(data) -> "Interval":
        return Interval(ExtNat.from_json(data["lo"]), ExtNat.from_json(data["hi"]))
