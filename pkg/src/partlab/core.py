"""Exact arithmetic building blocks and the part-system data model.

Integers are Python ints and rationals are :class:`fractions.Fraction`
throughout; nothing on a computation path ever touches a float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import SingularSeriesError, ValidationError

__all__ = [
    "PartSystem",
    "RationalPolynomial",
    "TruncatedPowerSeries",
    "make_part_system",
    "gcd_all_multisubsets",
    "series_reciprocal",
]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# Part systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartSystem:
    """A multiset of positive parts ``a_1 <= ... <= a_k``.

    Equal values sit at distinct positions and count as distinct colors.
    Build instances with :func:`make_part_system`, which sorts and validates.
    """

    parts: tuple[int, ...]
    _power_sums: dict = field(default_factory=dict, init=False, repr=False,
                              compare=False, hash=False)

    @property
    def k(self) -> int:
        return len(self.parts)

    @cached_property
    def D(self) -> int:
        return math.lcm(*self.parts)

    @cached_property
    def sigma(self) -> int:
        return sum(self.parts)

    @cached_property
    def product(self) -> int:
        return math.prod(self.parts)

    @cached_property
    def gcd(self) -> int:
        return math.gcd(*self.parts)

    def s(self, m: int) -> int:
        """Power sum ``a_1^m + ... + a_k^m`` (memoized)."""
        try:
            return self._power_sums[m]
        except KeyError:
            value = sum(a ** m for a in self.parts)
            # idempotent fill, safe under concurrent readers
            self._power_sums[m] = value
            return value

    @property
    def strictly_increasing(self) -> bool:
        return all(x < y for x, y in zip(self.parts, self.parts[1:]))

    @property
    def all_ones(self) -> bool:
        return all(a == 1 for a in self.parts)

    def prefix(self, k: int) -> PartSystem:
        if not 1 <= k <= self.k:
            raise ValidationError(f"prefix length {k} outside 1..{self.k}")
        return PartSystem(self.parts[:k])

    def label(self) -> str:
        return ",".join(map(str, self.parts))

    def __str__(self) -> str:
        return f"({self.label()})"


def make_part_system(parts: Iterable[int]) -> PartSystem:
    values = list(parts)
    if not values:
        raise ValidationError("part list must be non-empty")
    for a in values:
        if isinstance(a, bool) or not isinstance(a, int):
            raise ValidationError(f"part {a!r} is not an integer")
        if a < 1:
            raise ValidationError(f"part {a} is not positive")
    return PartSystem(tuple(sorted(values)))


def gcd_all_multisubsets(system: PartSystem, j: int) -> bool:
    """True iff every size-``j`` sub-multiset of the parts has gcd 1.

    Sub-multisets are taken over index positions, so a repeated value may
    appear in a subset as often as it occurs in the system.
    """
    if not 1 <= j <= system.k:
        raise ValidationError(f"j={j} outside 1..{system.k}")
    return gcd_violating_multisubset(system, j) is None


def gcd_violating_multisubset(system: PartSystem, j: int) -> tuple[int, ...] | None:
    """First size-``j`` sub-multiset whose gcd exceeds 1, or None."""
    seen = set()
    for combo in combinations(system.parts, j):
        if combo in seen:
            continue
        seen.add(combo)
        if math.gcd(*combo) > 1:
            return combo
    return None


# ---------------------------------------------------------------------------
# Dense rational polynomials
# ---------------------------------------------------------------------------

class RationalPolynomial:
    """Dense polynomial with Fraction coefficients, lowest degree first.

    Instances are immutable; trailing zero coefficients are stripped so the
    zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        coeffs = [_frac(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolynomial is immutable")

    @classmethod
    def constant(cls, c) -> RationalPolynomial:
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> RationalPolynomial:
        return cls([0] * degree + [c])

    @classmethod
    def x(cls) -> RationalPolynomial:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return Fraction(0)

    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            return self.coefficients == other.coefficients
        if isinstance(other, (int, Fraction)):
            return self.coefficients == RationalPolynomial([other]).coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"RationalPolynomial({[str(c) for c in self.coefficients]})"

    def __str__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("n" if i == 1 else f"n^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono:
                terms.append(f"({c})*{mono}")
            else:
                terms.append(f"({c})")
        return " + ".join(terms)

    @staticmethod
    def _coerce(other) -> RationalPolynomial:
        if isinstance(other, RationalPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([other])
        raise TypeError(f"cannot combine polynomial with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = max(len(self.coefficients), len(other.coefficients))
        return RationalPolynomial(self.coefficient(i) + other.coefficient(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coefficients)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial(c * other for c in self.coefficients)
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            return RationalPolynomial(c / scalar for c in self.coefficients)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = RationalPolynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self, times: int = 1) -> RationalPolynomial:
        coeffs = list(self.coefficients)
        for _ in range(times):
            coeffs = [i * c for i, c in enumerate(coeffs)][1:]
        return RationalPolynomial(coeffs)

    def antiderivative(self) -> RationalPolynomial:
        return RationalPolynomial([0] + [c / (i + 1) for i, c in enumerate(self.coefficients)])

    def integrate(self, lo, hi) -> Fraction:
        F = self.antiderivative()
        return F(hi) - F(lo)

    def shift(self, c) -> RationalPolynomial:
        """The polynomial ``x -> self(x + c)``."""
        result = RationalPolynomial()
        lin = RationalPolynomial([c, 1])
        for coeff in reversed(self.coefficients):
            result = result * lin + coeff
        return result

    def divmod(self, other: RationalPolynomial) -> tuple[RationalPolynomial, RationalPolynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        q = [Fraction(0)] * max(len(rem) - other.degree, 0)
        lead = other.leading()
        while len(rem) - 1 >= other.degree and any(rem):
            shift = len(rem) - 1 - other.degree
            factor = rem[-1] / lead
            q[shift] = factor
            for i, c in enumerate(other.coefficients):
                rem[i + shift] -= factor * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return RationalPolynomial(q), RationalPolynomial(rem)

    def tail(self, from_degree: int) -> RationalPolynomial:
        """Keep only the coefficients of degree ``>= from_degree``."""
        return RationalPolynomial(
            c if i >= from_degree else 0 for i, c in enumerate(self.coefficients)
        )


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------

class TruncatedPowerSeries:
    """Power series known exactly up to and including ``t**order``."""

    __slots__ = ("coefficients", "order")

    def __init__(self, coefficients: Sequence, order: int | None = None):
        coeffs = [_frac(c) for c in coefficients]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValidationError("truncation order must be non-negative")
        coeffs = (coeffs + [Fraction(0)] * (order + 1))[: order + 1]
        object.__setattr__(self, "coefficients", tuple(coeffs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedPowerSeries is immutable")

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients[i]

    def __eq__(self, other):
        if not isinstance(other, TruncatedPowerSeries):
            return NotImplemented
        return self.order == other.order and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.order, self.coefficients))

    def __repr__(self):
        return f"TruncatedPowerSeries({[str(c) for c in self.coefficients]}, order={self.order})"

    def __add__(self, other: TruncatedPowerSeries) -> TruncatedPowerSeries:
        m = min(self.order, other.order)
        return TruncatedPowerSeries([self[i] + other[i] for i in range(m + 1)], m)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedPowerSeries([c * other for c in self.coefficients], self.order)
        m = min(self.order, other.order)
        out = [Fraction(0)] * (m + 1)
        for i in range(m + 1):
            a = self[i]
            if a == 0:
                continue
            for j in range(m + 1 - i):
                out[i + j] += a * other[j]
        return TruncatedPowerSeries(out, m)

    __rmul__ = __mul__

    def reciprocal(self) -> TruncatedPowerSeries:
        return series_reciprocal(self)


def series_reciprocal(s: TruncatedPowerSeries) -> TruncatedPowerSeries:
    """Exact ``1/s`` up to the truncation order of ``s``."""
    c0 = s[0]
    if c0 == 0:
        raise SingularSeriesError("series with zero constant term has no reciprocal")
    inv = [Fraction(0)] * (s.order + 1)
    inv[0] = 1 / c0
    for m in range(1, s.order + 1):
        acc = sum((s[i] * inv[m - i] for i in range(1, m + 1)), Fraction(0))
        inv[m] = -acc / c0
    return TruncatedPowerSeries(inv, s.order)
