"""Symmetric sigma coefficients, polynomial parts and Euler-Maclaurin sums."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .core import (
    PartSystem,
    RationalPolynomial,
    TruncatedPowerSeries,
    gcd_all_multisubsets,
    series_reciprocal,
)
from .errors import ApplicabilityError, ValidationError

__all__ = [
    "SigmaTable",
    "BernoulliTable",
    "EulerMaclaurinResult",
    "sigma_table",
    "netto_leading",
    "almkvist_polynomial_part",
    "bernoulli_table",
    "euler_maclaurin_poly_sum",
    "abs_integral_upper",
    "ZETA2_MAJORANT",
]

# zeta(2) = 1.6449... < 33/20
ZETA2_MAJORANT = Fraction(33, 20)


@dataclass(frozen=True)
class SigmaTable:
    system: PartSystem
    coeffs: tuple[Fraction, ...]

    def __getitem__(self, m: int) -> Fraction:
        return self.coeffs[m]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class BernoulliTable:
    values: tuple[Fraction, ...]

    def __getitem__(self, s: int) -> Fraction:
        return self.values[s]


class EulerMaclaurinResult(NamedTuple):
    value: Fraction
    remainder_bound: Fraction


def sigma_table(system: PartSystem, M: int | None = None) -> SigmaTable:
    """Coefficients of ``prod_i (a_i t/2) / sinh(a_i t/2)`` up to ``t^M``."""
    if M is None:
        M = system.k
    if M < 0:
        raise ValidationError("truncation order must be non-negative")
    total = TruncatedPowerSeries([1], M)
    for a in system.parts:
        half = Fraction(a, 2)
        # sinh(y)/y = sum_j y^(2j) / (2j+1)!
        coeffs = [Fraction(0)] * (M + 1)
        for j in range(M // 2 + 1):
            coeffs[2 * j] = half ** (2 * j) / math.factorial(2 * j + 1)
        total = total * series_reciprocal(TruncatedPowerSeries(coeffs, M))
    return SigmaTable(system, total.coefficients)


def netto_leading(system: PartSystem) -> Fraction:
    if system.k < 2:
        raise ApplicabilityError("the leading-term asymptotic needs k >= 2")
    if system.gcd != 1:
        raise ApplicabilityError(
            f"gcd of parts is {system.gcd}; the leading coefficient is not constant"
        )
    return Fraction(1, math.factorial(system.k - 1) * system.product)


def almkvist_polynomial_part(system: PartSystem, j: int) -> RationalPolynomial:
    """Polynomial part through ``sigma_{k-j}``, expanded in powers of ``n``."""
    k = system.k
    if not 1 <= j <= k:
        raise ValidationError(f"j={j} outside 1..{k}")
    if not gcd_all_multisubsets(system, j):
        raise ApplicabilityError(f"some {j}-multisubset of {system} has gcd > 1")
    sig = sigma_table(system, k - j)
    base = RationalPolynomial([Fraction(system.sigma, 2), 1])
    total = RationalPolynomial()
    for i in range(k - j + 1):
        if sig[i] == 0:
            continue
        total = total + (base ** (k - 1 - i)) * (sig[i] / math.factorial(k - 1 - i))
    return total / system.product


def bernoulli_table(M: int) -> BernoulliTable:
    """Bernoulli numbers ``B_0 .. B_M`` with ``B_1 = +1/2``."""
    if M < 0:
        raise ValidationError("M must be non-negative")
    B: list[Fraction] = []
    for m in range(M + 1):
        # sum_{j=0}^{m} C(m+1, j) B_j = m + 1   (the B_1 = +1/2 convention)
        acc = sum((math.comb(m + 1, j) * B[j] for j in range(m)), Fraction(0))
        B.append((m + 1 - acc) / (m + 1))
    return BernoulliTable(tuple(B))


# ---------------------------------------------------------------------------
# exact bound on the integral of |g| for a polynomial g
# ---------------------------------------------------------------------------

def _sturm_chain(g: RationalPolynomial) -> list[RationalPolynomial]:
    chain = [g, g.derivative()]
    while not chain[-1].is_zero():
        _, r = chain[-2].divmod(chain[-1])
        chain.append(-r)
    return chain[:-1]


def _sign_right(q: RationalPolynomial, a: Fraction) -> int:
    """Sign of ``q`` just to the right of ``a``."""
    for c in q.shift(a).coefficients:
        if c:
            return 1 if c > 0 else -1
    return 0


def _sign_left(q: RationalPolynomial, b: Fraction) -> int:
    for i, c in enumerate(q.shift(b).coefficients):
        if c:
            s = 1 if c > 0 else -1
            return -s if i % 2 else s
    return 0


def _variations(signs) -> int:
    nonzero = [s for s in signs if s]
    return sum(1 for x, y in zip(nonzero, nonzero[1:]) if x != y)


def _roots_inside(chain, a: Fraction, b: Fraction) -> int:
    """Distinct real roots of ``chain[0]`` in the open interval ``(a, b)``."""
    return _variations(_sign_right(q, a) for q in chain) - _variations(
        _sign_left(q, b) for q in chain
    )


def _sup_abs(g: RationalPolynomial, a: Fraction, b: Fraction) -> Fraction:
    r = max(abs(a), abs(b))
    return sum((abs(c) * r ** i for i, c in enumerate(g.coefficients)), Fraction(0))


def abs_integral_upper(g: RationalPolynomial, u, v, resolution: int = 30) -> Fraction:
    """Rational upper bound on the integral of ``|g|`` over ``[u, v]``.

    Root-free pieces (certified with a Sturm chain) are integrated exactly;
    each real root is bisected into an interval of width
    ``(v - u) / 2**resolution`` that is bounded crudely by width times a
    majorant of ``|g|``. The result is exact when ``g`` has no root inside.
    """
    u, v = Fraction(u), Fraction(v)
    if g.is_zero() or u == v:
        return Fraction(0)
    chain = _sturm_chain(g)
    eps = (v - u) / 2 ** resolution
    total = Fraction(0)
    stack = [(u, v)]
    while stack:
        a, b = stack.pop()
        if _roots_inside(chain, a, b) == 0:
            total += abs(g.integrate(a, b))
        elif b - a <= eps:
            total += (b - a) * _sup_abs(g, a, b)
        else:
            m = (a + b) / 2
            stack.append((a, m))
            stack.append((m, b))
    return total


def euler_maclaurin_poly_sum(f: RationalPolynomial, u: int, v: int, p: int) -> EulerMaclaurinResult:
    """Euler-Maclaurin for ``sum_{i=u}^{v} f(i)`` truncated at order ``p``.

    ``value`` is the closed-form part; ``remainder_bound`` majorizes the
    remainder with ``zeta(p) <= 33/20`` and ``(2 pi)^p >= 6^p``. For ``p = 1``
    the periodic Bernoulli function is bounded by 1/2 directly.
    """
    if not 0 <= u < v:
        raise ValidationError("need 0 <= u < v")
    if p < 1:
        raise ValidationError("need p >= 1")
    bern = bernoulli_table(2 * (p // 2))
    value = f.integrate(u, v) + (f(v) + f(u)) / 2
    for j in range(1, p // 2 + 1):
        d = f.derivative(2 * j - 1)
        value += bern[2 * j] / math.factorial(2 * j) * (d(v) - d(u))
    fp = f.derivative(p)
    if fp.is_zero():
        return EulerMaclaurinResult(value, Fraction(0))
    if p == 1:
        constant = Fraction(1, 2)
    else:
        constant = 2 * ZETA2_MAJORANT / Fraction(6) ** p
    return EulerMaclaurinResult(value, constant * abs_integral_upper(fp, u, v))
