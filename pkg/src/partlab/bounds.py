"""Certified envelopes, inequality thresholds and eventual-behavior classification.

Envelopes sandwich ``p_A(n, k)`` between ``main(n) -/+ err_coeff * n**err_degree``.
Thresholds record a starting point beyond which the Bessenrodt-Ono or
log-concavity inequality is guaranteed. Every constant involving
``e^(1/a_k)`` is replaced by a rational upper bound, so thresholds and
error coefficients are only ever rounded in the safe direction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .asymptotics import almkvist_polynomial_part
from .core import PartSystem, RationalPolynomial, gcd_all_multisubsets, gcd_violating_multisubset
from .errors import ApplicabilityError, ValidationError

__all__ = [
    "BoundEnvelope",
    "Threshold",
    "Classification",
    "ClassificationError",
    "e_majorant",
    "envelope_leading_term",
    "envelope_cubic_coprime",
    "envelope_cubic",
    "envelope_stable_part",
    "ek_constant",
    "f_constant",
    "bo_threshold",
    "logconcavity_threshold",
    "powers_of_two_bo_bound",
    "consecutive_logconcavity_bound",
    "classify",
]


class ClassificationError(ApplicabilityError):
    """The requested inequality does not hold eventually for this system."""


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def e_majorant(x: Fraction, tol: Fraction = Fraction(1, 10 ** 6)) -> Fraction:
    """Rational ``R`` with ``e**x <= R < e**x + tol`` for ``0 <= x <= 1``.

    Equality holds only at ``x = 0``.
    """
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValidationError("e_majorant expects 0 <= x <= 1")
    partial = Fraction(0)
    term = Fraction(1)
    n = 0
    while True:
        partial += term
        term = term * x / (n + 1)  # x^(n+1)/(n+1)!
        # tail after x^n/n! is below term / (1 - x/(n+2))
        tail = term / (1 - x / (n + 2))
        if tail < tol:
            return partial + tail
        n += 1


def _pairwise_coprime(values) -> bool:
    return all(math.gcd(x, y) == 1 for i, x in enumerate(values) for y in values[i + 1:])


def _uniform_product(system: PartSystem) -> int:
    """``prod_{i=1}^{k} (1 + i D k)``."""
    k, D = system.k, system.D
    return math.prod(1 + i * D * k for i in range(1, k + 1))


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# ---------------------------------------------------------------------------
# envelopes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundEnvelope:
    system: PartSystem
    kind: str
    main: RationalPolynomial
    err_coeff: Fraction
    err_degree: int
    valid_from: int
    j: int | None = None

    def error(self, n: int) -> Fraction:
        return self.err_coeff * Fraction(n) ** self.err_degree

    def lower(self, n: int) -> Fraction:
        return self.main(n) - self.error(n)

    def upper(self, n: int) -> Fraction:
        return self.main(n) + self.error(n)

    def contains(self, n: int, value: int) -> bool:
        """Strict sandwich test ``lower(n) < value < upper(n)``."""
        m, e = self.main(n), self.error(n)
        return m - e < value < m + e


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ApplicabilityError(message)


def envelope_leading_term(system: PartSystem) -> BoundEnvelope:
    """Leading term plus or minus ``n^(k-2)``."""
    k, a = system.k, system.parts
    _require(k >= 3, "needs k >= 3")
    _require(system.strictly_increasing, "parts must be strictly increasing")
    _require(math.gcd(a[0], a[1]) == 1, f"gcd(a_1, a_2) = {math.gcd(a[0], a[1])} != 1")
    lead = Fraction(1, math.factorial(k - 1) * system.product)
    return BoundEnvelope(system, "leading_term", RationalPolynomial.monomial(k - 1, lead),
                         Fraction(1), k - 2, 1)


def _cubic_main(system: PartSystem) -> RationalPolynomial:
    """``(alpha n^2 + beta n + gamma) n^(k-3)`` with the three top coefficients."""
    k, P, sig = system.k, system.product, system.sigma
    alpha = Fraction(1, math.factorial(k - 1) * P)
    beta = Fraction(sig, 2 * math.factorial(k - 2) * P)
    gamma = Fraction(3 * sig * sig - system.s(2), 24 * math.factorial(k - 3) * P)
    return RationalPolynomial([0] * (k - 3) + [gamma, beta, alpha])


def envelope_cubic_coprime(system: PartSystem) -> BoundEnvelope:
    """Four pairwise coprime parts: cubic main part plus or minus ``16 (prod a)^3``."""
    _require(system.k == 4, "needs exactly four parts")
    _require(system.strictly_increasing, "parts must be strictly increasing")
    _require(_pairwise_coprime(system.parts), "parts must be pairwise coprime")
    return BoundEnvelope(system, "cubic_coprime", _cubic_main(system),
                         Fraction(16 * system.product ** 3), 0, 1)


def _ek_hypotheses(system: PartSystem) -> None:
    _require(system.k >= 4, "needs k >= 4")
    _require(system.strictly_increasing, "parts must be strictly increasing")
    first_four = system.parts[:4]
    consecutive = system.k >= 5 and system.parts[:5] == (1, 2, 3, 4, 5)
    _require(
        _pairwise_coprime(first_four) or consecutive,
        "first four parts must be pairwise coprime (or the parts must start 1,2,3,4,5)",
    )


def _ek_rational_part(system: PartSystem) -> Fraction:
    k, a = system.k, system.parts
    return Fraction(k * k * (a[0] * a[1] * a[2]) ** 3 * a[-1] ** (k + 3), system.product)


def ek_constant(system: PartSystem, tol: Fraction = Fraction(1, 10 ** 6)) -> Fraction:
    """Error coefficient of the cubic envelope, with ``e^(1/a_k)`` majorized."""
    _ek_hypotheses(system)
    return _ek_rational_part(system) * e_majorant(Fraction(1, system.parts[-1]), tol)


def envelope_cubic(system: PartSystem) -> BoundEnvelope:
    _ek_hypotheses(system)
    return BoundEnvelope(system, "cubic", _cubic_main(system), ek_constant(system),
                         system.k - 4, system.parts[-1])


def f_constant(system: PartSystem) -> Fraction:
    """``prod_{i=1}^{k} (1 + i D k) / (k! prod a_i)``."""
    _require(system.k >= 2, "needs k >= 2")
    return Fraction(_uniform_product(system), math.factorial(system.k) * system.product)


def envelope_stable_part(system: PartSystem, j: int | None = None) -> BoundEnvelope:
    """Stable coefficients of degree ``>= j-1`` plus or minus ``F n^(j-2)``.

    ``j`` defaults to the smallest value for which every ``j``-multisubset
    is coprime.
    """
    k = system.k
    _require(k >= 2, "needs k >= 2")
    if j is None:
        j = next((i for i in range(1, k + 1) if gcd_all_multisubsets(system, i)), None)
        _require(j is not None, f"gcd of all parts of {system} exceeds 1")
    elif not gcd_all_multisubsets(system, j):
        raise ApplicabilityError(f"some {j}-multisubset of {system} has gcd > 1")
    main = almkvist_polynomial_part(system, j).tail(j - 1)
    return BoundEnvelope(system, "stable_part", main, f_constant(system), j - 2, 1, j)


# ---------------------------------------------------------------------------
# thresholds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Threshold:
    """A guaranteed starting point for an inequality.

    ``bound`` is the number as the source result states it; when ``strict`` the
    guarantee is for arguments ``> bound``, otherwise ``>= bound``.
    ``n_min`` is the inclusive form of the same guarantee.
    """

    source: str
    bound: int
    strict: bool
    condition: str
    hypotheses_hold: bool = True
    alternatives: dict = field(default_factory=dict, compare=False)

    @property
    def n_min(self) -> int:
        return self.bound + 1 if self.strict else self.bound


def _pick(system: PartSystem, candidates: list[Threshold], what: str,
          extra: dict | None = None) -> Threshold:
    if not candidates:
        raise ApplicabilityError(f"no {what} threshold applies to {system}")
    best = min(candidates, key=lambda t: t.n_min)  # min() keeps the first of ties
    alternatives = {t.source: t.n_min for t in candidates}
    alternatives.update(extra or {})
    return Threshold(best.source, best.bound, best.strict, best.condition, True, alternatives)


def powers_of_two_bo_bound(k: int) -> int:
    """``2^(k(k-1)/2 + 1) (k-1)! + 1`` (strict) for parts ``1, 2, ..., 2^(k-1)``."""
    return 2 ** (k * (k - 1) // 2 + 1) * math.factorial(k - 1) + 1


def bo_threshold(system: PartSystem) -> Threshold:
    k, a = system.k, system.parts
    if k < 2:
        raise ClassificationError("the Bessenrodt-Ono inequality never holds eventually for k = 1")
    if system.gcd != 1:
        raise ClassificationError(
            f"the Bessenrodt-Ono inequality never holds eventually: every part is divisible by {system.gcd}"
        )
    candidates = []
    if k == 2:
        candidates.append(Threshold("two_part_coprime", 4 * a[0] * a[1], True,
                                    "k = 2, gcd(a_1, a_2) = 1; a, b > 4 a_1 a_2"))
    if k >= 3 and system.strictly_increasing and math.gcd(a[0], a[1]) == 1:
        candidates.append(Threshold(
            "leading_term", 2 * math.factorial(k - 1) * system.product + 2, False,
            "k >= 3, strictly increasing, gcd(a_1, a_2) = 1; a, b >= 2 (k-1)! prod a_i + 2"))
    uniform = Fraction(2 * _uniform_product(system), k)
    candidates.append(Threshold(
        "multiset_uniform", _ceil(uniform) + 2, True,
        "gcd of all parts = 1; a, b > 2 prod(1 + i D k) / k + 2"))
    extra = {}
    if k >= 3 and a == tuple(2 ** i for i in range(k)):
        extra["powers_of_two"] = powers_of_two_bo_bound(k) + 1
    return _pick(system, candidates, "Bessenrodt-Ono", extra)


def consecutive_logconcavity_bound(k: int) -> int:
    """Upper-rounded ``432 k^(k+5) (k-1)! e^(1/k)`` (strict) for parts ``1..k``."""
    return _e_scaled(432 * k ** (k + 5) * math.factorial(k - 1), k)


def _e_scaled(C: int, a_k: int) -> int:
    # C * e^(1/a_k), rounded up; majorant error kept below 1/4 in absolute terms
    return _ceil(C * e_majorant(Fraction(1, a_k), Fraction(1, 4 * C)))


def logconcavity_threshold(system: PartSystem, strengthened: bool = False) -> Threshold:
    """Start of guaranteed log-concavity.

    With ``strengthened`` the guarantee is for
    ``p(n)^2 > (1 + 1/n^2) p(n+1) p(n-1)`` instead of the plain inequality.
    """
    cls = classify(system)
    if not cls.logconcave_eventually:
        raise ClassificationError(f"{system} is not eventually log-concave: {cls.reasons}")
    k, a = system.k, system.parts
    P = system.product
    candidates = []

    if system.all_ones:
        if not strengthened:
            candidates.append(Threshold("all_ones", 1, False, "all parts 1; every n >= 1"))
        elif k >= 3:
            candidates.append(Threshold("all_ones", _ceil(Fraction(k, k - 2)), False,
                                        "all parts 1, k >= 3; n >= k/(k-2)"))

    if k == 4 and system.strictly_increasing and _pairwise_coprime(a):
        factor = 288 if strengthened else 192
        candidates.append(Threshold("four_part_coprime", factor * P ** 4, False,
                                    f"k = 4, pairwise coprime; n >= {factor} (prod a_i)^4"))

    if k > 4 and system.strictly_increasing and _pairwise_coprime(a[:4]):
        C = 2 * k * k * math.factorial(k - 1) * (a[0] * a[1] * a[2]) ** 3 * a[-1] ** (k + 3)
        candidates.append(Threshold(
            "coprime_prefix", _e_scaled(C, a[-1]), True,
            "k > 4, first four pairwise coprime; n > 2 k^2 (k-1)! (a_1 a_2 a_3)^3 a_k^(k+3) e^(1/a_k)"))

    if k > 5 and system.strictly_increasing and a[:5] == (1, 2, 3, 4, 5):
        C = 432 * k * k * math.factorial(k - 1) * a[-1] ** (k + 3)
        candidates.append(Threshold(
            "consecutive_prefix", _e_scaled(C, a[-1]), True,
            "parts start 1,2,3,4,5, k > 5; n > 432 k^2 (k-1)! a_k^(k+3) e^(1/a_k)"))

    if not strengthened and k >= 5 and a == tuple(range(1, k + 1)):
        candidates.append(Threshold(
            "consecutive_integers", consecutive_logconcavity_bound(k), True,
            "parts 1..k, k >= 5; n > 432 k^(k+5) (k-1)! e^(1/k)"))

    if k >= 4:
        factor = 3 if (strengthened and k == 4) else 2
        candidates.append(Threshold(
            "multiset_uniform", _ceil(Fraction(factor * _uniform_product(system), k)), False,
            f"(k-2)-multisubsets coprime; n >= {factor} prod(1 + i D k) / k"))

    return _pick(system, candidates, "strengthened log-concavity" if strengthened else "log-concavity")


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    system: PartSystem
    bo_holds_eventually: bool
    logconcave_eventually: bool
    reasons: dict = field(default_factory=dict, compare=False)


def classify(system: PartSystem) -> Classification:
    k = system.k
    reasons: dict = {}

    if k < 2:
        bo = False
        reasons["bo"] = "k = 1"
    elif system.gcd > 1:
        bo = False
        reasons["bo"] = "common divisor"
        reasons["witness_divisor"] = system.gcd
    else:
        bo = True

    if k >= 2 and system.all_ones:
        lc = True
    elif k < 4:
        lc = False
        reasons["logconcave"] = "k = 1" if k == 1 else "k < 4 and parts not all 1"
    else:
        witness = gcd_violating_multisubset(system, k - 2)
        lc = witness is None
        if witness is not None:
            reasons["logconcave"] = "(k-2)-multisubset with gcd > 1"
            reasons["witness_multisubset"] = witness
            reasons["witness_multisubset_gcd"] = math.gcd(*witness)

    return Classification(system, bo, lc, reasons)


THRESHOLD_FUNCTIONS: dict[str, Callable[[PartSystem], Threshold]] = {
    "bo": bo_threshold,
    "logconcave": logconcavity_threshold,
    "logconcave_strengthened": lambda s: logconcavity_threshold(s, strengthened=True),
}
