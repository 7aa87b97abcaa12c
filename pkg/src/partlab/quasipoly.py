"""Quasi-polynomial representation of p_A(n, k).

``p_A(n, k)`` agrees with one polynomial of degree ``k - 1`` on every residue
class of ``n`` modulo ``D = lcm(parts)``. Two independent constructions are
offered: the Cimpoeas-Nicolae residue sum (:func:`cnt_quasipolynomial`) and
exact interpolation from DP values (:func:`fit_quasipolynomial`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .core import PartSystem, RationalPolynomial
from .errors import CapacityError, ConsistencyError, ValidationError
from .exact import count_table

__all__ = [
    "QuasiPolynomial",
    "StableCoefficients",
    "stirling1_unsigned",
    "rising_factorial_coeffs",
    "cnt_quasipolynomial",
    "fit_quasipolynomial",
    "evaluate",
    "stable_coefficients",
    "DEFAULT_TUPLE_BUDGET",
]

DEFAULT_TUPLE_BUDGET = 10 ** 7


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1)
    # [n, i] = (n-1) [n-1, i] + [n-1, i-1]
    row = [0] * (n + 1)
    for i in range(n + 1):
        left = prev[i] if i < len(prev) else 0
        down = prev[i - 1] if i >= 1 else 0
        row[i] = (n - 1) * left + down
    return tuple(row)


def stirling1_unsigned(n: int, i: int) -> int:
    """Coefficient of ``x^i`` in the rising factorial ``x (x+1) ... (x+n-1)``."""
    if n < 0 or i < 0:
        raise ValidationError("Stirling indices must be non-negative")
    if i > n:
        return 0
    for m in range(n):  # build rows iteratively; avoids deep recursion
        _stirling_row(m)
    return _stirling_row(n)[i]


def rising_factorial_coeffs(n: int) -> RationalPolynomial:
    return RationalPolynomial(stirling1_unsigned(n, i) for i in range(n + 1))


@dataclass(frozen=True)
class QuasiPolynomial:
    system: PartSystem
    period: int
    polys: tuple[RationalPolynomial, ...]

    def __call__(self, n: int) -> int:
        return evaluate(self, n)

    def coefficient_table(self) -> tuple[tuple[Fraction, ...], ...]:
        """Rows are residues, columns degrees ``0 .. k-1``."""
        k = self.system.k
        return tuple(tuple(p.coefficient(d) for d in range(k)) for p in self.polys)


class StableCoefficients(NamedTuple):
    degree: int
    """Smallest degree from which every coefficient is residue-independent.

    Equals ``k`` when even the leading coefficient varies."""
    tail: RationalPolynomial


def evaluate(qp: QuasiPolynomial, n: int) -> int:
    if n < 0:
        raise ValidationError("quasi-polynomial evaluation needs n >= 0")
    value = qp.polys[n % qp.period](n)
    if value.denominator != 1 or value < 0:
        raise ConsistencyError(f"quasi-polynomial gave {value} at n={n}")
    return value.numerator


def tuple_count(system: PartSystem) -> int:
    D = system.D
    return math.prod(D // a for a in system.parts)


def _residue_sum_distribution(system: PartSystem) -> list[int]:
    """``dist[S]`` = number of tuples ``0 <= j_i < D/a_i`` with ``sum a_i j_i = S``."""
    D = system.D
    dist = [1]
    for a in system.parts:
        reps = D // a
        new = [0] * (len(dist) + a * (reps - 1))
        for s, c in enumerate(dist):
            if c:
                for t in range(reps):
                    new[s + a * t] += c
        dist = new
    return dist


def cnt_quasipolynomial(system: PartSystem, budget: int = DEFAULT_TUPLE_BUDGET) -> QuasiPolynomial:
    """Residue polynomials from the Cimpoeas-Nicolae sum.

    Tuples sharing the same value of ``sum a_i j_i`` contribute identically,
    so they are grouped by that sum before the inner double sum is applied.
    The Stirling factor is ``[k, i+1]``: the sum expands the binomial
    ``C((n - S)/D + k - 1, k - 1)`` through the rising factorial.
    """
    count = tuple_count(system)
    if count > budget:
        raise CapacityError(
            f"{count} residue tuples exceed budget {budget}; use fit_quasipolynomial"
        )
    k, D = system.k, system.D
    dist = _residue_sum_distribution(system)

    # power sums P[r][e] = sum over S = r (mod D) of dist[S] * S^e
    P = [[0] * k for _ in range(D)]
    for S, c in enumerate(dist):
        if not c:
            continue
        row = P[S % D]
        power = c
        for e in range(k):
            row[e] += power
            power *= S

    stir = [stirling1_unsigned(k, i + 1) for i in range(k)]
    prefactor = Fraction(1, math.factorial(k - 1))
    polys = []
    for r in range(D):
        coeffs = []
        for m in range(k):
            acc = Fraction(0)
            for i in range(m, k):
                term = stir[i] * math.comb(i, m) * P[r][i - m]
                acc += Fraction(-term if (i - m) % 2 else term, D ** i)
            coeffs.append(prefactor * acc)
        polys.append(RationalPolynomial(coeffs))
    return QuasiPolynomial(system, D, tuple(polys))


def _solve_fraction_free(matrix: list[list[int]], rhs: list[int]) -> list[Fraction]:
    """Solve an integer linear system by Bareiss elimination."""
    n = len(matrix)
    M = [list(row) + [b] for row, b in zip(matrix, rhs)]
    prev = 1
    for p in range(n - 1):
        if M[p][p] == 0:
            swap = next((r for r in range(p + 1, n) if M[r][p] != 0), None)
            if swap is None:
                raise ConsistencyError("singular interpolation system")
            M[p], M[swap] = M[swap], M[p]
        for r in range(p + 1, n):
            for c in range(p + 1, n + 1):
                M[r][c] = (M[r][c] * M[p][p] - M[r][p] * M[p][c]) // prev
            M[r][p] = 0
        prev = M[p][p]
    if M[n - 1][n - 1] == 0:
        raise ConsistencyError("singular interpolation system")
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = Fraction(M[r][n]) - sum((M[r][c] * x[c] for c in range(r + 1, n)), Fraction(0))
        x[r] = acc / M[r][r]
    return x


def fit_quasipolynomial(system: PartSystem) -> QuasiPolynomial:
    """Interpolate each residue polynomial through ``k`` DP values.

    The abscissae for residue ``r`` are ``r, r + D, ..., r + (k-1) D``; the
    next ``k`` points of the same class are then checked before returning.
    """
    k, D = system.k, system.D
    table = count_table(system, 2 * k * D)
    polys = []
    for r in range(D):
        xs = [r + t * D for t in range(k)]
        vander = [[x ** d for d in range(k)] for x in xs]
        coeffs = _solve_fraction_free(vander, [table[x] for x in xs])
        poly = RationalPolynomial(coeffs)
        for t in range(k, 2 * k):
            x = r + t * D
            if poly(x) != table[x]:
                raise ConsistencyError(
                    f"interpolated residue {r} polynomial disagrees with DP at n={x}"
                )
        polys.append(poly)
    return QuasiPolynomial(system, D, tuple(polys))


def stable_coefficients(qp: QuasiPolynomial) -> StableCoefficients:
    k = qp.system.k
    degree = k
    for d in range(k - 1, -1, -1):
        first = qp.polys[0].coefficient(d)
        if any(p.coefficient(d) != first for p in qp.polys[1:]):
            break
        degree = d
    return StableCoefficients(degree, qp.polys[0].tail(degree) if degree < k else RationalPolynomial())
