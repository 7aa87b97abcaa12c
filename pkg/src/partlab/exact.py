"""Ground-truth values of p_A(n, k) and the log-concavity defect.

Two structurally different evaluators are provided: a bottom-up layered DP
(:func:`count_table`) and a top-down memoized telescoped sum
(:func:`count_one`). Every other module is tested against them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import PartSystem, make_part_system
from .errors import ApplicabilityError, ConsistencyError, ValidationError

__all__ = [
    "PartitionTable",
    "count_table",
    "count_one",
    "count_k1",
    "popoviciu",
    "nearest_int_formula",
    "binomial_all_ones",
    "delta",
]


@dataclass(frozen=True)
class PartitionTable:
    """Exact values ``p_A(n, k)`` for ``0 <= n <= n_max``."""

    system: PartSystem
    values: tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.n_max:
            raise IndexError(f"n={n} beyond table bound {self.n_max}")
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def delta(self, n: int) -> int:
        return self[n] ** 2 - self[n + 1] * self[n - 1]


def count_table(system: PartSystem, n_max: int) -> PartitionTable:
    if n_max < 0:
        raise ValidationError("n_max must be non-negative")
    values = [0] * (n_max + 1)
    values[0] = 1
    # one pass per part slot: after slot i, values[n] = p(n, i)
    for a in system.parts:
        for n in range(a, n_max + 1):
            values[n] += values[n - a]
    return PartitionTable(system, tuple(values))


def count_k1(a1: int, n: int) -> int:
    """p(n, 1) for the single part ``a1``."""
    return 1 if n >= 0 and n % a1 == 0 else 0


@lru_cache(maxsize=1 << 20)
def _telescoped(parts: tuple[int, ...], slot: int, n: int) -> int:
    # p(n, slot) = sum_i p(n - i*a_slot, slot - 1); slot is 1-based
    if n < 0:
        return 0
    if slot == 1:
        return count_k1(parts[0], n)
    a = parts[slot - 1]
    return sum(_telescoped(parts, slot - 1, m) for m in range(n, -1, -a))


def count_one(system: PartSystem, n: int) -> int:
    """p_A(n, k) by the telescoped sum over the largest part, memoized."""
    # recursion depth is bounded by k, not n
    return _telescoped(system.parts, system.k, n)


def popoviciu(system: PartSystem, n: int) -> int:
    """Closed form for two coprime parts."""
    if system.k != 2:
        raise ApplicabilityError("Popoviciu's formula needs exactly two parts")
    a1, a2 = system.parts
    if math.gcd(a1, a2) != 1:
        raise ApplicabilityError(f"gcd({a1}, {a2}) != 1")
    if n < 1:
        raise ApplicabilityError("Popoviciu's formula is stated for n >= 1")
    a1p = (-n * pow(a1, -1, a2)) % a2 or a2
    a2p = (-n * pow(a2, -1, a1)) % a1 or a1
    num = n + a1 * a1p + a2 * a2p
    q, r = divmod(num, a1 * a2)
    if r:
        raise ConsistencyError(f"Popoviciu numerator {num} not divisible by {a1 * a2}")
    return q - 1


def _nearest_int(x: Fraction) -> int:
    if x.denominator == 2:
        raise ConsistencyError(f"nearest-integer argument {x} is a half-integer")
    # round half away from zero; halves were excluded above
    return math.floor(x + Fraction(1, 2)) if x >= 0 else -math.floor(-x + Fraction(1, 2))


def nearest_int_formula(k: int, n: int) -> int:
    """Closed forms for parts ``(1, ..., k)`` with ``k`` in {3, 4, 5}."""
    if n < 0:
        raise ValidationError("n must be non-negative")
    h = n // 2
    if k == 3:
        x = Fraction((n + 3) ** 2, 12)
    elif k == 4:
        x = Fraction((n + 5) * (n * n + n + 22 + 18 * h), 144)
    elif k == 5:
        x = Fraction((n + 8) * (n ** 3 + 22 * n * n + 44 * n + 248 + 180 * h), 2880)
    else:
        raise ApplicabilityError(f"no nearest-integer closed form for k={k}")
    return _nearest_int(x)


def binomial_all_ones(k: int, n: int) -> int:
    if k < 1 or n < 0:
        raise ValidationError("need k >= 1 and n >= 0")
    return math.comb(n + k - 1, k - 1)


def delta(system: PartSystem, n: int, table: PartitionTable | None = None) -> int:
    """``p(n)^2 - p(n+1) p(n-1)``."""
    if n < 1:
        raise ValidationError("delta is defined for n >= 1")
    if table is None or table.n_max < n + 1:
        table = count_table(system, n + 1)
    return table.delta(n)


def system_of(*parts: int) -> PartSystem:
    """Shorthand used by tests and the CLI."""
    return make_part_system(parts)
