"""Finite-range verification of multiplicative inequalities for p_A(n, k).

Every comparison is carried out on exact integers. Results are horizon
bounded: a clean scan says nothing about arguments beyond the range.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import BoundEnvelope
from .core import PartSystem
from .errors import ValidationError
from .exact import PartitionTable, count_one, count_table
from .quasipoly import QuasiPolynomial

__all__ = [
    "Violation",
    "ScanReport",
    "scan_bo",
    "scan_logconcavity",
    "verify_envelope",
    "verify_quasipolynomial",
    "minimal_logconcave_start",
    "reverify",
]


@dataclass(frozen=True)
class Violation:
    """One failed comparison. ``lhs`` should have exceeded ``rhs``.

    For envelope and quasi-polynomial checks ``lhs`` is the exact value and
    ``rhs`` the offending bound or prediction.
    """

    n: int
    lhs: object
    rhs: object
    b: int | None = None


@dataclass(frozen=True)
class ScanReport:
    system: PartSystem
    property: str
    lo: int
    hi: int
    violations: tuple[Violation, ...]
    minimal_start: int | None
    horizon_bounded: bool = True
    params: dict = field(default_factory=dict, compare=False)

    @property
    def ok(self) -> bool:
        return not self.violations


def _minimal_start(bad: list[int], lo: int, hi: int) -> int | None:
    if not bad:
        return lo
    start = max(bad) + 1
    return start if start <= hi else None


def _strength_factor(u, e) -> tuple[int, int] | None:
    """``(a, b)`` with ``u = a/b``, or None for the plain check."""
    if u is None and e is None:
        return None
    u = Fraction(1) if u is None else Fraction(u)
    if u <= 0:
        raise ValidationError("u must be positive")
    return u.numerator, u.denominator


def _logc_chunk(args):
    # values[i] holds p(start - 1 + i)
    start, stop, values, factor, e = args
    out = []
    for n in range(start, stop + 1):
        i = n - start + 1
        p, nxt, prv = values[i], values[i + 1], values[i - 1]
        if factor is None:
            lhs, rhs = p * p, nxt * prv
        else:
            a, b = factor
            an2 = a * n * n
            # p^2 > (1 + 1/(u n^2))^e p(n+1) p(n-1), denominators cleared
            lhs = p * p * an2 ** e
            rhs = (an2 + b) ** e * nxt * prv
        if not lhs > rhs:
            out.append(Violation(n, lhs, rhs))
    return out


def scan_logconcavity(system: PartSystem, lo: int, hi: int, u=None, e: int | None = None,
                      table: PartitionTable | None = None, workers: int = 1,
                      chunk: int = 2000) -> ScanReport:
    """Check ``p(n)^2 > (1 + 1/(u n^2))^e p(n+1) p(n-1)`` on ``lo <= n <= hi``.

    With ``u`` and ``e`` both None the plain inequality is checked. When
    only one is given the other defaults to 1.
    """
    if not 1 <= lo < hi:
        raise ValidationError("need 1 <= lo < hi")
    factor = _strength_factor(u, e)
    if factor is not None:
        e = 1 if e is None else e
        if e < 1:
            raise ValidationError("exponent e must be >= 1")
    if table is None or table.n_max < hi + 1:
        table = count_table(system, hi + 1)
    vals = table.values
    jobs = [
        (s, min(s + chunk - 1, hi), vals[s - 1: min(s + chunk - 1, hi) + 2], factor, e)
        for s in range(lo, hi + 1, chunk)
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_logc_chunk, jobs))
    else:
        parts = [_logc_chunk(j) for j in jobs]
    violations = tuple(v for part in parts for v in part)
    if factor is None:
        prop = "logconcave"
        params = {}
    else:
        u_val = Fraction(factor[0], factor[1])
        prop = f"logconcave_strengthened(u={u_val}, e={e})"
        params = {"u": u_val, "e": e}
    return ScanReport(system, prop, lo, hi, violations,
                      _minimal_start([v.n for v in violations], lo, hi), params=params)


def minimal_logconcave_start(system: PartSystem, horizon: int) -> int | None:
    """Smallest ``N >= 2`` with ``delta(n) > 0`` for ``N <= n <= horizon``.

    The scan looks one full period ``D`` past the horizon, so a system whose
    violations recur with period dividing ``D`` reports None instead of a
    spurious start just after its last in-horizon violation.
    """
    if horizon < 3:
        raise ValidationError("horizon must be >= 3")
    report = scan_logconcavity(system, 2, horizon + system.D)
    start = report.minimal_start
    return start if start is not None and start <= horizon else None


def scan_bo(system: PartSystem, max: int, table: PartitionTable | None = None) -> ScanReport:
    """Check ``p(a) p(b) > p(a + b)`` for all ``1 <= b <= a <= max``.

    ``minimal_start`` is the smallest ``N`` such that every pair with
    ``a, b >= N`` passes.
    """
    if max < 2:
        raise ValidationError("max must be >= 2")
    if table is None or table.n_max < 2 * max:
        table = count_table(system, 2 * max)
    vals = table.values
    violations = []
    for a in range(1, max + 1):
        pa = vals[a]
        for b in range(1, a + 1):
            lhs, rhs = pa * vals[b], vals[a + b]
            if not lhs > rhs:
                violations.append(Violation(a, lhs, rhs, b))
    return ScanReport(system, "bo", 1, max, tuple(violations),
                      _minimal_start([v.b for v in violations], 1, max))


def verify_envelope(env: BoundEnvelope, lo: int, hi: int,
                    table: PartitionTable | None = None) -> ScanReport:
    if lo < env.valid_from:
        raise ValidationError(f"envelope only claimed from n = {env.valid_from}")
    if table is None or table.n_max < hi:
        table = count_table(env.system, hi)
    violations = []
    for n in range(lo, hi + 1):
        value = table[n]
        m, err = env.main(n), env.error(n)
        if not m - err < value:
            violations.append(Violation(n, value, m - err))
        elif not value < m + err:
            violations.append(Violation(n, value, m + err))
    return ScanReport(env.system, f"envelope({env.kind})", lo, hi, tuple(violations),
                      _minimal_start([v.n for v in violations], lo, hi))


def verify_quasipolynomial(qp: QuasiPolynomial, lo: int, hi: int,
                           table: PartitionTable | None = None) -> ScanReport:
    if lo < 0:
        raise ValidationError("lo must be >= 0")
    if table is None or table.n_max < hi:
        table = count_table(qp.system, hi)
    violations = []
    for n in range(lo, hi + 1):
        predicted = qp.polys[n % qp.period](n)
        if predicted != table[n]:
            violations.append(Violation(n, table[n], predicted))
    return ScanReport(qp.system, "quasipolynomial", lo, hi, tuple(violations),
                      _minimal_start([v.n for v in violations], lo, hi))


def reverify(report: ScanReport) -> bool:
    """Recompute every violation with :func:`count_one` and confirm it fails."""
    system = report.system
    for v in report.violations:
        if report.property == "bo":
            lhs = count_one(system, v.n) * count_one(system, v.b)
            rhs = count_one(system, v.n + v.b)
            if lhs > rhs or (lhs, rhs) != (v.lhs, v.rhs):
                return False
        elif report.property.startswith("logconcave"):
            n = v.n
            p, nxt, prv = count_one(system, n), count_one(system, n + 1), count_one(system, n - 1)
            if report.params:
                a, b = report.params["u"].numerator, report.params["u"].denominator
                e = report.params["e"]
                lhs, rhs = p * p * (a * n * n) ** e, (a * n * n + b) ** e * nxt * prv
            else:
                lhs, rhs = p * p, nxt * prv
            if lhs > rhs or (lhs, rhs) != (v.lhs, v.rhs):
                return False
        else:
            if count_one(system, v.n) != v.lhs:
                return False
    return True
