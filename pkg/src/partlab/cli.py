"""Command-line interface for partlab.

Exit codes: 0 success, 1 usage or applicability error, 2 asserted property
violated.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import asymptotics, bounds, quasipoly, scanner
from .core import PartSystem, make_part_system
from .errors import PartlabError
from .exact import PartitionTable, count_one, count_table

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# ---------------------------------------------------------------------------
# argument types
# ---------------------------------------------------------------------------

def _parts(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"parts must be comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("parts list is empty")
    if any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("parts must be positive")
    return values


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _positive_rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 1 or 3/2, got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("u must be positive")
    return value


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def to_json_value(x):
    """Integers become decimal strings, rationals ``"num/den"`` strings."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): to_json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json_value(v) for v in x]
    if isinstance(x, PartSystem):
        return [str(a) for a in x.parts]
    return x


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _emit_json(obj: dict, out: str | None) -> None:
    _emit(json.dumps(to_json_value(obj), indent=2) + "\n", out)


def _emit_csv(header: list[str], rows, out: str | None) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(str(c) for c in row) for row in rows)
    _emit("\n".join(lines) + "\n", out)


# ---------------------------------------------------------------------------
# table cache
# ---------------------------------------------------------------------------

def _cache_header(system: PartSystem, n_max: int) -> str:
    return f"# partlab table k={system.k} parts={system.label()} n_max={n_max}"


def cached_table(system: PartSystem, n_max: int, cache_dir: str | None) -> PartitionTable:
    """Partition table, read from or written to ``cache_dir`` when given.

    A cached file is used only when its header names exactly the same parts
    and bound; anything else is recomputed and overwritten.
    """
    if cache_dir is None:
        return count_table(system, n_max)
    path = Path(cache_dir) / f"p_{system.label().replace(',', '-')}_{n_max}.txt"
    header = _cache_header(system, n_max)
    if path.exists():
        lines = path.read_text(encoding="utf-8").splitlines()
        if lines and lines[0] == header and len(lines) == n_max + 2:
            try:
                return PartitionTable(system, tuple(int(v) for v in lines[1:]))
            except ValueError:
                pass
    table = count_table(system, n_max)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(header + "\n" + "\n".join(map(str, table.values)) + "\n",
                   encoding="utf-8", newline="\n")
    os.replace(tmp, path)
    return table


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_eval(args, system):
    _emit(f"{count_one(system, args.n)}\n", args.out)
    return EXIT_OK


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def cmd_delta_csv(args, system):
    if args.n_max < 2:
        raise UsageError("--n-max must be >= 2")
    table = cached_table(system, args.n_max + 1, args.cache)
    rows = []
    for n in range(2, args.n_max + 1):
        d = table.delta(n)
        rows.append((n, table[n], d, _sign(d)))
    _emit_csv(["n", "p", "delta", "sign"], rows, args.out)
    return EXIT_OK


def cmd_qp(args, system):
    if args.method == "cnt":
        qp = quasipoly.cnt_quasipolynomial(system)
    else:
        qp = quasipoly.fit_quasipolynomial(system)
    table = qp.coefficient_table()
    if args.format == "csv":
        rows = [(r, d, c) for r, row in enumerate(table) for d, c in enumerate(row)]
        _emit_csv(["residue", "degree", "coefficient"], rows, args.out)
        return EXIT_OK
    stable = quasipoly.stable_coefficients(qp)
    _emit_json({
        "parts": system,
        "period": qp.period,
        "method": args.method,
        "coefficients": table,
        "stable_from_degree": stable.degree,
        "stable_tail": stable.tail.coefficients,
    }, args.out)
    return EXIT_OK


def cmd_sigma(args, system):
    M = system.k if args.m is None else args.m
    sig = asymptotics.sigma_table(system, M)
    if args.format == "csv":
        _emit_csv(["m", "sigma"], [(m, f"{c.numerator}/{c.denominator}") for m, c in enumerate(sig.coeffs)],
                  args.out)
    else:
        _emit_json({"parts": system, "sigma": sig.coeffs}, args.out)
    return EXIT_OK


def _envelope_json(env: bounds.BoundEnvelope) -> dict:
    return {
        "main": env.main.coefficients,
        "error_coefficient": env.err_coeff,
        "error_degree": env.err_degree,
        "valid_from": env.valid_from,
        "j": env.j,
    }


def _attempt(fn, *a):
    try:
        return fn(*a)
    except PartlabError as exc:
        return {"applicable": False, "reason": str(exc)}


def cmd_bounds(args, system):
    def envelope(fn, *a):
        result = _attempt(fn, *a)
        return _envelope_json(result) if isinstance(result, bounds.BoundEnvelope) else result

    report = {
        "parts": system,
        "leading_coefficient": _attempt(asymptotics.netto_leading, system),
        "f_constant": _attempt(bounds.f_constant, system),
        "ek_constant": _attempt(bounds.ek_constant, system),
        "envelopes": {
            "leading_term": envelope(bounds.envelope_leading_term, system),
            "cubic_coprime": envelope(bounds.envelope_cubic_coprime, system),
            "cubic": envelope(bounds.envelope_cubic, system),
            "stable_part": envelope(bounds.envelope_stable_part, system, args.j),
        },
    }
    _emit_json(report, args.out)
    return EXIT_OK


def _threshold_json(t: bounds.Threshold) -> dict:
    return {
        "bound": t.bound,
        "strict": t.strict,
        "n_min": t.n_min,
        "source": t.source,
        "condition": t.condition,
        "alternatives": t.alternatives,
    }


def cmd_thresholds(args, system):
    report = {"parts": system}
    for name, fn in bounds.THRESHOLD_FUNCTIONS.items():
        result = _attempt(fn, system)
        report[name] = _threshold_json(result) if isinstance(result, bounds.Threshold) else result
    _emit_json(report, args.out)
    return EXIT_OK


def cmd_classify(args, system):
    cls = bounds.classify(system)
    report = {"parts": system, "bo": cls.bo_holds_eventually, "logconcave": cls.logconcave_eventually}
    for key, value in cls.reasons.items():
        report[key + "_reason" if key in ("bo", "logconcave") else key] = value
    _emit_json(report, args.out)
    return EXIT_OK


def _report_json(report: scanner.ScanReport) -> dict:
    violations = []
    for v in report.violations:
        item = {"n": v.n, "lhs": v.lhs, "rhs": v.rhs}
        if v.b is not None:
            item = {"a": v.n, "b": v.b, "lhs": v.lhs, "rhs": v.rhs}
        violations.append(item)
    return {
        "parts": report.system,
        "property": report.property,
        "lo": report.lo,
        "hi": report.hi,
        "violation_count": len(report.violations),
        "minimal_start": report.minimal_start,
        "horizon_bounded": report.horizon_bounded,
        "violations": violations,
    }


def _emit_report(args, report: scanner.ScanReport) -> None:
    if args.format == "csv":
        if report.property == "bo":
            rows = [(v.n, v.b, v.lhs, v.rhs) for v in report.violations]
            _emit_csv(["a", "b", "lhs", "rhs"], rows, args.out)
        else:
            rows = [(v.n, v.lhs, v.rhs) for v in report.violations]
            _emit_csv(["n", "lhs", "rhs"], rows, args.out)
    else:
        _emit_json(_report_json(report), args.out)


def _asserted_exit(args, report: scanner.ScanReport) -> int:
    if args.assert_clean and report.violations:
        return EXIT_VIOLATION
    start = getattr(args, "assert_start", None)
    if start is not None and (report.minimal_start is None or report.minimal_start > start):
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_scan_bo(args, system):
    table = cached_table(system, 2 * args.max, args.cache)
    report = scanner.scan_bo(system, args.max, table=table)
    _emit_report(args, report)
    return _asserted_exit(args, report)


def cmd_scan_logc(args, system):
    table = cached_table(system, args.hi + 1, args.cache)
    report = scanner.scan_logconcavity(system, args.lo, args.hi, args.u, args.e,
                                       table=table, workers=args.workers)
    _emit_report(args, report)
    return _asserted_exit(args, report)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="partlab", description="Exact restricted partition counts and inequality scans.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, fn, help_text, fmt=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--parts", type=_parts, required=True, help="comma-separated parts, repeats allowed")
        p.add_argument("--out", help="output path (default: standard output)")
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")
        p.set_defaults(func=fn)
        return p

    p = command("eval", cmd_eval, "print p_A(n, k)")
    p.add_argument("--n", type=_nonneg, required=True)

    p = command("delta-csv", cmd_delta_csv, "CSV of p and the log-concavity defect")
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.add_argument("--cache", help="directory for cached partition tables")

    p = command("qp", cmd_qp, "quasi-polynomial coefficients", fmt=True)
    p.add_argument("--method", choices=("fit", "cnt"), default="fit")

    p = command("sigma", cmd_sigma, "symmetric sigma coefficients", fmt=True)
    p.add_argument("--m", type=_nonneg, help="truncation order (default k)")

    p = command("bounds", cmd_bounds, "envelope constants and polynomials")
    p.add_argument("--j", type=_nonneg, help="coprimality level for the stable-part envelope")

    command("thresholds", cmd_thresholds, "guaranteed inequality thresholds")
    command("classify", cmd_classify, "eventual Bessenrodt-Ono and log-concavity")

    for name, fn, help_text in (("scan-bo", cmd_scan_bo, "scan p(a)p(b) > p(a+b)"),
                                ("scan-logc", cmd_scan_logc, "scan (strengthened) log-concavity")):
        p = command(name, fn, help_text, fmt=True)
        p.add_argument("--cache", help="directory for cached partition tables")
        p.add_argument("--assert", dest="assert_clean", action="store_true",
                       help="exit 2 when any violation is found")
        if name == "scan-bo":
            p.add_argument("--max", type=_nonneg, required=True)
        else:
            p.add_argument("--lo", type=_nonneg, default=2)
            p.add_argument("--hi", type=_nonneg, required=True)
            p.add_argument("--u", type=_positive_rational)
            p.add_argument("--e", type=_nonneg)
            p.add_argument("--workers", type=_nonneg, default=1)
            p.add_argument("--assert-start", type=_nonneg, metavar="N",
                           help="exit 2 unless the scan shows the inequality from N on")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        system = make_part_system(args.parts)
        return args.func(args, system)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except PartlabError as exc:
        print(f"partlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"partlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
