"""Command-line front end: ``cyclocsm <command> [options]``.

Exit codes: 0 ok, 2 usage/domain error, 3 verification mismatch,
4 I/O failure, 5 resource or convergence failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass, field as dc_field
from typing import Any, Optional, Sequence

from . import tables
from .analytic import residues
from .catalog import CATALOG_N, catalog, check_n, classify_prime
from .counting import (basic_index_factorization, coefficient_table,
                       is_coincidence_index, summatory)
from .errors import (ArithmeticOverflowError, ConvergenceError, DomainError,
                     ResourceError)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_IO, EXIT_RESOURCE = 0, 2, 3, 4, 5
MAX_REPORTED_MISMATCHES = 10


@dataclass
class RunReport:
    command: str
    n_values: list[int]
    status: str = "ok"
    mismatches: list[tuple[str, str, str]] = dc_field(default_factory=list)
    elapsed: float = 0.0
    notices: list[str] = dc_field(default_factory=list)

    def add(self, items: Sequence[tables.Mismatch]) -> None:
        self.mismatches.extend((m.location, m.expected, m.got) for m in items)
        self.status = "mismatch" if self.mismatches else "ok"


class _Output:
    """Collects one command's results and renders them in the chosen format."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.fmt = args.format

    def json(self, results: Any) -> str:
        params = {k: v for k, v in vars(self.args).items()
                  if k not in ("func", "format", "command")}
        doc = {"schema_version": SCHEMA_VERSION, "command": self.args.command,
               "params": params, "results": results}
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fixed(x: float) -> str:
    # format() rounds the exact binary value half-to-even at 6 decimals
    return f"{x:.6f}"


def _table(header: Sequence[str], rows: Sequence[Sequence[Any]], fmt: str, args,
           text_sep: str = ", ") -> str:
    if fmt == "csv":
        return _csv(header, rows)
    if fmt == "json":
        return _Output(args).json([dict(zip(header, r)) for r in rows])
    return "".join(text_sep.join(str(c) for c in r) + "\n" for r in rows)


def _emit(text: str, path: Optional[str] = None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands

def cmd_fields(args) -> int:
    rows = [(f.n, f.degree, f.symmetry_order, "yes" if f.is_prime_power else "no")
            for f in catalog()]
    if args.format == "json":
        rows_json = [{"n": n, "phi": d, "N": N, "prime_power": pp == "yes"}
                     for n, d, N, pp in rows]
        _emit(_Output(args).json(rows_json))
    else:
        _emit(_table(("n", "phi", "N", "prime_power"), rows, args.format, args))
    return EXIT_OK


def _prime_class(s) -> str:
    if s.is_ramified:
        return "ramified"
    if s.is_complex_splitting:
        return "complex-split"
    return "inert-like" if s.num_primes == 1 else "split-real"


def cmd_primes(args) -> int:
    from sympy import primerange

    n = check_n(args.n)
    if args.max_p < 2:
        raise DomainError(f"--max-p must be >= 2, got {args.max_p}")
    header = ("p", "class", "complex_split", "e", "f", "g", "basic_index")
    rows = []
    for p in primerange(2, args.max_p + 1):
        s = classify_prime(n, p)
        rows.append((p, _prime_class(s), "yes" if s.is_complex_splitting else "no",
                     s.ramification, s.residue_degree, s.num_primes,
                     s.basic_index if s.basic_index is not None else ""))
    if args.format == "text":
        shown = [tuple(c if c != "" else "-" for c in r) for r in rows]
        _emit(_table(header, [header] + shown, "text", args))
    else:
        _emit(_table(header, rows, args.format, args))
    return EXIT_OK


def cmd_coeffs(args) -> int:
    n = check_n(args.n)
    kind = args.kind
    if kind == "diff":
        mult = coefficient_table(n, "multiple", args.max_k, threads=args.threads).values
        simp = coefficient_table(n, "simple", args.max_k, threads=args.threads).values
        values = mult - simp
    else:
        values = coefficient_table(n, kind, args.max_k, threads=args.threads).values
    rows = [(k, int(values[k])) for k in range(1, args.max_k + 1)
            if args.dense or values[k]]
    if args.format == "json":
        text = _Output(args).json([{"k": k, "value": v} for k, v in rows])
    else:
        text = _csv(("k", "value"), rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_residues(args) -> int:
    ns = list(CATALOG_N) if args.all or args.n is None else [check_n(args.n)]
    t0 = time.perf_counter()
    reports = {n: residues(n) for n in ns}
    report = RunReport("residues", ns)
    if args.check:
        report.add(tables.compare_residues(ns, tol=args.tol, reports=reports))
    report.elapsed = time.perf_counter() - t0
    if args.format == "json":
        res = {"residues": [{"n": n, **{k: v for k, v in asdict(r).items()}}
                            for n, r in reports.items()]}
        if args.check:
            res["report"] = _report_dict(report)
        _emit(_Output(args).json(res))
    else:
        header = ("n", "alpha", "beta", "gamma", "q", "alpha_err", "beta_err", "gamma_err")
        rows = [(n, _fixed(r.alpha), _fixed(r.beta), _fixed(r.gamma), _fixed(r.q),
                 f"{r.alpha_err:.1e}", f"{r.beta_err:.1e}", f"{r.gamma_err:.1e}")
                for n, r in reports.items()]
        if args.format == "csv":
            _emit(_csv(header, rows))
        else:
            for n, a, b, g, q, ae, be, ge in rows:
                _emit(f"n={n} alpha={a} (±{ae}) beta={b} (±{be}) gamma={g} (±{ge}) q={q}\n")
        if args.check:
            _report_text(report)
    return EXIT_MISMATCH if report.status == "mismatch" else EXIT_OK


def cmd_spectrum(args) -> int:
    n = check_n(args.n)
    k = args.k
    member = is_coincidence_index(n, k)
    witness = basic_index_factorization(n, k) if member else []
    if args.format == "json":
        _emit(_Output(args).json({
            "n": n, "k": k, "member": member,
            "factorization": [{"p": p, "basic_index": b, "multiplicity": e}
                              for p, b, e in witness]}))
    else:
        line = "true" if member else "false"
        if member:
            parts = [str(b) for _, b, e in witness for _ in range(e)]
            line += f" {k} = " + ("·".join(parts) if parts else "1")
            powers = [f"{b}={p}^{_log(b, p)}" for p, b, _ in witness if b != p]
            if powers:
                line += " (basic: " + ", ".join(powers) + ")"
        _emit(line + "\n")
    return EXIT_OK


def _report_dict(report: RunReport) -> dict:
    """Machine-readable report; wall-clock time is left out to keep output reproducible."""
    out = asdict(report)
    del out["elapsed"]
    return out


def _log(b: int, p: int) -> int:
    e = 0
    while b > 1:
        b //= p
        e += 1
    return e


def _report_text(report: RunReport) -> None:
    for note in report.notices:
        sys.stdout.write(note + "\n")
    sys.stdout.write(f"{report.command}: {report.status} ({len(report.mismatches)} mismatches)\n")
    sys.stderr.write(f"elapsed {report.elapsed:.2f} s\n")
    for loc, exp, got in report.mismatches[:MAX_REPORTED_MISMATCHES]:
        sys.stdout.write(f"  {loc}: expected {exp}, got {got}\n")


def cmd_verify(args) -> int:
    from .counting import multiple_count, simple_count
    from .oracle import brute_force_counts

    ns = list(CATALOG_N) if args.n is None else [check_n(args.n)]
    report = RunReport("verify", ns)
    t0 = time.perf_counter()
    run_oracle = args.max_k is not None or not args.tables
    max_k = args.max_k if args.max_k is not None else 10_000
    if args.tables or args.max_k is None or any(n not in (3, 4) for n in ns):
        report.add(tables.compare_tables(ns))
    if run_oracle:
        for n in ns:
            if n not in (3, 4):
                if args.n is not None:
                    report.notices.append(
                        f"n={n}: no element oracle (only n=3, 4); table-only mode")
                continue
            found = []
            for k in range(1, max_k + 1):
                got = brute_force_counts(n, k)
                want = (simple_count(n, k), multiple_count(n, k))
                if got != want:
                    found.append(tables.Mismatch(f"oracle n={n} k={k}", str(want), str(got)))
            report.add(found)
    report.elapsed = time.perf_counter() - t0
    if args.format == "json":
        _emit(_Output(args).json(_report_dict(report)))
    else:
        _report_text(report)
    return EXIT_MISMATCH if report.status == "mismatch" else EXIT_OK


def _checkpoints(x: int) -> list[int]:
    pts, decade = [], 1
    while decade <= x:
        pts.extend(m * decade for m in (1, 2, 5) if m * decade <= x)
        decade *= 10
    if not pts or pts[-1] != x:
        pts.append(x)
    return pts


def cmd_summatory(args) -> int:
    n = check_n(args.n)
    if args.x < 1:
        raise DomainError(f"--x must be >= 1, got {args.x}")
    values = coefficient_table(n, args.kind, args.x, threads=args.threads).values
    total, slope = summatory(n, args.kind, args.x, threads=args.threads)
    rep = residues(n)
    target = {"simple": rep.gamma, "multiple": rep.beta, "ideal": rep.alpha}[args.kind]
    deviation = abs(slope - target) / target
    if args.emit:
        cum = values.cumsum()
        rows = [(xi, repr(int(cum[xi]) / xi)) for xi in _checkpoints(args.x)]
        _emit(_csv(("x", "S_over_x"), rows), args.emit)
    if args.format == "json":
        _emit(_Output(args).json({"n": n, "kind": args.kind, "x": args.x, "S": total,
                                  "slope": slope, "target": target,
                                  "relative_deviation": deviation}))
    elif args.format == "csv":
        _emit(_csv(("n", "kind", "x", "S", "slope", "target", "relative_deviation"),
                   [(n, args.kind, args.x, total, _fixed(slope), _fixed(target),
                     _fixed(deviation))]))
    else:
        _emit(f"S({args.x}) = {total}\nS/x = {_fixed(slope)}\n"
              f"target residue = {_fixed(target)}\n"
              f"relative deviation = {deviation * 100:.6f}%\n")
    return EXIT_OK


# ------------------------------------------------------------------ parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep the usage exit code at 2, message on stderr
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    def common(default_format: str = "text") -> list[argparse.ArgumentParser]:
        # a fresh parent per command: argparse shares parent actions, so one
        # command's defaults would otherwise leak into the others
        parent = argparse.ArgumentParser(add_help=False)
        parent.add_argument("--format", choices=("text", "csv", "json"), default=default_format)
        parent.add_argument("--threads", type=int, default=1,
                            help="worker threads for the coefficient sieve")
        return [parent]

    parser = _Parser(prog="cyclocsm",
                     description="Coincidence site modules of class-number-one "
                                 "cyclotomic fields")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fields", parents=common(), help="list the 29 catalog fields")
    p.set_defaults(func=cmd_fields)

    p = sub.add_parser("primes", parents=common(), help="classify primes p <= max-p")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-p", type=int, default=100)
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("coeffs", parents=common("csv"), help="dump Dirichlet series coefficients")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("simple", "multiple", "ideal", "diff"), default="simple")
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--dense", action="store_true", help="also write zero coefficients")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("residues", parents=common(), help="residues alpha, beta, gamma, q")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--n", type=int)
    g.add_argument("--all", action="store_true")
    p.add_argument("--check", action="store_true", help="compare with the shipped table")
    p.add_argument("--tol", type=float, default=5e-7)
    p.set_defaults(func=cmd_residues)

    p = sub.add_parser("spectrum", parents=common(), help="is k a coincidence index?")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", parents=common(),
                       help="oracle equivalence and table reproduction")
    p.add_argument("--n", type=int)
    p.add_argument("--max-k", type=int)
    p.add_argument("--tables", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("summatory", parents=common(), help="summatory function and slope")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("simple", "multiple", "ideal"), default="simple")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--emit", help="write (x, S(x)/x) checkpoints as CSV")
    p.set_defaults(func=cmd_summatory)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ResourceError, ConvergenceError, ArithmeticOverflowError, MemoryError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
