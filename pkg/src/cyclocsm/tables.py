"""Reference tables shipped as CSV fixtures, and their re-derivation.

Each ``derive_*`` function recomputes a table from first principles; each
``compare_*`` function returns a list of :class:`Mismatch` records (empty
when the derived data reproduce the fixture exactly).
"""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .catalog import CATALOG_N, check_n, euler_phi, residue_class_table
from .counting import multiple_count, simple_count

FIXTURE_ENV = "CCM_FIXTURES"

TABLE_FILES = {
    "basic_indices": "basic_indices.csv",
    "ramified_primes": "ramified_primes.csv",
    "residues": "residues.csv",
    "simple_terms": "simple_terms.csv",
    "multiple_extra": "multiple_extra_terms.csv",
}


@dataclass(frozen=True)
class Mismatch:
    location: str
    expected: str
    got: str


def fixture_dir() -> Path:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "fixtures"


def load(name: str) -> list[dict[str, str]]:
    """Rows of a fixture table as dictionaries of strings."""
    path = fixture_dir() / TABLE_FILES[name]
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def _select(rows: list[dict[str, str]], ns: Optional[Iterable[int]]):
    if ns is None:
        return rows
    wanted = {str(check_n(n)) for n in ns}
    return [r for r in rows if r["n"] in wanted]


def _ns(ns: Optional[Iterable[int]]) -> list[int]:
    return list(CATALOG_N) if ns is None else [check_n(n) for n in ns]


# ---------------------------------------------- splitting-data tables

def derive_basic_indices(n: int) -> list[tuple[int, int]]:
    """(residue class mod n, l) for all complex splitting unit classes."""
    return [(c, ell) for c, (ell, _) in enumerate(residue_class_table(n)) if ell]


def derive_ramified_primes(n: int) -> list[tuple[int, int, int, int, int]]:
    """(p, r, phi(r), l, m) for ramified complex splitting primes p | n."""
    from .catalog import classify_prime

    out = []
    p = 2
    rest = n
    while rest > 1:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            s = classify_prime(n, p)
            if s.is_complex_splitting:
                r = s.p_free_part
                out.append((p, r, euler_phi(r), s.ell, s.m))
        p += 1
    return out


def _diff_lines(tag: str, expected: set[str], got: set[str]) -> list[Mismatch]:
    out = [Mismatch(f"{tag} {line}", "present", "missing") for line in sorted(expected - got)]
    out += [Mismatch(f"{tag} {line}", "absent", "extra") for line in sorted(got - expected)]
    return out


def compare_basic_indices(ns: Optional[Iterable[int]] = None) -> list[Mismatch]:
    ns = _ns(ns)
    expected = {f"{r['n']},{r['residue']},{r['ell']}" for r in _select(load("basic_indices"), ns)}
    got = {f"{n},{c},{ell}" for n in ns for c, ell in derive_basic_indices(n)}
    return _diff_lines("basic_indices", expected, got)


def compare_ramified_primes(ns: Optional[Iterable[int]] = None) -> list[Mismatch]:
    ns = _ns(ns)
    fields = ("n", "p", "r", "phi_r", "ell", "m")
    expected = {",".join(r[f] for f in fields) for r in _select(load("ramified_primes"), ns)}
    got = {",".join(map(str, (n,) + row)) for n in ns for row in derive_ramified_primes(n)}
    return _diff_lines("ramified_primes", expected, got)


# ------------------------------------------------ series-term tables

def compare_simple_terms(ns: Optional[Iterable[int]] = None) -> list[Mismatch]:
    out = []
    for r in _select(load("simple_terms"), ns):
        n, k = int(r["n"]), int(r["k"])
        got = simple_count(n, k)
        if str(got) != r["coefficient"]:
            out.append(Mismatch(f"simple_terms n={n} k={k}", r["coefficient"], str(got)))
    return out


def compare_multiple_extra(ns: Optional[Iterable[int]] = None) -> list[Mismatch]:
    out = []
    for r in _select(load("multiple_extra"), ns):
        n, k = int(r["n"]), int(r["k"])
        got = multiple_count(n, k) - simple_count(n, k)
        if str(got) != r["coefficient"]:
            out.append(Mismatch(f"multiple_extra n={n} k={k}", r["coefficient"], str(got)))
    return out


# --------------------------------------------------------------- residues

def reference_residues() -> dict[int, dict[str, float]]:
    return {int(r["n"]): {key: float(r[key]) for key in ("alpha", "beta", "gamma")}
            for r in load("residues")}


def compare_residues(ns: Optional[Iterable[int]] = None, tol: float = 5e-7,
                     reports: Optional[dict] = None) -> list[Mismatch]:
    """Compare residues against the fixture; ``reports`` caches ResidueReports."""
    from .analytic import residues

    ref = reference_residues()
    out = []
    for n in _ns(ns):
        rep = reports[n] if reports is not None and n in reports else residues(n)
        if reports is not None:
            reports[n] = rep
        for key in ("alpha", "beta", "gamma"):
            got = getattr(rep, key)
            if abs(got - ref[n][key]) > tol:
                out.append(Mismatch(f"residues n={n} {key}", f"{ref[n][key]:.6f}", f"{got:.9f}"))
    return out


EXACT_TABLES = ("basic_indices", "ramified_primes", "simple_terms", "multiple_extra")


def compare_tables(ns: Optional[Iterable[int]] = None,
                   which: Iterable[str] = EXACT_TABLES) -> list[Mismatch]:
    funcs = {"basic_indices": compare_basic_indices, "ramified_primes": compare_ramified_primes,
             "residues": compare_residues, "simple_terms": compare_simple_terms,
             "multiple_extra": compare_multiple_extra}
    ns = None if ns is None else list(ns)
    out: list[Mismatch] = []
    for name in which:
        out.extend(funcs[name](ns))
    return out


__all__ = ["Mismatch", "fixture_dir", "load", "derive_basic_indices", "derive_ramified_primes",
           "compare_basic_indices", "compare_ramified_primes", "compare_residues",
           "compare_simple_terms", "compare_multiple_extra", "compare_tables",
           "reference_residues", "EXACT_TABLES"]
