"""Exact counts of simple and multiple coincidence site modules.

All three arithmetic functions handled here are multiplicative, with Euler
factors in x = p^(-l_p s):

* simple CSMs (c_n):   ((1 + x) / (1 - x))^(m_p / 2)   over complex splitting p
* multiple CSMs (b_n): (1 - x)^(-m_p)                  over complex splitting p
* ideals (a_n):        (1 - x)^(-g)                    over every prime p, l_p = f

so a value at k is a product of binomial expressions in the exponents of k.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Literal

import numpy as np
from sympy import factorint

from . import kernels
from .catalog import (_classify, check_n, euler_phi, multiplicative_order,
                      residue_class_table)
from .errors import ArithmeticOverflowError, DomainError, ResourceError

Kind = Literal["simple", "multiple", "ideal"]
KINDS = ("simple", "multiple", "ideal")

I64_MAX = 2 ** 63 - 1
# entries of int64 storage; 2e8 entries is 1.6 GB
DEFAULT_TABLE_BUDGET = 200_000_000
DEFAULT_ENUMERATION_CAP = 1_000_000


@dataclass(frozen=True)
class CoefficientTable:
    n: int
    kind: str
    k_max: int
    values: np.ndarray = dc_field(repr=False, compare=False)

    def __getitem__(self, k: int) -> int:
        if not 1 <= k <= self.k_max:
            raise IndexError(k)
        return int(self.values[k])

    def nonzero(self) -> Iterator[tuple[int, int]]:
        for k in np.flatnonzero(self.values).tolist():
            yield k, int(self.values[k])


@dataclass(frozen=True)
class IdealFactorization:
    """Exponents of conjugate prime-ideal pairs (p, pair, left, right)."""

    n: int
    entries: tuple[tuple[int, int, int, int], ...]

    @property
    def norm(self) -> int:
        out = 1
        for p, _, left, right in self.entries:
            out *= p ** (_classify(self.n, p).ell * (left + right))
        return out

    @property
    def is_simple(self) -> bool:
        return all(min(left, right) == 0 for _, _, left, right in self.entries)


def _check_kind(kind: str) -> str:
    if kind not in KINDS:
        raise DomainError(f"kind must be one of {KINDS}, got {kind!r}")
    return kind


def _check_k(k: int) -> int:
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    if k > I64_MAX:
        raise ArithmeticOverflowError(
            f"k has {int(k).bit_length()} bits; counts are limited to 64-bit k")
    return int(k)


@lru_cache(maxsize=None)
def euler_factor(kind: str, m: int, j: int) -> int:
    """Coefficient of x^j in the Euler factor of ``kind`` with parameter m.

    For ``simple`` m is m_p (the factor uses m_p / 2 conjugate pairs); for
    ``multiple`` it is m_p and for ``ideal`` the number g of prime ideals.
    """
    if j < 0:
        return 0
    if kind == "simple":
        half = m // 2
        if half == 0:
            return 1 if j == 0 else 0
        return sum(math.comb(half, i) * math.comb(half - 1 + j - i, half - 1)
                   for i in range(min(half, j) + 1))
    if m == 0:
        return 1 if j == 0 else 0
    return math.comb(j + m - 1, m - 1)


def _prime_profile(n: int, kind: str, p: int) -> tuple[int, int]:
    """(l, parameter) of p for ``kind``; l = 0 means p never divides a support index."""
    s = _classify(n, p)
    if kind == "ideal":
        return s.residue_degree, s.num_primes
    if s.is_complex_splitting:
        return s.residue_degree, s.num_primes
    return 0, 0


def _count(n: int, kind: str, k: int) -> int:
    check_n(n)
    _check_kind(kind)
    k = _check_k(k)
    total = 1
    for p, e in factorint(k).items():
        ell, m = _prime_profile(n, kind, p)
        if ell == 0 or e % ell:
            return 0
        total *= euler_factor(kind, m, e // ell)
    if total > I64_MAX:
        raise ArithmeticOverflowError(f"count at k={k} exceeds the 64-bit range")
    return total


def simple_count(n: int, k: int) -> int:
    """Number c_n(k) of simple CSMs of Z[xi_n] with index k."""
    return _count(n, "simple", k)


def multiple_count(n: int, k: int) -> int:
    """Number b_n(k) of multiple CSMs (simple ones included) with index k."""
    return _count(n, "multiple", k)


def ideal_count(n: int, k: int) -> int:
    """Number a_n(k) of (principal) ideals of norm k."""
    return _count(n, "ideal", k)


def count(n: int, kind: str, k: int) -> int:
    return _count(n, kind, k)


def is_coincidence_index(n: int, k: int) -> bool:
    """True iff k is a product of basic indices p^l_p."""
    check_n(n)
    k = _check_k(k)
    for p, e in factorint(k).items():
        ell, _ = _prime_profile(n, "simple", p)
        if ell == 0 or e % ell:
            return False
    return True


def basic_index_factorization(n: int, k: int) -> list[tuple[int, int, int]]:
    """Witness for spectrum membership: (p, basic index p^l, multiplicity).

    Empty for k = 1; raises DomainError when k is not in the spectrum.
    """
    if not is_coincidence_index(n, k):
        raise DomainError(f"{k} is not a coincidence index for n={n}")
    out = []
    for p, e in sorted(factorint(k).items()):
        s = _classify(n, p)
        out.append((p, s.basic_index, e // s.ell))
    return out


def _kernel_inputs(n: int, kind: str, k_max: int):
    cls = residue_class_table(n)
    if kind == "ideal":
        phi = euler_phi(n)
        cls_pairs = []
        for c in range(n):
            if math.gcd(c, n) == 1:
                f = multiplicative_order(c, n)
                cls_pairs.append((f, phi // f))
            else:
                cls_pairs.append((0, 0))
    else:
        cls_pairs = list(cls)
    ram = [p for p in factorint(n)]
    ram_prof = [_prime_profile(n, kind, p) for p in ram]
    jmax = max(1, k_max.bit_length())
    rows = max([m for _, m in cls_pairs] + [m for _, m in ram_prof] + [1])
    coef = np.zeros((rows + 1, jmax + 1), dtype=np.int64)
    for m in range(rows + 1):
        for j in range(jmax + 1):
            v = euler_factor(kind, m, j)
            coef[m, j] = min(v, I64_MAX)
    return (
        np.array([e for e, _ in cls_pairs], dtype=np.int64),
        np.array([m for _, m in cls_pairs], dtype=np.int64),
        np.array(ram, dtype=np.int64),
        np.array([e for e, _ in ram_prof], dtype=np.int64),
        np.array([m for _, m in ram_prof], dtype=np.int64),
        coef,
    )


def coefficient_table(n: int, kind: str, k_max: int, *, threads: int = 1,
                      budget: int = DEFAULT_TABLE_BUDGET,
                      backend=None) -> CoefficientTable:
    """Values of c_n, b_n or a_n on 1..k_max, by a sieve."""
    check_n(n)
    _check_kind(kind)
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    if k_max + 1 > budget:
        raise ResourceError(f"k_max={k_max} exceeds the table budget of {budget} entries")
    impl = backend or kernels.backend
    values = impl.multiplicative_table(k_max, n, *_kernel_inputs(n, kind, k_max),
                                       threads=threads)
    return CoefficientTable(n=n, kind=kind, k_max=k_max, values=values)


def summatory(n: int, kind: str, x: int, **kw) -> tuple[int, float]:
    """S(x) = sum of the coefficients up to x, and the slope S(x) / x."""
    if x < 1:
        raise DomainError(f"x must be >= 1, got {x}")
    table = coefficient_table(n, kind, x, **kw)
    total = int(table.values.sum(dtype=np.int64))
    return total, float(Fraction(total, x))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _pair_assignments(pairs: int, j: int, simple: bool) -> list[tuple[int, ...]]:
    out = []
    for combo in _compositions(j, 2 * pairs):
        if simple and any(combo[2 * i] and combo[2 * i + 1] for i in range(pairs)):
            continue
        out.append(combo)
    return out


def enumerate_csms(n: int, k: int, kind: str = "simple", *,
                   cap: int = DEFAULT_ENUMERATION_CAP) -> list[IdealFactorization]:
    """All CSMs of index k as exponent patterns over conjugate prime pairs.

    Pairs are abstract indices 0..m_p/2 - 1 per prime; no prime elements are
    chosen.  Order: primes ascending, and per prime the exponent vector
    (l_0, r_0, l_1, r_1, ...) ascending lexicographically.
    """
    if kind not in ("simple", "multiple"):
        raise DomainError(f"kind must be 'simple' or 'multiple', got {kind!r}")
    total = _count(n, kind, k)
    if total > cap:
        raise ResourceError(f"{total} CSMs of index {k} exceed the cap {cap}")
    if total == 0:
        return []
    per_prime = []
    for p, e in sorted(factorint(k).items()):
        s = _classify(n, p)
        pairs = s.num_primes // 2
        options = []
        for vec in _pair_assignments(pairs, e // s.ell, kind == "simple"):
            options.append(tuple((p, i, vec[2 * i], vec[2 * i + 1])
                                 for i in range(pairs)
                                 if vec[2 * i] or vec[2 * i + 1]))
        per_prime.append(options)
    return [IdealFactorization(n, tuple(itertools.chain.from_iterable(choice)))
            for choice in itertools.product(*per_prime)]
