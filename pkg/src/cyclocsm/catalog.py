"""The 29 class-number-one cyclotomic rings Z[xi_n] and prime splitting.

A rational prime p is classified in the tower K_n / L_n / Q, where K_n is
the cyclotomic field and L_n its maximal real subfield.  Writing n = p^t * r
with r the p-free part of n, the residue degree is the multiplicative order
of p modulo r, and p is *complex splitting* when -1 is not a power of p
modulo r.  Only complex splitting primes contribute to coincidence indices;
each contributes the basic index p^f.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from sympy import factorint, isprime

from .errors import DomainError

CATALOG_N = (3, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16, 17, 19, 20, 21, 24, 25,
             27, 28, 32, 33, 35, 36, 40, 44, 45, 48, 60, 84)


@dataclass(frozen=True)
class CyclotomicField:
    n: int
    degree: int
    symmetry_order: int
    real_degree: int
    is_prime_power: bool
    prime_power_base: Optional[int] = None


@dataclass(frozen=True)
class PrimeSplitting:
    """Splitting data (e, f, g) of a rational prime p in Q(xi_n).

    ``residue_degree`` is the characteristic integer l_p and ``num_primes``
    the number m_p of prime ideals above p.
    """

    p: int
    n: int
    p_free_part: int
    ramification: int
    residue_degree: int
    num_primes: int
    is_complex_splitting: bool
    basic_index: Optional[int] = None

    @property
    def ell(self) -> int:
        return self.residue_degree

    @property
    def m(self) -> int:
        return self.num_primes

    @property
    def is_ramified(self) -> bool:
        return self.n % self.p == 0


def euler_phi(m: int) -> int:
    """Euler's totient of ``m``."""
    if m < 1:
        raise DomainError(f"euler_phi needs m >= 1, got {m}")
    result = m
    for p in factorint(m):
        result -= result // p
    return result


def multiplicative_order(a: int, modulus: int) -> int:
    """Order of ``a`` in (Z/modulus)^*, with the convention 1 for modulus <= 2."""
    if modulus <= 2:
        return 1
    a %= modulus
    if math.gcd(a, modulus) != 1:
        raise DomainError(f"{a} is not a unit modulo {modulus}")
    k, x = 1, a
    while x != 1:
        x = x * a % modulus
        k += 1
    return k


def _prime_power_base(n: int) -> Optional[int]:
    f = factorint(n)
    return next(iter(f)) if len(f) == 1 else None


@lru_cache(maxsize=None)
def _field(n: int) -> CyclotomicField:
    deg = euler_phi(n)
    base = _prime_power_base(n)
    return CyclotomicField(
        n=n,
        degree=deg,
        symmetry_order=n * 2 // math.gcd(2, n),
        real_degree=deg // 2,
        is_prime_power=base is not None,
        prime_power_base=base,
    )


def catalog() -> list[CyclotomicField]:
    """All 29 admissible fields, ordered by (degree, n)."""
    return sorted((_field(n) for n in CATALOG_N), key=lambda f: (f.degree, f.n))


def check_n(n: int) -> int:
    """Validate a catalog key, naming the canonical alias for n = 2 (mod 4)."""
    if n in CATALOG_N:
        return n
    if isinstance(n, int) and n > 2 and n % 4 == 2 and n // 2 in CATALOG_N:
        raise DomainError(
            f"n={n} is not used: Z[xi_{n}] = Z[xi_{n // 2}], use n={n // 2}")
    valid = ", ".join(map(str, CATALOG_N))
    raise DomainError(f"n={n} is not a class-number-one catalog entry; valid n: {valid}")


def field(n: int) -> CyclotomicField:
    return _field(check_n(n))


def p_free_part(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


@lru_cache(maxsize=4096)
def _classify(n: int, p: int) -> PrimeSplitting:
    r = p_free_part(n, p)
    e = euler_phi(n // r)
    f = multiplicative_order(p, r)
    g = euler_phi(r) // f
    if r <= 2:
        # -1 == 1 here, so the conjugate primes coincide
        cs = False
    else:
        cs = pow(p, f // 2, r) != r - 1 if f % 2 == 0 else True
    return PrimeSplitting(
        p=p, n=n, p_free_part=r, ramification=e, residue_degree=f,
        num_primes=g, is_complex_splitting=cs,
        basic_index=p ** f if cs else None,
    )


def classify_prime(n: int, p: int) -> PrimeSplitting:
    """Split the rational prime ``p`` in Z[xi_n]."""
    check_n(n)
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise DomainError(f"p={p} is not a prime")
    return _classify(n, p)


@lru_cache(maxsize=None)
def residue_class_table(n: int) -> tuple[tuple[int, int], ...]:
    """Per residue class c mod n: (l_p, m_p) for unramified primes p = c (n).

    Entries for classes that are not complex splitting, or not units, are
    (0, 0).
    """
    check_n(n)
    phi = euler_phi(n)
    out = []
    for c in range(n):
        if math.gcd(c, n) != 1:
            out.append((0, 0))
            continue
        f = multiplicative_order(c, n)
        cs = not (f % 2 == 0 and pow(c, f // 2, n) == n - 1)
        out.append((f, phi // f) if cs else (0, 0))
    return tuple(out)


def basic_indices(n: int, p_max: int) -> list[tuple[int, int]]:
    """(p, p^l_p) for every complex splitting prime p <= p_max."""
    check_n(n)
    if p_max < 2:
        raise DomainError(f"p_max must be >= 2, got {p_max}")
    from sympy import primerange

    out = []
    for p in primerange(2, p_max + 1):
        s = _classify(n, p)
        if s.is_complex_splitting:
            out.append((p, s.basic_index))
    return out
