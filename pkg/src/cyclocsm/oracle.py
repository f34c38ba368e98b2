"""Exact, formula-free checks of the coincidence counts.

Two independent routes are provided:

* For n = 3 (Eisenstein) and n = 4 (Gaussian integers) elements of a given
  norm are enumerated directly and factored by trial division in the ring,
  which yields simple/multiple CSM counts without any Euler factor.
* For any catalog n, the intersection of Z[xi_n] with rotated copies
  (u_i / v_i) Z[xi_n] is computed exactly as an integer lattice in the power
  basis and returned in Hermite normal form; its determinant is the
  coincidence index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .catalog import check_n, euler_phi
from .errors import DomainError, ResourceError

Vector = tuple[int, ...]


# ------------------------------------------------- cyclotomic arithmetic

def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def reduce_poly(n: int, coeffs: Sequence[int]) -> Vector:
    """Coordinates of sum c_j xi^j in the power basis 1, xi, ..., xi^(phi-1)."""
    phi_poly = cyclotomic_polynomial(n)
    d = len(phi_poly) - 1
    c = list(coeffs) + [0] * max(0, d - len(coeffs))
    for top in range(len(c) - 1, d - 1, -1):
        lead = c[top]
        if lead:
            for j in range(d + 1):
                c[top - d + j] -= lead * phi_poly[j]
    return tuple(c[:d])


def ring_mul(n: int, u: Sequence[int], v: Sequence[int]) -> Vector:
    prod = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                prod[i + j] += a * b
    return reduce_poly(n, prod)


def conjugate(n: int, u: Sequence[int]) -> Vector:
    """Complex conjugate: xi -> xi^(n-1)."""
    coeffs = [0] * n
    for j, a in enumerate(u):
        coeffs[(-j) % n] += a
    return reduce_poly(n, coeffs)


def mult_matrix(n: int, u: Sequence[int]) -> list[list[int]]:
    """Integer matrix (rows) of z -> u z in the power basis."""
    d = euler_phi(n)
    cols = []
    cur = tuple(u) + (0,) * (d - len(u))
    shift = [0, 1] + [0] * (d - 2) if d > 1 else [0]
    for _ in range(d):
        cols.append(cur)
        cur = ring_mul(n, cur, shift)
    return [[cols[c][r] for c in range(d)] for r in range(d)]


def _det(rows: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(r) for r in rows]
    size = len(a)
    sign, prev = 1, 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def element_norm(n: int, u: Sequence[int]) -> int:
    """Field norm N_{K/Q}(u) = det of multiplication by u."""
    check_n(n)
    return _det(mult_matrix(n, u))


def _inverse(rows: list[list[int]]) -> list[list[Fraction]]:
    size = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(size)]
         for i, r in enumerate(rows)]
    for c in range(size):
        piv = next((i for i in range(c, size) if a[i][c] != 0), None)
        if piv is None:
            raise DomainError("singular matrix: element is zero")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(size):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[size:] for r in a]


# ----------------------------------------------------------------- HNF

def hnf(columns: Iterable[Sequence[int]], dim: int) -> list[list[int]]:
    """Upper-triangular column Hermite normal form of a full-rank lattice.

    Returns the d x d matrix (as rows) whose columns form the reduced basis:
    positive diagonal, 0 <= H[i][j] < H[i][i] for j > i.
    """
    pool = [list(c) for c in columns if any(c)]
    basis: list[list[int]] = [[] for _ in range(dim)]
    for i in range(dim - 1, -1, -1):
        active = [c for c in pool if c[i]]
        rest = [c for c in pool if not c[i]]
        if not active:
            raise DomainError("generators do not span a full-rank lattice")
        while len(active) > 1:
            active.sort(key=lambda c: abs(c[i]))
            piv = active[0]
            nxt = [piv]
            for c in active[1:]:
                q = c[i] // piv[i]
                red = [x - q * y for x, y in zip(c, piv)]
                (nxt if red[i] else rest).append(red)
            active = nxt
        piv = active[0]
        if piv[i] < 0:
            piv = [-x for x in piv]
        basis[i] = piv
        pool = [c for c in rest if any(c)]
    for j in range(dim):
        for i in range(j - 1, -1, -1):
            q = basis[j][i] // basis[i][i]
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return [[basis[c][r] for c in range(dim)] for r in range(dim)]


@dataclass(frozen=True)
class SubmoduleBasis:
    n: int
    rank: int
    basis: tuple[tuple[int, ...], ...]
    index: int

    @classmethod
    def from_columns(cls, n: int, columns: Iterable[Sequence[int]]) -> "SubmoduleBasis":
        d = euler_phi(n)
        h = hnf(columns, d)
        return cls(n=n, rank=d, basis=tuple(map(tuple, h)),
                   index=math.prod(h[i][i] for i in range(d)))

    def columns(self) -> list[Vector]:
        return [tuple(row[c] for row in self.basis) for c in range(self.rank)]

    def __contains__(self, vec: Sequence[int]) -> bool:
        v = list(vec)
        for i in range(self.rank - 1, -1, -1):
            if v[i] % self.basis[i][i]:
                return False
            q = v[i] // self.basis[i][i]
            for r in range(i + 1):
                v[r] -= q * self.basis[r][i]
        return True


def principal_ideal(n: int, w: Sequence[int]) -> SubmoduleBasis:
    """HNF basis of w Z[xi_n]."""
    check_n(n)
    m = mult_matrix(n, _coords(n, w))
    d = len(m)
    return SubmoduleBasis.from_columns(n, ([m[r][c] for r in range(d)] for c in range(d)))


Element = Union[Sequence[int], "QuadraticIntegerElement"]


def _coords(n: int, x: Element) -> Vector:
    if isinstance(x, QuadraticIntegerElement):
        if x.n != n:
            raise DomainError(f"element of Z[xi_{x.n}] used with n={n}")
        return (x.a, x.b)
    d = euler_phi(n)
    v = tuple(int(c) for c in x)
    if len(v) > d:
        v = reduce_poly(n, v)
    return v + (0,) * (d - len(v))


def intersect_modules(n: int, rotations: Sequence[tuple[Element, Element]]) -> SubmoduleBasis:
    """Z[xi_n] intersected with (u_i / v_i) Z[xi_n] for every pair, in HNF.

    The dual of an intersection of full-rank lattices is the sum of the
    duals, so the duals are added (an HNF of stacked generators) and the
    result is dualised back.  Everything is exact rational arithmetic.
    """
    check_n(n)
    d = euler_phi(n)
    dual_cols: list[list[Fraction]] = [[Fraction(int(i == j)) for i in range(d)]
                                       for j in range(d)]
    for u, v in rotations:
        u, v = _coords(n, u), _coords(n, v)
        if not any(u) or not any(v):
            raise DomainError("rotation numerator and denominator must be nonzero")
        if ring_mul(n, u, conjugate(n, u)) != ring_mul(n, v, conjugate(n, v)):
            raise DomainError("|u / v| != 1: relative norms of u and v differ")
        # basis of (u/v)O is M_u M_v^-1; its dual basis is (M_v M_u^-1)^T
        mu_inv = _inverse(mult_matrix(n, u))
        mv = mult_matrix(n, v)
        prod = [[sum(mv[r][k] * mu_inv[k][c] for k in range(d)) for c in range(d)]
                for r in range(d)]
        # columns of the transpose are the rows of prod
        dual_cols.extend([list(row) for row in prod])
    den = math.lcm(*(x.denominator for col in dual_cols for x in col))
    h = hnf(([int(x * den) for x in col] for col in dual_cols), d)
    h_inv = _inverse(h)
    # intersection basis = den * h^-T, i.e. columns are den * rows of h^-1
    cols = []
    for row in h_inv:
        col = [x * den for x in row]
        if any(x.denominator != 1 for x in col):
            raise ArithmeticError("intersection is not integral")
        cols.append([int(x) for x in col])
    return SubmoduleBasis.from_columns(n, cols)


# ------------------------------------------- quadratic rings n = 3, 4

@dataclass(frozen=True, order=True)
class QuadraticIntegerElement:
    """a + b xi_n in Z[xi_3] (Eisenstein) or Z[i] (n = 4)."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.n not in (3, 4):
            raise DomainError(f"quadratic elements need n in (3, 4), got {self.n}")

    def __mul__(self, other: "QuadraticIntegerElement") -> "QuadraticIntegerElement":
        a, b, c, d = self.a, self.b, other.a, other.b
        if self.n == 3:
            # xi^2 = -1 - xi
            return QuadraticIntegerElement(3, a * c - b * d, a * d + b * c - b * d)
        return QuadraticIntegerElement(4, a * c - b * d, a * d + b * c)

    def __pow__(self, k: int) -> "QuadraticIntegerElement":
        out = self.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __neg__(self):
        return QuadraticIntegerElement(self.n, -self.a, -self.b)

    def __sub__(self, other):
        return QuadraticIntegerElement(self.n, self.a - other.a, self.b - other.b)

    @staticmethod
    def one(n: int) -> "QuadraticIntegerElement":
        return QuadraticIntegerElement(n, 1, 0)

    def conj(self) -> "QuadraticIntegerElement":
        if self.n == 3:
            return QuadraticIntegerElement(3, self.a - self.b, -self.b)
        return QuadraticIntegerElement(4, self.a, -self.b)

    def norm(self) -> int:
        if self.n == 3:
            return self.a * self.a - self.a * self.b + self.b * self.b
        return self.a * self.a + self.b * self.b

    def is_unit(self) -> bool:
        return self.norm() == 1

    def to_complex(self) -> complex:
        xi = complex(-0.5, math.sqrt(3) / 2) if self.n == 3 else 1j
        return self.a + self.b * xi

    def exact_div(self, other: "QuadraticIntegerElement"):
        """self / other if it lies in the ring, else None."""
        num = self * other.conj()
        nrm = other.norm()
        if num.a % nrm or num.b % nrm:
            return None
        return QuadraticIntegerElement(self.n, num.a // nrm, num.b // nrm)

    def divmod_round(self, other):
        num = self * other.conj()
        nrm = other.norm()
        q = QuadraticIntegerElement(self.n, _round_div(num.a, nrm), _round_div(num.b, nrm))
        return q, self - q * other

    def associates(self) -> list["QuadraticIntegerElement"]:
        return [u * self for u in units(self.n)]

    def canonical(self) -> "QuadraticIntegerElement":
        """The associate with complex argument in [0, 2 pi / N)."""
        for z in self.associates():
            if _in_fundamental_sector(z):
                return z
        raise DomainError("zero has no canonical associate")

    def coords(self) -> Vector:
        return (self.a, self.b)


def _round_div(a: int, b: int) -> int:
    return (2 * a + b) // (2 * b)


def _in_fundamental_sector(z: QuadraticIntegerElement) -> bool:
    if z.n == 4:
        return z.a > 0 and z.b >= 0
    # arg(a + b xi_3) in [0, pi/3)  <=>  b >= 0 and a > b
    return z.b >= 0 and z.a > z.b


@lru_cache(maxsize=None)
def units(n: int) -> tuple[QuadraticIntegerElement, ...]:
    """The N(n) units, as powers of the generator -xi_3 (n = 3) or i (n = 4)."""
    gen = QuadraticIntegerElement(3, 0, -1) if n == 3 else QuadraticIntegerElement(4, 0, 1)
    out = [QuadraticIntegerElement.one(n)]
    while True:
        nxt = out[-1] * gen
        if nxt == out[0]:
            return tuple(out)
        out.append(nxt)


def quad_gcd(x: QuadraticIntegerElement, y: QuadraticIntegerElement) -> QuadraticIntegerElement:
    while y.norm():
        _, r = x.divmod_round(y)
        x, y = y, r
    return x.canonical() if x.norm() else x


def quad_lcm(x: QuadraticIntegerElement, y: QuadraticIntegerElement) -> QuadraticIntegerElement:
    g = quad_gcd(x, y)
    return (x * y).exact_div(g).canonical()


def norm_form_elements(n: int, k: int) -> list[QuadraticIntegerElement]:
    """One canonical representative per unit class of elements with norm k."""
    if n not in (3, 4):
        raise DomainError(f"norm-form enumeration needs n in (3, 4), got {n}")
    if not 1 <= k <= 10 ** 9:
        raise DomainError(f"k must lie in [1, 10^9], got {k}")
    out = []
    b = 0
    if n == 4:
        while b * b < k:
            rem = k - b * b
            a = math.isqrt(rem)
            if a * a == rem and a > 0:
                out.append(QuadraticIntegerElement(4, a, b))
            b += 1
        return out
    # a > b >= 0 and a^2 - ab + b^2 = k  =>  b^2 <= k
    while b * b <= k:
        disc = 4 * k - 3 * b * b
        r = math.isqrt(disc)
        if r * r == disc and (b + r) % 2 == 0:
            a = (b + r) // 2
            if a > b:
                out.append(QuadraticIntegerElement(3, a, b))
        b += 1
    return out


@dataclass(frozen=True)
class RotationWord:
    """eps^unit_exponent * prod (w_p / conj(w_p))^t_p for splitting prime elements w_p."""

    n: int
    unit_exponent: int = 0
    factors: Mapping[QuadraticIntegerElement, int] = dc_field(default_factory=dict)


def _trial_factor(k: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= k:
        while k % p == 0:
            out[p] = out.get(p, 0) + 1
            k //= p
        p += 1
    if k > 1:
        out[k] = out.get(k, 0) + 1
    return out


def _is_prime(p: int) -> bool:
    return p >= 2 and _trial_factor(p) == {p: 1}


@lru_cache(maxsize=None)
def prime_elements(n: int, p: int) -> tuple[str, tuple[QuadraticIntegerElement, ...]]:
    """How p decomposes, found by search: ("inert" | "ramified" | "split", primes)."""
    found = norm_form_elements(n, p)
    if not found:
        return "inert", ()
    w = found[0]
    if w.conj().canonical() == w:
        return "ramified", (w,)
    return "split", (w, w.conj().canonical())


def rotation_from_word(word: RotationWord):
    """(numerator, denominator, sigma) of the coincidence rotation of ``word``.

    The simple CSM is the principal ideal of the numerator; sigma is its norm.
    """
    n = word.n
    num = units(n)[word.unit_exponent % len(units(n))]
    den = QuadraticIntegerElement.one(n)
    seen = set()
    for w, t in word.factors.items():
        p = w.norm()
        if w.n != n or not _is_prime(p) or prime_elements(n, p)[0] != "split":
            raise DomainError(f"{w} is not a splitting prime element of Z[xi_{n}]")
        if p in seen:
            raise DomainError(f"two factors over the rational prime {p}")
        seen.add(p)
        if t > 0:
            num, den = num * w ** t, den * w.conj() ** t
        elif t < 0:
            num, den = num * w.conj() ** (-t), den * w ** (-t)
    return num, den, num.norm()


def _split_exponents(w: QuadraticIntegerElement, pi: QuadraticIntegerElement):
    e = 0
    while True:
        q = w.exact_div(pi)
        if q is None:
            return e, w
        w, e = q, e + 1


def _classify_element(n: int, w: QuadraticIntegerElement, primes: Iterable[int]):
    """(uses only splitting primes, one-sided for every conjugate pair)."""
    one_sided = True
    for p in primes:
        kind, elems = prime_elements(n, p)
        if kind != "split":
            return False, False
        e1, w = _split_exponents(w, elems[0])
        e2, w = _split_exponents(w, elems[1])
        if e1 and e2:
            one_sided = False
    if not w.is_unit():
        raise ArithmeticError("incomplete factorisation")
    return True, one_sided


def brute_force_counts(n: int, k: int) -> tuple[int, int]:
    """(simple, multiple) CSM counts of index k by element enumeration."""
    if n not in (3, 4):
        raise DomainError(f"brute-force counts need n in (3, 4), got {n}")
    if not 1 <= k <= 10 ** 7:
        raise ResourceError(f"k must lie in [1, 10^7], got {k}")
    primes = list(_trial_factor(k))
    simple = multiple = 0
    for w in norm_form_elements(n, k):
        ok, one_sided = _classify_element(n, w, primes)
        if ok:
            multiple += 1
            simple += one_sided
    return simple, multiple
