"""Dirichlet characters, L-values and the residue constants.

Kernels
-------
Hurwitz zeta is evaluated by Euler-Maclaurin summation: a is shifted by K
integers until a + K >= 15, then the tail is an integral plus eight
Bernoulli corrections.  Digamma uses upward recurrence to x >= 10 and the
asymptotic series.  Both run in double precision with errors far below
1e-12 in the range used here.

L(s, chi) is assembled from Hurwitz values over one period of chi; at s = 1
the pole cancels by orthogonality and digamma values take their place.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from sympy import factorint, primitive_root

from .catalog import check_n, euler_phi, field
from .errors import ConvergenceError, DomainError, PoleError

# B_2, B_4, ..., B_16
_BERNOULLI = (Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
              Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510))
_EM_SHIFT = 15.0
_PSI_SHIFT = 10.0
Q_LEVEL_CAP = 24
IMAG_TOL = 1e-10


# ---------------------------------------------------------------- kernels

def _em_tail(s: float, x: float, scale: float) -> float:
    """scale^-s * zeta(s, x / scale) minus its explicit head, for x >= 15 * scale."""
    # written in the unscaled variable X = x so that large s cannot overflow
    terms = [x ** (1.0 - s) / (scale * (s - 1.0)), 0.5 * x ** (-s)]
    rising = s
    xpow = x ** (-s - 1.0)
    fact = 2.0
    for j, b in enumerate(_BERNOULLI, start=1):
        terms.append(float(b) / fact * rising * xpow * scale ** (2 * j - 1))
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        xpow /= x * x
        fact *= (2 * j + 1) * (2 * j + 2)
    return math.fsum(terms)


def _hurwitz_scaled(s: float, r: float, q: float) -> float:
    """q^-s * zeta(s, r/q) = sum_{k>=0} (r + k q)^-s, for 0 < r <= q."""
    K = max(0, math.ceil(_EM_SHIFT - r / q))
    head = [(r + k * q) ** (-s) for k in range(K)]
    head.append(_em_tail(s, r + K * q, q))
    return math.fsum(head)


def hurwitz_zeta(s: float, a: float) -> float:
    """Hurwitz zeta(s, a) for real s != 1 and 0 < a <= 1."""
    if s == 1:
        raise PoleError("zeta(s, a) has a pole at s = 1")
    if not 0 < a <= 1:
        raise DomainError(f"a must lie in (0, 1], got {a}")
    return _hurwitz_scaled(float(s), float(a), 1.0)


def riemann_zeta(s: float) -> float:
    return hurwitz_zeta(s, 1.0)


def digamma(a: float) -> float:
    """Gamma'(a) / Gamma(a) for a > 0."""
    if a <= 0:
        raise DomainError(f"digamma needs a > 0, got {a}")
    a = float(a)
    shift = []
    while a < _PSI_SHIFT:
        shift.append(1.0 / a)
        a += 1.0
    inv2 = 1.0 / (a * a)
    series = [math.log(a), -0.5 / a]
    p = inv2
    for k, b in enumerate(_BERNOULLI, start=1):
        series.append(-float(b) / (2 * k) * p)
        p *= inv2
    return math.fsum(series) - math.fsum(shift)


# ------------------------------------------------------------- characters

@dataclass(frozen=True)
class DirichletCharacter:
    """Primitive character chi with exact values exp(2 pi i e) as e = Fraction.

    ``values`` maps each residue r in 1..conductor coprime to the conductor to
    its exponent e in [0, 1).
    """

    modulus: int
    conductor: int
    parity: str
    values: Mapping[int, Fraction]
    is_principal: bool

    def __call__(self, r: int) -> complex:
        e = self.values.get(r % self.conductor) if self.conductor > 1 else Fraction(0)
        if e is None:
            return 0j
        return _root_of_unity(e)

    @property
    def is_even(self) -> bool:
        return self.parity == "even"

    def exponent_sum(self) -> complex:
        """sum over one period of chi(r), evaluated numerically."""
        return sum((_root_of_unity(e) for e in self.values.values()), 0j)


@lru_cache(maxsize=None)
def _root_of_unity(e: Fraction) -> complex:
    # exact on the axes to keep orthogonality sums clean
    quarter = e * 4
    if quarter.denominator == 1:
        return (1 + 0j, 1j, -1 + 0j, -1j)[int(quarter) % 4]
    return cmath.exp(2j * math.pi * float(e))


def _cyclic_components(n: int) -> list[tuple[int, int, int, str]]:
    """Cyclic factors of (Z/nZ)^* as (prime power q, generator, order, kind).

    ``kind`` is "minus" for the {+1, -1} factor of (Z/2^e)^*, "five" for the
    factor generated by 5 when e >= 3, and "cyclic" for odd prime powers.
    """
    comps = []
    for p, e in sorted(factorint(n).items()):
        q = p ** e
        if p == 2:
            if e >= 2:
                comps.append((q, q - 1, 2, "minus"))
            if e >= 3:
                comps.append((q, 5, 2 ** (e - 2), "five"))
        else:
            comps.append((q, primitive_root(q), q // p * (p - 1), "cyclic"))
    return comps


def _discrete_logs(q: int, g: int, order: int) -> dict[int, int]:
    table = {}
    x = 1
    for k in range(order):
        table[x] = k
        x = x * g % q
    return table


def _character_exponent(r: int, comps, exps, logs) -> Fraction:
    total = Fraction(0)
    for (q, _, order, kind), a, log in zip(comps, exps, logs):
        x = r % q
        if kind == "minus":
            k = 0 if x % 4 == 1 else 1
        elif kind == "five":
            # r = +-5^k mod 2^e
            k = log[x if x % 4 == 1 else (-x) % q]
        else:
            k = log[x]
        total += Fraction(a * k, order)
    return total - math.floor(total)


@lru_cache(maxsize=None)
def characters(n: int) -> tuple[DirichletCharacter, ...]:
    """The phi(n) primitive characters inducing the characters mod n.

    Order: principal first, then by conductor, then by value table.
    """
    check_n(n)
    comps = _cyclic_components(n)
    logs = [_discrete_logs(q, g, order) for q, g, order, _ in comps]
    units = [r for r in range(1, n) if math.gcd(r, n) == 1] or [1]
    divisors = sorted(d for d in range(1, n + 1) if n % d == 0)
    out = []
    for exps in _exponent_tuples([c[2] for c in comps]):
        val = {r: _character_exponent(r, comps, exps, logs) for r in units}
        cond = next(d for d in divisors
                    if all(val[r] == 0 for r in units if r % d == 1 % d))
        prim = {}
        for r in range(1, cond + 1):
            if math.gcd(r, cond) != 1:
                continue
            lift = r
            while math.gcd(lift, n) != 1:
                lift += cond
            prim[r % cond if cond > 1 else 1] = val[lift % n if n > 1 else 1]
        parity = "even" if val[(n - 1) % n or 1] == 0 else "odd"
        out.append(DirichletCharacter(
            modulus=n, conductor=cond, parity=parity, values=prim,
            is_principal=cond == 1))
    out.sort(key=lambda c: (not c.is_principal, c.conductor,
                            tuple(c.values[r] for r in sorted(c.values))))
    if len(out) != euler_phi(n):
        raise AssertionError("character count mismatch")
    return tuple(out)


def _exponent_tuples(orders: Sequence[int]):
    if not orders:
        yield ()
        return
    for a in range(orders[0]):
        for rest in _exponent_tuples(orders[1:]):
            yield (a,) + rest


# --------------------------------------------------------------- L-values

def l_value(chi: DirichletCharacter, s: float) -> complex:
    """L(s, chi) for real s >= 1 (s > 1 for the principal character)."""
    q = chi.conductor
    if s < 1:
        raise DomainError(f"l_value needs s >= 1, got {s}")
    if s == 1:
        if chi.is_principal:
            raise PoleError("L(s, principal) has a pole at s = 1")
        terms = [chi(r) * digamma(r / q) for r in chi.values]
        return -complex(math.fsum(t.real for t in terms),
                        math.fsum(t.imag for t in terms)) / q
    if chi.is_principal:
        return complex(riemann_zeta(s))
    terms = [chi(r) * _hurwitz_scaled(float(s), float(r), float(q)) for r in chi.values]
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def _real_product(values: Sequence[complex], what: str) -> float:
    prod = complex(1.0)
    for v in values:
        prod *= v
    if abs(prod.imag) > IMAG_TOL * max(1.0, abs(prod.real)):
        raise ConvergenceError(f"{what} has imaginary part {prod.imag:g}")
    return prod.real


def dedekind_zeta_K(n: int, s: float) -> float:
    """Dedekind zeta of Q(xi_n) as the product of L(s, chi) over all chi."""
    if s <= 1:
        raise DomainError(f"s must exceed 1, got {s}")
    return _real_product([l_value(c, s) for c in characters(n)], "zeta_K")


def dedekind_zeta_L(n: int, s: float) -> float:
    """Dedekind zeta of the maximal real subfield: even characters only."""
    if s <= 1:
        raise DomainError(f"s must exceed 1, got {s}")
    return _real_product([l_value(c, s) for c in characters(n) if c.is_even], "zeta_L")


def phi_value(n: int, s: float) -> float:
    """Generating function of simple CSM counts at real s > 1."""
    f = field(n)
    out = dedekind_zeta_K(n, s) / dedekind_zeta_L(n, 2 * s)
    if f.is_prime_power:
        out /= 1.0 + f.prime_power_base ** (-s)
    return out


def _doubling_product(n: int, s: float, start: int, tol: float = 1e-17):
    """log of prod_{l >= start} phi(2^l s)^(1/2^l), with the list of partial products."""
    logs = []
    level = start
    while True:
        term = math.log(phi_value(n, s * 2.0 ** level)) / 2.0 ** level
        logs.append(term)
        if abs(term) < tol:
            break
        level += 1
        if level > Q_LEVEL_CAP:
            raise ConvergenceError(f"doubling product for n={n} did not converge")
    partial = []
    acc = []
    for t in logs:
        acc.append(t)
        partial.append(math.exp(math.fsum(acc)))
    return math.fsum(logs), partial


def psi_value(n: int, s: float) -> float:
    """Generating function of multiple CSM counts at real s > 1."""
    if s <= 1:
        raise DomainError(f"s must exceed 1, got {s}")
    log_total, _ = _doubling_product(n, s, 0)
    return math.exp(log_total)


# --------------------------------------------------------------- residues

@dataclass(frozen=True)
class ResidueReport:
    n: int
    alpha: float
    gamma: float
    q: float
    beta: float
    alpha_err: float
    gamma_err: float
    q_err: float
    beta_err: float
    q_partials: tuple[float, ...] = ()


_EPS = 2.0 ** -52


def residues(n: int) -> ResidueReport:
    """alpha (zeta_K), gamma (simple), beta (multiple) residues at s = 1, and q = beta/gamma."""
    f = field(n)
    chars = characters(n)
    alpha = _real_product([l_value(c, 1.0) for c in chars if not c.is_principal], "alpha")
    zl2 = dedekind_zeta_L(n, 2.0)
    gamma = alpha / zl2
    if f.is_prime_power:
        p = f.prime_power_base
        gamma *= p / (p + 1)
    log_q, partials = _doubling_product(n, 1.0, 1)
    q = math.exp(log_q)
    # a-posteriori rounding bounds: each L-value carries roughly
    # conductor * 64 ulps, and they enter multiplicatively
    rel = sum(64 * c.conductor for c in chars) * _EPS
    alpha_err = abs(alpha) * rel
    gamma_err = abs(gamma) * 2 * rel
    q_err = abs(q) * (len(partials) * 2 * rel)
    beta = q * gamma
    beta_err = abs(q) * gamma_err + abs(gamma) * q_err
    return ResidueReport(n=n, alpha=alpha, gamma=gamma, q=q, beta=beta,
                         alpha_err=alpha_err, gamma_err=gamma_err, q_err=q_err,
                         beta_err=beta_err, q_partials=tuple(partials))
