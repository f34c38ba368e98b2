"""Pure-Python (numpy) fallback for the coefficient sieve.

Same signature and results as the compiled ``_ckernels`` module.  Instead of
factoring every k it walks the primes and multiplies the Euler-factor value
into each slice of multiples, which keeps the Python-level loop at one
iteration per prime.
"""
from __future__ import annotations

import numpy as np

from .errors import ArithmeticOverflowError

I64_MAX = np.iinfo(np.int64).max


def prime_sieve(k_max: int) -> np.ndarray:
    if k_max < 2:
        return np.zeros(0, dtype=np.int64)
    mask = np.ones(k_max + 1, dtype=bool)
    mask[:2] = False
    mask[4::2] = False
    for i in range(3, int(k_max ** 0.5) + 1, 2):
        if mask[i]:
            mask[i * i::2 * i] = False
    return np.flatnonzero(mask).astype(np.int64)


def multiplicative_table(k_max, n, cls_ell, cls_row, ram_p, ram_ell, ram_row,
                         coef, threads=1):
    """Values of the multiplicative function on 0..k_max (index 0 is 0).

    ``threads`` is accepted for interface parity and ignored.
    """
    values = np.ones(k_max + 1, dtype=np.int64)
    values[0] = 0
    ramified = {int(p): (int(e), int(r)) for p, e, r in zip(ram_p, ram_ell, ram_row)}
    coef = np.asarray(coef, dtype=np.int64)
    if coef.shape[1] < k_max.bit_length():
        raise ValueError("coef needs a column for every exponent up to log2(k_max)")
    overflow = False
    for p in prime_sieve(k_max).tolist():
        if p in ramified:
            ell, row = ramified[p]
        else:
            ell, row = int(cls_ell[p % n]), int(cls_row[p % n])
        if ell == 0:
            values[p::p] = 0
            continue
        count = k_max // p
        mult = np.zeros(count, dtype=np.int64)
        e, pe = 1, p
        while pe <= k_max:
            fac = int(coef[row, e // ell]) if e % ell == 0 else 0
            # positions of multiples of p^e inside the multiples of p
            mult[pe // p - 1::pe // p] = fac
            e += 1
            pe *= p
        sl = values[p::p]
        with np.errstate(over="ignore"):
            nz = mult > 1
            if nz.any():
                limit = I64_MAX // mult[nz]
                if (np.abs(sl[nz]) > limit).any():
                    overflow = True
        sl *= mult
    if overflow:
        raise ArithmeticOverflowError("coefficient exceeds the 64-bit range")
    return values
