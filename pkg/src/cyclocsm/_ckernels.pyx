# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coefficient sieve.

A smallest-prime-factor table is built once; every k is then factored
independently, so disjoint ranges of k can be filled from several threads
with the GIL released.
"""
import numpy as np
from concurrent.futures import ThreadPoolExecutor

from libc.stdint cimport int32_t, int64_t

from .errors import ArithmeticOverflowError

cdef int64_t I64_MAX = 0x7FFFFFFFFFFFFFFF


def spf_sieve(Py_ssize_t k_max):
    """Smallest prime factor of every k <= k_max (linear sieve)."""
    spf_arr = np.zeros(k_max + 1, dtype=np.int32)
    cdef int32_t[:] spf = spf_arr
    primes_arr = np.zeros(k_max // 2 + 16, dtype=np.int32)
    cdef int32_t[:] primes = primes_arr
    cdef Py_ssize_t i, j, np_ = 0
    cdef int64_t prod
    with nogil:
        for i in range(2, k_max + 1):
            if spf[i] == 0:
                spf[i] = <int32_t>i
                primes[np_] = <int32_t>i
                np_ += 1
            for j in range(np_):
                prod = <int64_t>primes[j] * i
                if primes[j] > spf[i] or prod > k_max:
                    break
                spf[prod] = primes[j]
    return spf_arr


cdef int _fill(Py_ssize_t lo, Py_ssize_t hi, int64_t n,
               const int32_t[:] spf, const int64_t[:] cls_ell,
               const int64_t[:] cls_row, const int64_t[:] ram_p,
               const int64_t[:] ram_ell, const int64_t[:] ram_row,
               const int64_t[:, :] coef, int64_t[:] out) noexcept nogil:
    cdef Py_ssize_t k, t, nram = ram_p.shape[0]
    cdef int64_t m, p, e, ell, row, fac, val
    cdef int overflow = 0
    for k in range(lo, hi):
        if k < 1:
            continue
        m = k
        val = 1
        while m > 1:
            p = spf[m]
            e = 0
            while m % p == 0:
                m = m // p
                e += 1
            ell = 0
            row = 0
            if n % p == 0:
                for t in range(nram):
                    if ram_p[t] == p:
                        ell = ram_ell[t]
                        row = ram_row[t]
            else:
                ell = cls_ell[p % n]
                row = cls_row[p % n]
            if ell == 0 or e % ell != 0:
                val = 0
                break
            fac = coef[row, e // ell]
            if fac != 0 and val > I64_MAX // fac:
                overflow = 1
                val = 0
                break
            val = val * fac
        out[k] = val
    return overflow


def multiplicative_table(Py_ssize_t k_max, int64_t n, cls_ell, cls_row,
                         ram_p, ram_ell, ram_row, coef, int threads=1):
    """Values of the multiplicative function on 0..k_max (index 0 is 0)."""
    if np.shape(coef)[1] < k_max.bit_length():
        raise ValueError("coef needs a column for every exponent up to log2(k_max)")
    spf_arr = spf_sieve(k_max)
    out_arr = np.zeros(k_max + 1, dtype=np.int64)
    cdef const int32_t[:] spf = spf_arr
    cdef const int64_t[:] c_ell = np.ascontiguousarray(cls_ell, dtype=np.int64)
    cdef const int64_t[:] c_row = np.ascontiguousarray(cls_row, dtype=np.int64)
    cdef const int64_t[:] r_p = np.ascontiguousarray(ram_p, dtype=np.int64)
    cdef const int64_t[:] r_ell = np.ascontiguousarray(ram_ell, dtype=np.int64)
    cdef const int64_t[:] r_row = np.ascontiguousarray(ram_row, dtype=np.int64)
    cdef const int64_t[:, :] cf = np.ascontiguousarray(coef, dtype=np.int64)
    cdef int64_t[:] out = out_arr

    def run(Py_ssize_t lo, Py_ssize_t hi):
        cdef int flag
        with nogil:
            flag = _fill(lo, hi, n, spf, c_ell, c_row, r_p, r_ell, r_row, cf, out)
        return flag

    if threads <= 1:
        flags = [run(0, k_max + 1)]
    else:
        step = (k_max + threads) // threads
        bounds = [(lo, min(lo + step, k_max + 1)) for lo in range(0, k_max + 1, step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            flags = list(pool.map(lambda b: run(*b), bounds))
    if any(flags):
        raise ArithmeticOverflowError("coefficient exceeds the 64-bit range")
    return out_arr
