import os
import subprocess
import sys

import numpy as np
import pytest
from sympy import primerange

from cyclocsm import _pykernels, kernels
from cyclocsm.errors import ArithmeticOverflowError


def test_pure_prime_sieve():
    assert _pykernels.prime_sieve(1).size == 0
    assert _pykernels.prime_sieve(10_000).tolist() == list(primerange(2, 10_001))


@pytest.mark.skipif(kernels.compiled is None, reason="compiled extension not built")
def test_smallest_prime_factor_sieve():
    spf = np.asarray(kernels.compiled.spf_sieve(10_000))
    from sympy import factorint
    for k in range(2, 10_001):
        assert spf[k] == min(factorint(k))


def _run_table(impl, cls_ell, coef_value):
    # one residue class (everything mod 1) with l = 1 and a huge Euler value
    coef = np.array([[1] + [coef_value] * 10], dtype=np.int64)
    return impl.multiplicative_table(1000, 1, np.array([cls_ell], dtype=np.int64),
                                     np.array([0], dtype=np.int64), np.zeros(0, np.int64),
                                     np.zeros(0, np.int64), np.zeros(0, np.int64), coef)


@pytest.mark.parametrize("impl", [kernels.pure] + ([kernels.compiled] if kernels.compiled else []))
def test_kernel_overflow_is_detected(impl):
    ok = _run_table(impl, 1, 2)
    assert ok[30] == 8 and ok[1] == 1 and ok[0] == 0
    with pytest.raises(ArithmeticOverflowError):
        _run_table(impl, 1, 2 ** 40)


@pytest.mark.parametrize("impl", [kernels.pure] + ([kernels.compiled] if kernels.compiled else []))
def test_kernel_rejects_short_coefficient_matrix(impl):
    with pytest.raises(ValueError):
        impl.multiplicative_table(1000, 1, np.array([1]), np.array([0]), np.zeros(0, np.int64),
                                  np.zeros(0, np.int64), np.zeros(0, np.int64),
                                  np.ones((1, 4), dtype=np.int64))


def test_backend_selection_env():
    code = "from cyclocsm import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, CYCLOCSM_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.strip()
    assert out == "pure"
    env.pop("CYCLOCSM_PURE")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.strip()
    assert out == ("compiled" if kernels.compiled is not None else "pure")
