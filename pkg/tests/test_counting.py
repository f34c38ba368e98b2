import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclocsm import kernels
from cyclocsm.catalog import CATALOG_N
from cyclocsm.counting import (basic_index_factorization, coefficient_table, count,
                               enumerate_csms, euler_factor, ideal_count, is_coincidence_index,
                               multiple_count, simple_count, summatory)
from cyclocsm.errors import ArithmeticOverflowError, DomainError, ResourceError

BACKENDS = [pytest.param(kernels.pure, id="pure")]
if kernels.compiled is not None:
    BACKENDS.append(pytest.param(kernels.compiled, id="compiled"))


@pytest.mark.parametrize("n, k, expected", [
    (3, 7, 2), (3, 1, 1), (84, 1, 1), (3, 91, 4), (16, 289, 32), (16, 17, 8), (8, 3, 0),
    (3, 49, 2), (4, 25, 2),
])
def test_simple_count(n, k, expected):
    assert simple_count(n, k) == expected


@pytest.mark.parametrize("n, k, expected", [
    (3, 49, 3), (3, 7, 2), (4, 25, 3), (11, 59049, 3), (3, 343, 4),
])
def test_multiple_count(n, k, expected):
    assert multiple_count(n, k) == expected


@pytest.mark.parametrize("n, k, expected", [(3, 3, 1), (3, 7, 2), (3, 2, 0), (3, 4, 1), (3, 9, 1)])
def test_ideal_count(n, k, expected):
    assert ideal_count(n, k) == expected


def test_count_rejects_bad_input():
    with pytest.raises(DomainError):
        simple_count(3, 0)
    with pytest.raises(DomainError):
        count(3, "double", 7)
    with pytest.raises(DomainError):
        multiple_count(6, 7)


def test_euler_factor_small_cases():
    # ((1+x)/(1-x))^1 = 1 + 2x + 2x^2 + ...
    assert [euler_factor("simple", 2, j) for j in range(4)] == [1, 2, 2, 2]
    # (1-x)^-2
    assert [euler_factor("multiple", 2, j) for j in range(4)] == [1, 2, 3, 4]
    # ((1+x)/(1-x))^2 = 1 + 4x + 8x^2 + 12x^3
    assert [euler_factor("simple", 4, j) for j in range(4)] == [1, 4, 8, 12]


def test_out_of_range_k_is_an_error_not_a_wrap():
    for k in (2 ** 63, 13 ** 4000):
        with pytest.raises(ArithmeticOverflowError):
            simple_count(84, k)
    # largest in-range powers are still exact
    assert multiple_count(3, 7 ** 22) == 23


def test_is_coincidence_index():
    assert not is_coincidence_index(3, 21)
    assert is_coincidence_index(3, 49)
    assert is_coincidence_index(8, 9)
    assert all(is_coincidence_index(n, 1) for n in CATALOG_N)


def test_basic_index_factorization():
    assert basic_index_factorization(3, 49) == [(7, 7, 2)]
    assert basic_index_factorization(8, 9) == [(3, 9, 1)]
    assert basic_index_factorization(3, 1) == []
    with pytest.raises(DomainError):
        basic_index_factorization(3, 21)


@pytest.mark.parametrize("backend", BACKENDS)
def test_table_examples(backend):
    assert coefficient_table(3, "simple", 50, backend=backend)[49] == 2
    assert coefficient_table(3, "multiple", 50, backend=backend)[49] == 3
    assert coefficient_table(5, "ideal", 1, backend=backend)[1] == 1


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("n", [3, 4, 8, 12, 20, 60, 84])
@pytest.mark.parametrize("kind", ["simple", "multiple", "ideal"])
def test_table_equals_pointwise(backend, n, kind):
    values = coefficient_table(n, kind, 10_000, backend=backend).values
    assert values[0] == 0
    assert all(values[k] == count(n, kind, k) for k in range(1, 10_001))


@pytest.mark.skipif(kernels.compiled is None, reason="compiled extension not built")
@pytest.mark.parametrize("n", CATALOG_N)
def test_backends_agree(n):
    for kind in ("simple", "multiple", "ideal"):
        a = coefficient_table(n, kind, 200_000, backend=kernels.compiled).values
        b = coefficient_table(n, kind, 200_000, backend=kernels.pure).values
        assert np.array_equal(a, b)


@pytest.mark.skipif(kernels.compiled is None, reason="compiled extension not built")
def test_thread_count_does_not_change_results():
    one = coefficient_table(12, "multiple", 300_000, threads=1).values
    four = coefficient_table(12, "multiple", 300_000, threads=4).values
    assert np.array_equal(one, four)


def test_table_budget():
    with pytest.raises(ResourceError):
        coefficient_table(3, "simple", 10 ** 6, budget=1000)
    with pytest.raises(DomainError):
        coefficient_table(3, "simple", 0)


def test_summatory():
    assert summatory(3, "simple", 10) == (3, 0.3)
    for kind in ("simple", "multiple", "ideal"):
        assert summatory(5, kind, 1) == (1, 1.0)
    _, slope = summatory(3, "simple", 10 ** 6)
    assert abs(slope - 0.275664) / 0.275664 < 0.005


def test_enumerate_examples():
    seven = enumerate_csms(3, 7, "simple")
    assert [f.entries for f in seven] == [((7, 0, 0, 1),), ((7, 0, 1, 0),)]
    forty_nine = enumerate_csms(3, 49, "multiple")
    assert len(forty_nine) == 3
    assert sum(not f.is_simple for f in forty_nine) == 1
    assert [f.entries for f in forty_nine if not f.is_simple] == [((7, 0, 1, 1),)]
    assert enumerate_csms(3, 5, "multiple") == []
    with pytest.raises(ResourceError):
        enumerate_csms(16, 289, "simple", cap=10)


@pytest.mark.parametrize("n", [3, 4, 5, 8, 12])
def test_enumeration_matches_counts(n):
    for kind, fn in (("simple", simple_count), ("multiple", multiple_count)):
        for k in range(1, 10_001):
            found = enumerate_csms(n, k, kind)
            assert len(found) == fn(n, k)
            for f in found:
                assert f.norm == k
                assert f.is_simple or kind == "multiple"
        # deterministic order
        assert enumerate_csms(n, 7 ** 2 * 13, kind) == enumerate_csms(n, 7 ** 2 * 13, kind)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(CATALOG_N), st.integers(1, 3000), st.integers(1, 3000))
def test_multiplicativity(n, k, l):
    if math.gcd(k, l) != 1:
        return
    for kind in ("simple", "multiple", "ideal"):
        assert count(n, kind, k * l) == count(n, kind, k) * count(n, kind, l)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(CATALOG_N), st.integers(1, 10 ** 9))
def test_ordering_and_support(n, k):
    a, b, c = ideal_count(n, k), multiple_count(n, k), simple_count(n, k)
    assert a >= b >= c >= 0
    assert (b == 0) == (c == 0)
    assert is_coincidence_index(n, k) == (c > 0)
