import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from cyclocsm.catalog import CATALOG_N, euler_phi
from cyclocsm.counting import ideal_count, multiple_count, simple_count
from cyclocsm.errors import DomainError
from cyclocsm.oracle import (QuadraticIntegerElement as Q, RotationWord,
                             brute_force_counts, conjugate, cyclotomic_polynomial,
                             element_norm, hnf, intersect_modules, norm_form_elements,
                             prime_elements, principal_ideal, quad_gcd, quad_lcm, ring_mul,
                             rotation_from_word, units)

OMEGA = Q(3, 2, -1)  # 2 - xi_3


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    for n in CATALOG_N:
        assert len(cyclotomic_polynomial(n)) == euler_phi(n) + 1


@pytest.mark.parametrize("n", CATALOG_N)
def test_xi_has_order_n_and_norm_one(n):
    d = euler_phi(n)
    xi = (0, 1) + (0,) * (d - 2)
    power = (1,) + (0,) * (d - 1)
    for _ in range(n):
        power = ring_mul(n, power, xi)
    assert power == (1,) + (0,) * (d - 1)
    assert element_norm(n, xi) == 1
    assert ring_mul(n, xi, conjugate(n, xi)) == (1,) + (0,) * (d - 1)


def test_quadratic_arithmetic():
    assert OMEGA.norm() == 7 and OMEGA.conj().norm() == 7
    assert OMEGA * OMEGA.conj() == Q(3, 7, 0)
    assert Q(4, 1, 2) * Q(4, 1, -2) == Q(4, 5, 0)
    assert element_norm(3, OMEGA.coords()) == 7
    assert len(units(3)) == 6 and len(units(4)) == 4
    assert all(u.is_unit() for u in units(3) + units(4))
    with pytest.raises(DomainError):
        Q(5, 1, 0)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from((3, 4)), st.integers(-50, 50), st.integers(-50, 50),
       st.integers(-50, 50), st.integers(-50, 50))
def test_quadratic_ring_against_generic(n, a, b, c, d):
    x, y = Q(n, a, b), Q(n, c, d)
    assert (x * y).coords() == ring_mul(n, x.coords(), y.coords())
    assert x.conj().coords() == conjugate(n, x.coords())
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.norm() == element_norm(n, x.coords())
    assert abs(x.to_complex()) ** 2 == pytest.approx(x.norm())
    if x.norm():
        z = x.canonical()
        assert z in x.associates() and z.norm() == x.norm()
        assert all(w.canonical() == z for w in x.associates())
        arg = math.atan2(z.to_complex().imag, z.to_complex().real)
        assert -1e-12 <= arg < 2 * math.pi / (6 if n == 3 else 4)
        g = quad_gcd(x, y)
        assert x.exact_div(g) is not None and y.exact_div(g) is not None
        if y.norm():
            m = quad_lcm(x, y)
            assert m.exact_div(x) is not None and m.exact_div(y) is not None
            assert m.norm() * g.norm() == x.norm() * y.norm()


def test_norm_form_examples():
    seven = norm_form_elements(3, 7)
    assert len(seven) == 2
    assert {OMEGA.canonical(), OMEGA.conj().canonical()} == set(seven)
    assert {z.canonical() for z in (Q(4, 1, 2), Q(4, 1, -2))} == set(norm_form_elements(4, 5))
    assert norm_form_elements(3, 2) == []
    assert norm_form_elements(3, 1) == [Q(3, 1, 0)] and norm_form_elements(4, 1) == [Q(4, 1, 0)]
    with pytest.raises(DomainError):
        norm_form_elements(5, 5)


@pytest.mark.parametrize("n", [3, 4])
def test_norm_form_count_is_ideal_count(n):
    for k in range(1, 3000):
        found = norm_form_elements(n, k)
        assert len(found) == ideal_count(n, k)
        assert all(z.norm() == k and z.canonical() == z for z in found)


def test_prime_elements():
    assert prime_elements(3, 2)[0] == "inert"
    assert prime_elements(3, 3)[0] == "ramified"
    assert prime_elements(3, 7)[0] == "split"
    assert prime_elements(4, 2)[0] == "ramified"
    assert prime_elements(4, 3)[0] == "inert"


def test_rotation_from_word():
    num, den, sigma = rotation_from_word(RotationWord(3, 0, {OMEGA.canonical(): 1}))
    assert sigma == 7 and num.canonical() in (OMEGA.canonical(), OMEGA.conj().canonical())
    assert rotation_from_word(RotationWord(3)) == (Q(3, 1, 0), Q(3, 1, 0), 1)
    num, den, sigma = rotation_from_word(RotationWord(4, 0, {Q(4, 2, 1): 2}))
    assert sigma == 25
    assert abs(abs(num.to_complex() / den.to_complex()) - 1) < 1e-12
    assert sigma == (Q(4, 1, 2) ** 2).norm()
    with pytest.raises(DomainError):
        rotation_from_word(RotationWord(3, 0, {Q(3, 2, 1): 1}))  # norm 3, ramified
    with pytest.raises(DomainError):
        rotation_from_word(RotationWord(4, 0, {Q(4, 2, 1): 1, Q(4, 1, 2): 1}))


def test_brute_force_examples():
    assert brute_force_counts(3, 49) == (2, 3)
    assert brute_force_counts(3, 7) == (2, 2)
    assert brute_force_counts(4, 3) == (0, 0)
    assert brute_force_counts(4, 1) == (1, 1)


@pytest.mark.parametrize("n", [3, 4])
def test_brute_force_agrees_with_formulas(n):
    for k in range(1, 5000):
        assert brute_force_counts(n, k) == (simple_count(n, k), multiple_count(n, k)), k


def test_hnf_shape():
    h = hnf([(4, 6), (2, 8)], 2)
    assert h[1][0] == 0 and h[0][0] > 0 and h[1][1] > 0
    assert 0 <= h[0][1] < h[0][0]
    assert abs(4 * 8 - 6 * 2) == h[0][0] * h[1][1]
    with pytest.raises(DomainError):
        hnf([(1, 2), (2, 4)], 2)


def test_worked_intersections():
    assert intersect_modules(3, [(OMEGA.conj(), OMEGA)]).index == 7
    z = (Q(4, 1, 2), Q(4, 1, -2))
    assert intersect_modules(4, [z, z[::-1]]).index == 25
    for n in CATALOG_N[:6]:
        ident = intersect_modules(n, [])
        assert ident.index == 1
        assert ident.basis == tuple(tuple(int(i == j) for j in range(ident.rank))
                                    for i in range(ident.rank))


def test_non_unimodular_rotation_rejected():
    with pytest.raises(DomainError):
        intersect_modules(3, [(Q(3, 2, 0), Q(3, 1, 0))])
    with pytest.raises(DomainError):
        intersect_modules(4, [((0, 0), (1, 0))])


def test_submodule_membership():
    ideal = principal_ideal(3, OMEGA)
    assert OMEGA.coords() in ideal and (OMEGA * Q(3, 5, -3)).coords() in ideal
    assert (1, 0) not in ideal


def _higher_degree_rotations(n, rng, count):
    """(u, conj(u)) pairs: |u / conj(u)| = 1 for any nonzero u."""
    d = euler_phi(n)
    out = []
    while len(out) < count:
        u = tuple(rng.randint(-2, 2) for _ in range(d))
        if any(u):
            out.append((u, conjugate(n, u)))
    return out


@pytest.mark.parametrize("n", [5, 8, 12, 7, 9])
def test_general_n_intersection_properties(n):
    rng = random.Random(n)
    rots = _higher_degree_rotations(n, rng, 3)
    singles = [intersect_modules(n, [r]) for r in rots]
    both = intersect_modules(n, rots[:2])
    assert both.index % singles[0].index == 0 and both.index % singles[1].index == 0
    assert (singles[0].index * singles[1].index) % both.index == 0
    for (u, v), single in zip(rots, singles):
        # index is the norm of the numerator once common factors are removed;
        # with u, conj(u) possibly sharing factors it divides |N(u)|
        assert abs(element_norm(n, u)) % single.index == 0
        # contained in Z[xi] and in (u/v) Z[xi]: x in the basis => v x / u integral
        for col in single.columns():
            assert ring_mul(n, col, v) in principal_ideal(n, u)


@pytest.mark.parametrize("n", [3, 4])
def test_single_rotation_index_is_norm(n):
    for p in range(2, 200):
        kind, elems = prime_elements(n, p) if all(p % q for q in range(2, p)) else ("", ())
        if kind != "split":
            continue
        w = elems[0]
        for t in (1, 2, 3):
            num, den, sigma = rotation_from_word(RotationWord(n, 1, {w: t}))
            assert intersect_modules(n, [(num, den)]).index == sigma == p ** t
            assert intersect_modules(n, [(num, den)]) == principal_ideal(n, num)


def test_lcm_identity_examples():
    w7, w13 = prime_elements(3, 7)[1][0], prime_elements(3, 13)[1][0]
    r1 = rotation_from_word(RotationWord(3, 0, {w7: 1, w13: -1}))
    r2 = rotation_from_word(RotationWord(3, 2, {w7: 2}))
    inter = intersect_modules(3, [r1[:2], r2[:2]])
    assert inter == principal_ideal(3, quad_lcm(r1[0], r2[0]))
    assert inter.index == 7 ** 2 * 13
