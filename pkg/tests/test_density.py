import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from artin_goldbach.arith import primes_up_to
from artin_goldbach.density import (
    A_mod,
    InvalidBase,
    L_const,
    artin_A,
    artin_spec,
    beta,
    bracket,
    delta_mod,
    delta_refinement_check,
    delta_table,
    f_dagger,
    f_ddagger,
    positivity_set,
)

POOL = [2, -2, 3, -3, -4, 5, 6, 10, -10, 27, -3375, -759375]


def h_oracle(a):
    """Largest m with a a perfect m-th power, found by trying every root."""
    best = 1
    for m in range(2, abs(a).bit_length() + 1):
        r = round(abs(a) ** (1 / m))
        for c in (r - 1, r, r + 1):
            if c > 1 and c**m == abs(a) and (a > 0 or m % 2):
                best = max(best, m)
    return best


def disc_oracle(a):
    """Discriminant of Q(sqrt a) by stripping square factors."""
    d, p = a, 2
    while p * p <= abs(d):
        while d % (p * p) == 0:
            d //= p * p
        p += 1
    return d if d % 4 == 1 else 4 * d


def is_primitive_root(a, p):
    """Order enumeration."""
    a %= p
    if a == 0:
        return False
    x, order = a, 1
    while x != 1:
        x = x * a % p
        order += 1
    return order == p - 1


def test_spec_examples():
    assert (artin_spec(27).delta, artin_spec(27).h) == (12, 3)
    assert (artin_spec(-759375).delta, artin_spec(-759375).h) == (-15, 5)
    assert (artin_spec(2).delta, artin_spec(2).h) == (8, 1)
    assert (artin_spec(-4).delta, artin_spec(-4).h) == (-4, 1)


@pytest.mark.parametrize("a", [-1, 0, 1, 4, 9, 36, 10**6])
def test_invalid_bases(a):
    with pytest.raises(InvalidBase):
        artin_spec(a)


VALID = [a for a in range(-300, 301) if a < -1 or (a > 1 and math.isqrt(a) ** 2 != a)]


@pytest.mark.parametrize("a", VALID)
def test_spec_against_oracles(a):
    s = artin_spec(a)
    assert s.delta == disc_oracle(a)
    assert s.h == h_oracle(a)
    assert s.h % 2 == 1
    assert s.delta % 4 in (0, 1)


def test_spec_powers():
    assert artin_spec(-3375).h == 3 and artin_spec(-3375).delta == -15
    assert artin_spec(-64).h == 3 and artin_spec(-64).delta == -4  # (-4)^3
    assert artin_spec(2**15).h == 15
    assert artin_spec(-(2**6)).h == 3


def test_f_values():
    assert f_dagger(artin_spec(2), 1) == 1
    assert f_dagger(artin_spec(2), 2) == 2
    assert f_dagger(artin_spec(27), 12) == 4
    assert f_ddagger(artin_spec(5), 5) == Fraction(1, 19)
    assert f_ddagger(artin_spec(27), 3) == 1
    assert f_ddagger(artin_spec(2), 1) == 1


def test_beta_examples():
    assert beta(artin_spec(27), 5) == 1
    assert beta(artin_spec(5), 5) == 5
    assert beta(artin_spec(-759375), 3) == -3
    assert beta(artin_spec(-759375), 5) == 5
    assert beta(artin_spec(-759375), 15) == -15
    assert beta(artin_spec(2), 8) == 8


def test_artin_A():
    A2 = artin_A(artin_spec(2))
    assert abs(A2.value - 0.3739558136) <= 1e-6
    assert A2.error_bound == 1e-6
    ratio = artin_A(artin_spec(27)).value / A2.value
    assert abs(ratio - 0.6) < 1e-12
    # monotone in pmax, and each refinement stays inside the coarser interval
    prev = artin_A(artin_spec(2), 1000)
    for pmax in (10**4, 10**5, 10**6):
        cur = artin_A(artin_spec(2), pmax)
        assert cur.value <= prev.value
        assert abs(cur.value - prev.value) <= prev.error_bound
        prev = cur
    with pytest.raises(ValueError):
        artin_A(artin_spec(2), 99)


def test_L_const():
    assert L_const(artin_spec(2)).value == artin_A(artin_spec(2)).value
    L5 = L_const(artin_spec(5)).value
    assert math.isclose(L5, 20 / 19 * artin_A(artin_spec(5)).value, rel_tol=1e-14)
    for a in POOL:
        assert bracket(artin_spec(a)) > 0


def test_A_mod_examples():
    s = artin_spec(27)
    assert A_mod(s, 5, 12) == Fraction(1, 2)
    assert A_mod(s, 7, 1) == 1
    assert A_mod(s, 4, 12) == 0
    assert A_mod(s, 1, 12) == 0  # gcd(0, 12, 3) = 3


def test_delta_mod12_for_27():
    s = artin_spec(27)
    assert delta_mod(s, 5, 12) == 1
    for b in (1, 7, 11):
        assert delta_mod(s, b, 12) == 0


def test_nonfactorization_positivity_sets():
    s = artin_spec(-759375)
    assert positivity_set(s, 15) == (7, 13, 14)
    assert positivity_set(s, 3) == (1, 2)
    assert positivity_set(s, 5) == (2, 3, 4)


@pytest.mark.parametrize("a", POOL)
def test_refinement_all_divisor_pairs(a):
    s = artin_spec(a)
    for q in range(1, 61):
        assert all(v >= 0 for v in delta_table(s, q))
        assert sum(delta_table(s, q)) == bracket(s)
        for Q in range(1, q + 1):
            if q % Q == 0:
                assert delta_refinement_check(s, q, Q), (a, q, Q)


@given(st.sampled_from(POOL), st.integers(1, 60), st.integers(-10**6, 10**6))
def test_delta_periodic(a, q, x):
    s = artin_spec(a)
    assert delta_mod(s, x, q) == delta_mod(s, x + q, q) == delta_mod(s, x % q, q)


def test_A_mod_sums_to_one():
    # without the quadratic correction the class weights sum to exactly 1
    for a in (2, 27, -759375):
        s = artin_spec(a)
        for q in (1, 4, 9, 12, 15, 30, 60):
            assert sum(A_mod(s, x, q) for x in range(q)) == 1


def root_test(a, p):
    """Generator test with p - 1 factored by trial division."""
    m, rs, f = p - 1, [], 2
    while f * f <= m:
        if m % f == 0:
            rs.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        rs.append(m)
    return a % p != 0 and all(pow(a % p, (p - 1) // r, p) != 1 for r in rs)


def test_root_test_against_order_enumeration():
    for p in primes_up_to(3000).tolist():
        for a in (2, -3, 5, 27, -759375):
            assert root_test(a, p) == is_primitive_root(a, p)


@pytest.mark.parametrize("a,q", [(2, 8), (27, 12), (5, 5), (3, 12), (-3, 3)])
def test_delta_against_prime_counts(a, q):
    """Observed share of primes p <= 2e5 per class with root a, against delta."""
    s = artin_spec(a)
    A = artin_A(s).value
    primes = primes_up_to(200000).tolist()
    hits = np.zeros(q)
    for p in primes:
        if root_test(a, p):
            hits[p % q] += 1
    share = hits / len(primes)
    for b in range(q):
        assert abs(share[b] - float(delta_mod(s, b, q)) * A) < 0.01, (b, share[b])
