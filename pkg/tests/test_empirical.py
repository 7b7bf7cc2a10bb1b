import math
import struct

import numpy as np
import pytest

from artin_goldbach.arith import prime_sieve
from artin_goldbach.density import artin_spec
from artin_goldbach.empirical import (
    CACHE_MAGIC,
    SEGMENT,
    LimitTooLarge,
    SieveTooSmall,
    classical_baseline,
    classical_constant,
    classical_count,
    compare,
    count_representations,
    has_primitive_root,
    load_cache,
    load_or_build,
    save_cache,
    sieve,
    sieve_for,
)
from artin_goldbach.singular import classical_rho_closed, triple_spec


def trial_prime(m):
    return m >= 2 and all(m % d for d in range(2, math.isqrt(m) + 1))


def order_root(a, p):
    """Order enumeration."""
    a %= p
    if a == 0:
        return False
    x, order = a, 1
    while x != 1:
        x = x * a % p
        order += 1
    return order == p - 1


def brute_count(bases, n, excluded=()):
    ok = [[m for m in range(2, n) if trial_prime(m) and m not in excluded and order_root(a, m)] for a in bases]
    s3 = set(ok[2])
    V, raw = [], 0
    for p1 in ok[0]:
        for p2 in ok[1]:
            p3 = n - p1 - p2
            if p3 in s3:
                raw += 1
                V.append(math.log(p1) * math.log(p2) * math.log(p3))
    return math.fsum(V), raw


@pytest.fixture(scope="module")
def small():
    return sieve_for([2, 3, 5, 27, -759375], 3000)


def test_sieve_against_trial_division():
    data = sieve(5000)
    assert np.flatnonzero(data.is_prime_array()).tolist() == [m for m in range(5001) if trial_prime(m)]


def test_sieve_counts():
    assert len(sieve(10**5).primes()) == 9592
    assert len(sieve(10**6).primes()) == 78498


def test_sieve_segment_boundaries():
    N = 3 * SEGMENT + 12345
    assert np.array_equal(sieve(N).is_prime_array(), prime_sieve(N))


def test_sieve_limits():
    with pytest.raises(LimitTooLarge):
        sieve(10**10)
    with pytest.raises(ValueError):
        sieve(5)


def test_has_primitive_root_against_order():
    for a in (2, 3, -3, 5, 27, -759375):
        s = artin_spec(a)
        for p in range(2, 2000):
            if trial_prime(p):
                assert has_primitive_root(s, p) == order_root(a, p), (a, p)


def test_marks_against_order(small):
    for a in (2, 27, -759375):
        marks = small.primroot_array(a)
        want = [p for p in range(3001) if trial_prime(p) and order_root(a, p)]
        assert np.flatnonzero(marks).tolist() == want


def test_n9_example(small):
    rep = count_representations(triple_spec(2, 2, 2), 9, small)
    assert rep.raw_count == 1
    assert math.isclose(rep.V, math.log(3) ** 3, rel_tol=1e-14)


@pytest.mark.parametrize("bases", [(2, 2, 2), (2, 3, 5), (27, 27, 27), (5, 27, 2)])
def test_counts_against_brute_force(small, bases):
    t = triple_spec(*bases)
    for n in (9, 31, 101, 203, 301, 417):
        V, raw = brute_count(bases, n)
        rep = count_representations(t, n, small)
        assert rep.raw_count == raw
        assert math.isclose(rep.V, V, rel_tol=1e-12, abs_tol=1e-12)
        # dropping primes dividing 6 * Delta_1 Delta_2 Delta_3
        excl = {p for p in range(2, 100) if trial_prime(p) and (6 * t.disc_product) % p == 0}
        V, raw = brute_count(bases, n, excl)
        rep = count_representations(t, n, small, exclude_small=True)
        assert rep.raw_count == raw and math.isclose(rep.V, V, rel_tol=1e-12, abs_tol=1e-12)


def test_classical_count_against_brute_force(small):
    for n in (9, 101, 301):
        ps = [m for m in range(2, n) if trial_prime(m)]
        pset = set(ps)
        V = math.fsum(math.log(a) * math.log(b) * math.log(n - a - b)
                      for a in ps for b in ps if (n - a - b) in pset)
        assert math.isclose(classical_count(n, small).V, V, rel_tol=1e-12)


def test_thread_independence():
    data = sieve_for([2], 60000)
    t = triple_spec(2, 2, 2)
    one = count_representations(t, 59999, data, threads=1)
    four = count_representations(t, 59999, data, threads=4)
    assert one.V == four.V and one.raw_count == four.raw_count


def test_errors(small):
    with pytest.raises(SieveTooSmall):
        count_representations(triple_spec(2, 2, 2), 5001, small)
    with pytest.raises(KeyError):
        count_representations(triple_spec(7, 7, 7), 101, small)


def test_cache_round_trip(tmp_path, small):
    path = tmp_path / "sieve.bin"
    save_cache(small, path)
    raw = path.read_bytes()
    assert raw[:5] == CACHE_MAGIC
    limit, count = struct.unpack_from("<QQ", raw, 5)
    assert (limit, count) == (3000, 5)
    assert list(struct.unpack_from("<5q", raw, 21)) == sorted(small.primroot_bits)
    back = load_cache(path)
    assert back.limit == small.limit
    assert np.array_equal(back.prime_bits, small.prime_bits)
    for a, bits in small.primroot_bits.items():
        assert np.array_equal(back.primroot_bits[a], bits)
    # load_or_build reuses a cache that covers the request
    again = load_or_build([2, 27], 2000, str(path))
    assert again.limit == 3000
    path.write_bytes(raw[:-1])
    with pytest.raises(ValueError):
        load_cache(path)
    path.write_bytes(b"XXXXX" + raw[5:])
    with pytest.raises(ValueError):
        load_cache(path)


def test_load_or_build_rebuilds_when_short(tmp_path):
    path = str(tmp_path / "c.bin")
    load_or_build([2], 1000, path)
    bigger = load_or_build([2, 3], 2000, path)
    assert bigger.limit == 2000 and sorted(bigger.primroot_bits) == [2, 3]
    assert sorted(load_cache(path).primroot_bits) == [2, 3]


def test_classical_constant():
    n = 101
    want = 0.5 * math.prod(float(classical_rho_closed(n, p)) for p in range(2, 1000) if trial_prime(p))
    assert math.isclose(classical_constant(n, 1000), want, rel_tol=1e-12)
    assert classical_constant(100, 1000) == 0.0


def test_compare_zero_constant(small):
    rep = compare(triple_spec(27, 27, 27), 1003, sieve_for([27], 1100), pmax=1000, exclude_small=True)
    assert rep.raw_count == 0 and rep.predicted.value == 0 and rep.ratio == math.inf


def test_27_small_n_threshold():
    """Observed: with primes dividing 6 * 12^3 removed, every n = 3 mod 12 in
    [15, 2000] has a representation and no other odd n <= 2000 does."""
    data = sieve_for([27], 2000)
    t = triple_spec(27, 27, 27)
    for n in range(1, 2001, 2):
        raw = count_representations(t, n, data, exclude_small=True).raw_count
        assert (raw > 0) == (n % 12 == 3 and n >= 15), n


def test_baseline_dict(small):
    out = classical_baseline(2999, small, pmax=1000)
    assert set(out) == {"V", "raw_count", "predicted", "ratio"}
    assert 0.7 < out["ratio"] < 1.3


def test_primitive_root_examples():
    s = artin_spec(2)
    assert has_primitive_root(s, 3) and not has_primitive_root(s, 7) and not has_primitive_root(s, 2)
    assert has_primitive_root(artin_spec(27), 2)  # F_2^* is trivial


def test_marked_density_band():
    data = sieve_for([2], 10**5)
    share = np.count_nonzero(data.primroot_array(2)) / len(data.primes())
    assert 0.34 <= share <= 0.41
    assert not np.any(data.primroot_array(2) & ~data.is_prime_array())


def test_even_n(small):
    t = triple_spec(2, 3, 5)
    for n in (100, 1000, 2998):
        assert count_representations(t, n, small, exclude_small=True).raw_count == 0
        rep = count_representations(t, n, small)
        assert rep.raw_count <= 3 * len(small.primes())


def test_non_positive_cases_are_small():
    data = sieve_for([27], 10**5)
    t = triple_spec(27, 27, 27)
    for n in (99991, 99995, 50001):
        rep = count_representations(t, n, data)
        assert rep.V / n**2 <= 0.01


def test_permutation_and_monotonicity(small):
    for n in (1001, 2999):
        a = count_representations(triple_spec(2, 3, 5), n, small)
        b = count_representations(triple_spec(5, 2, 3), n, small)
        assert a.raw_count == b.raw_count and math.isclose(a.V, b.V, rel_tol=1e-12)
        assert classical_count(n, small).V >= a.V
        assert (a.raw_count == 0) == (a.V == 0)


def test_deterministic_reports(small):
    t = triple_spec(2, 27, 5)
    one = compare(t, 2999, small, pmax=1000)
    two = compare(t, 2999, small, pmax=1000)
    assert one.as_dict() == two.as_dict()
