"""Exact integer and rational primitives.

Factorization and primality are delegated to sympy (deterministic for the
64-bit range used here). The Kronecker symbol is implemented locally so that
its sign conventions are pinned in one place.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import List, Tuple

import numpy as np
from sympy import factorint, isprime

# Exact rational over Python ints; always stored in lowest terms with a
# positive denominator.
BigRational = Fraction

Factorization = List[Tuple[int, int]]


def factorize(m: int) -> Factorization:
    """Prime factorization of ``m >= 1`` as ``[(p, e), ...]`` sorted by ``p``."""
    if m < 1:
        raise ValueError(f"factorize expects m >= 1, got {m}")
    if m == 1:
        return []
    return sorted((int(p), int(e)) for p, e in factorint(m).items())


def prime_divisors(m: int) -> List[int]:
    return [p for p, _ in factorize(abs(m))] if m else []


def moebius(m: int) -> int:
    if m < 1:
        raise ValueError(f"moebius expects m >= 1, got {m}")
    fac = factorize(m)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError(f"euler_phi expects m >= 1, got {m}")
    out = m
    for p, _ in factorize(m):
        out = out // p * (p - 1)
    return out


def is_squarefree(m: int) -> bool:
    return m >= 1 and all(e == 1 for _, e in factorize(m))


def is_prime(m: int) -> bool:
    """Deterministic primality test; negative and small values are not prime."""
    return m >= 2 and bool(isprime(m))


def squarefree_kernel(a: int) -> int:
    """Signed product of the primes dividing ``a`` to an odd power."""
    if a == 0:
        raise ValueError("squarefree_kernel is undefined at 0")
    k = 1
    for p, e in factorize(abs(a)):
        if e % 2:
            k *= p
    return k if a > 0 else -k


def valuation(m: int, p: int) -> int:
    if m == 0:
        raise ValueError("valuation of 0 is infinite")
    m, v = abs(m), 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        v = abs(v)
        out = out * v // gcd(out, v)
    return out


def is_perfect_square(a: int) -> bool:
    return a >= 0 and isqrt(a) ** 2 == a


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), defined for all integers a and n.

    Conventions: (a/0) = 1 iff a = +-1; (a/-1) = -1 iff a < 0;
    (a/2) = 0 for even a, +1 for a = +-1 mod 8, -1 for a = +-3 mod 8.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # n is now odd and positive: Jacobi symbol (a/n)
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def prime_sieve(limit: int) -> np.ndarray:
    """Boolean array ``is_prime[0..limit]``."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[: min(2, limit + 1)] = False
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def primes_up_to(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    return np.flatnonzero(prime_sieve(limit)).astype(np.int64)


def smallest_prime_factors(limit: int) -> np.ndarray:
    """``spf[m]`` is the least prime dividing m (0 for m < 2)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p]:
            continue
        block = spf[p::p]
        block[block == 0] = p
        if p * p > limit:
            # remaining zeros are primes; fill them in one pass
            rest = np.flatnonzero(spf[p + 1 :] == 0) + p + 1
            spf[rest] = rest
            break
    return spf


def factor_with_spf(m: int, spf: np.ndarray) -> List[int]:
    """Distinct prime divisors of ``m`` using a smallest-prime-factor table."""
    out = []
    while m > 1:
        p = int(spf[m])
        out.append(p)
        while m % p == 0:
            m //= p
    return out
