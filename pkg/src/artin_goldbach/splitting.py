"""Galois-side quantities for the fields Q(zeta_q, zeta_k, a^(1/k)).

``c_indicator`` decides whether the Frobenius-type automorphism
``zeta_q -> zeta_q^b`` is trivial on the intersection of ``Q(zeta_q)`` with
``Q(zeta_k, a^(1/k))``; ``exp_sum_S`` sums it against additive characters.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from math import gcd
from typing import Iterable, List, Tuple

import numpy as np

from .arith import euler_phi, factorize, is_squarefree, kronecker, lcm, moebius, prime_divisors
from .density import ArtinSpec, artin_A, beta, delta_mod

# Absolute tolerance for complex comparisons; sums have O(phi(q)) unit terms.
COMPLEX_TOL = 1e-9


class NotSquarefree(ValueError):
    pass


class NotCoprime(ValueError):
    pass


def _check_k(k: int) -> None:
    if not is_squarefree(k):
        raise NotSquarefree(f"k={k} is not a positive squarefree integer")


def _quadratic_condition(spec: ArtinSpec, q: int, k: int) -> bool:
    """True when the intersection field carries an extra sqrt(beta(q))."""
    d = abs(spec.delta)
    return k % 2 == 0 and k % d != 0 and lcm(q, k) % d == 0


def c_indicator(spec: ArtinSpec, q: int, k: int, b: int) -> int:
    _check_k(k)
    if gcd(b, q) != 1:
        raise NotCoprime(f"gcd({b}, {q}) != 1")
    if (b - 1) % gcd(q, k):
        return 0
    if _quadratic_condition(spec, q, k) and kronecker(beta(spec, q), b % q) != 1:
        return 0
    return 1


def field_degree(spec: ArtinSpec, q: int, k: int) -> int:
    """Degree of Q(zeta_q, zeta_k, a^(1/k)) over Q."""
    _check_k(k)
    m = lcm(q, k)
    eps = 2 if (k % 2 == 0 and m % abs(spec.delta) == 0) else 1
    k_prime = k // gcd(k, spec.h)
    return k_prime * euler_phi(m) // eps


def units(q: int) -> np.ndarray:
    if q == 1:
        return np.zeros(1, dtype=np.int64)
    ys = np.arange(q, dtype=np.int64)
    return ys[np.gcd(ys, q) == 1]


@lru_cache(maxsize=1024)
def c_vector(spec: ArtinSpec, q: int, k: int) -> np.ndarray:
    """``c_indicator`` over ``units(q)``, as a 0/1 float array."""
    _check_k(k)
    ys = units(q)
    mask = (ys - 1) % gcd(q, k) == 0
    if _quadratic_condition(spec, q, k):
        bq = beta(spec, q)
        idx = np.flatnonzero(mask)
        mask[idx] = [kronecker(bq, int(y)) == 1 for y in ys[idx]]
    return mask.astype(float)


def exp_sum_S(spec: ArtinSpec, q: int, k: int, b: int) -> complex:
    _check_k(k)
    return complex(sum(
        cmath.exp(2j * cmath.pi * ((b * int(y)) % q) / q)
        for y, c in zip(units(q), c_vector(spec, q, k)) if c
    ))


def exp_sum_S_vector(spec: ArtinSpec, q: int, k: int, zs: Iterable[int]) -> np.ndarray:
    """``S_{a,q,k}(z)`` for every ``z`` in ``zs`` at once."""
    ys = units(q)
    zs = np.asarray(list(zs), dtype=np.int64)
    phase = np.exp(2j * np.pi * ((np.outer(zs, ys) % q) / q))
    return phase @ c_vector(spec, q, k)


def exp_sum_S_all(spec: ArtinSpec, q: int, k: int) -> np.ndarray:
    """``S_{a,q,k}(b)`` for ``b = 0..q-1`` via one FFT of the indicator."""
    f = np.zeros(q)
    f[units(q) % q] = c_vector(spec, q, k)
    return q * np.fft.ifft(f)


def ramanujan_sum(q: int, b: int) -> int:
    """Classical closed form ``mu(q/g) phi(q) / phi(q/g)`` with ``g = gcd(b, q)``."""
    g = gcd(b, q)
    return moebius(q // g) * euler_phi(q) // euler_phi(q // g)


def split_modulus(spec: ArtinSpec, q: int) -> List[int]:
    """``[d, p_1^e_1, ...]`` with ``d`` the part of q built from primes of Delta."""
    dprimes = set(prime_divisors(spec.delta))
    d, rest = 1, []
    for p, e in factorize(q):
        if p in dprimes:
            d *= p**e
        else:
            rest.append(p**e)
    return [d] + rest


def c_factorization_check(spec: ArtinSpec, q: int, k: int, b: int) -> bool:
    whole = c_indicator(spec, q, k, b)
    prod = 1
    for m in split_modulus(spec, q):
        prod *= c_indicator(spec, m, k, b)
    return whole == prod


def S_multiplicativity_check(spec: ArtinSpec, q1: int, q2: int, k: int, b: int) -> bool:
    """Compare ``S(q1 q2, b)`` with ``S(q1, b1) S(q2, b2)`` where ``b = b1 q2 + b2 q1``."""
    if gcd(q1, q2) != 1:
        raise ValueError("q1 and q2 must be coprime")
    d = abs(spec.delta)
    if gcd(q1, d) != 1 and gcd(q2, d) != 1:
        raise ValueError("one of q1, q2 must be coprime to the discriminant")
    # b1 q2 = b mod q1 and b2 q1 = b mod q2
    b1 = b * pow(q2, -1, q1) % q1 if q1 > 1 else 0
    b2 = b * pow(q1, -1, q2) % q2 if q2 > 1 else 0
    lhs = exp_sum_S(spec, q1 * q2, k, b)
    rhs = exp_sum_S(spec, q1, k, b1) * exp_sum_S(spec, q2, k, b2)
    return abs(lhs.real - rhs.real) <= COMPLEX_TOL and abs(lhs.imag - rhs.imag) <= COMPLEX_TOL


def squarefree_upto(kmax: int) -> List[int]:
    flags = np.ones(kmax + 1, dtype=bool)
    flags[0] = False
    for p in range(2, int(kmax**0.5) + 1):
        flags[p * p :: p * p] = False
    return [int(k) for k in np.flatnonzero(flags)]


def moree_partial_sum(spec: ArtinSpec, q: int, b: int, kmax: int) -> float:
    """``sum_{k <= kmax} mu(k) c_{a,q,k}(b) / [F_{a,q,k} : Q]`` (compensated)."""
    terms = []
    for k in squarefree_upto(kmax):
        mu = moebius(k)
        if mu and c_indicator(spec, q, k, b):
            terms.append(mu / field_degree(spec, q, k))
    return math.fsum(terms)


def moree_identity_check(spec: ArtinSpec, q: int, b: int, kmax: int = 1000,
                         artin_pmax: int = 10**6) -> Tuple[float, float, float]:
    """Truncated Lenstra sum against the closed-form density; returns (partial, target, gap)."""
    if gcd(b, q) != 1:
        raise NotCoprime(f"gcd({b}, {q}) != 1")
    partial = moree_partial_sum(spec, q, b, kmax)
    target = float(delta_mod(spec, b, q)) * artin_A(spec, artin_pmax).value
    return partial, target, abs(partial - target)


def periodic_exp_sum(Q: int, c: int, f: np.ndarray) -> complex:
    """``sum_{b mod Q} e(bc/Q) f(b)`` for ``f`` given by its values on ``0..Q-1``."""
    b = np.arange(Q)
    return complex(np.sum(np.exp(2j * np.pi * (b * c % Q) / Q) * f))
