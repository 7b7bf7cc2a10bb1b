"""Artin constants and primitive-root densities in residue classes.

Every density is returned as an exact :class:`~fractions.Fraction` multiple of
the transcendental constant ``A_a``; ``A_a`` itself only appears through
:func:`artin_A`, which evaluates the truncated Euler product numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Tuple

import numpy as np

from .arith import (
    euler_phi,
    factorize,
    is_perfect_square,
    kronecker,
    moebius,
    prime_divisors,
    primes_up_to,
    squarefree_kernel,
)

DEFAULT_ARTIN_PMAX = 10**6


class InvalidBase(ValueError):
    """Base is -1, 0, 1 or a perfect square."""


@dataclass(frozen=True)
class ArtinSpec:
    a: int
    delta: int
    h: int

    @property
    def h_primes(self) -> Tuple[int, ...]:
        return tuple(prime_divisors(self.h))


@dataclass(frozen=True)
class RealWithError:
    value: float
    error_bound: float

    def __mul__(self, other):
        if isinstance(other, RealWithError):
            v = self.value * other.value
            err = (abs(self.value) * other.error_bound + abs(other.value) * self.error_bound
                   + self.error_bound * other.error_bound)
            return RealWithError(v, err)
        c = float(other)
        return RealWithError(self.value * c, abs(c) * self.error_bound)

    __rmul__ = __mul__


def _power_index(a: int) -> int:
    g = 0
    for _, e in factorize(abs(a)):
        g = math.gcd(g, e)
    if a < 0:
        while g % 2 == 0:
            g //= 2
    return g


@lru_cache(maxsize=None)
def artin_spec(a: int) -> ArtinSpec:
    """Validate ``a`` and attach its fundamental discriminant and power index."""
    if a in (-1, 0, 1) or is_perfect_square(a):
        raise InvalidBase(f"{a} is -1, 0, 1 or a perfect square")
    k = squarefree_kernel(a)
    delta = k if k % 4 == 1 else 4 * k
    return ArtinSpec(a=a, delta=delta, h=_power_index(a))


def _hprimes(spec: ArtinSpec):
    return set(spec.h_primes)


def f_dagger(spec: ArtinSpec, q: int) -> Fraction:
    out = Fraction(1)
    hp = _hprimes(spec)
    for p in prime_divisors(q):
        if p in hp:
            out /= 1 - Fraction(1, p - 1)
        else:
            out /= 1 - Fraction(1, p * (p - 1))
    return out


def f_ddagger(spec: ArtinSpec, q: int) -> Fraction:
    out = Fraction(1)
    hp = _hprimes(spec)
    for p in prime_divisors(q):
        out /= (p - 2) if p in hp else (p * p - p - 1)
    return out


def beta(spec: ArtinSpec, q: int) -> int:
    g = gcd(q, abs(spec.delta))
    r = spec.delta // g
    if r % 2:
        return (-1) ** (((r - 1) // 2) % 2) * g
    return 1


def bracket(spec: ArtinSpec) -> Fraction:
    """The exact ratio ``L_a / A_a``."""
    return 1 + moebius(2 * abs(spec.delta)) * f_ddagger(spec, abs(spec.delta))


@lru_cache(maxsize=None)
def _artin_product(h_primes: Tuple[int, ...], pmax: int) -> float:
    ps = primes_up_to(pmax).astype(float)
    factors = 1.0 - 1.0 / (ps * (ps - 1.0))
    for p in h_primes:
        if p <= pmax:
            factors[np.searchsorted(ps, p)] = 1.0 - 1.0 / (p - 1.0)
    return math.exp(math.fsum(np.log(factors)))


def artin_A(spec: ArtinSpec, pmax: int = DEFAULT_ARTIN_PMAX) -> RealWithError:
    """Truncated Euler product for ``A_a`` over ``p <= pmax``.

    Each omitted factor lies in ``[1 - 1/(p(p-1)), 1]``, so the tail costs at
    most ``sum_{m > pmax} 1/(m(m-1)) = 1/pmax`` (absolute, since A <= 1).
    """
    if pmax < 100:
        raise ValueError("pmax must be >= 100")
    return RealWithError(_artin_product(spec.h_primes, pmax), 1.0 / pmax)


def L_const(spec: ArtinSpec, pmax: int = DEFAULT_ARTIN_PMAX) -> RealWithError:
    return artin_A(spec, pmax) * bracket(spec)


def A_mod(spec: ArtinSpec, x: int, q: int) -> Fraction:
    """``A_a(x mod q) / A_a`` as an exact rational."""
    if q < 1:
        raise ValueError("q must be positive")
    x %= q
    if gcd(x, q) != 1 or gcd(gcd(x - 1, q), spec.h) != 1:
        return Fraction(0)
    out = f_dagger(spec, q) / euler_phi(q)
    for p in prime_divisors(gcd(x - 1, q)):
        out *= 1 - Fraction(1, p)
    return out


def delta_mod(spec: ArtinSpec, x: int, q: int) -> Fraction:
    """``delta_a(x mod q) / A_a`` as an exact rational."""
    x %= q
    base = A_mod(spec, x, q)
    if not base:
        return base
    g = gcd(q, abs(spec.delta))
    mu = moebius(2 * abs(spec.delta) // g)
    if not mu:
        return base
    chi = kronecker(beta(spec, q), x)
    return base * (1 + mu * chi * f_ddagger(spec, abs(spec.delta) // g))


@lru_cache(maxsize=4096)
def delta_table(spec: ArtinSpec, q: int) -> Tuple[Fraction, ...]:
    """``(delta_mod(spec, b, q) for b in range(q))``, cached."""
    return tuple(delta_mod(spec, b, q) for b in range(q))


def delta_refinement_check(spec: ArtinSpec, q: int, Q: int) -> bool:
    """Exact check of ``delta(m mod Q) = sum_{b = m mod Q} delta(b mod q)``."""
    if q % Q:
        raise ValueError(f"{Q} does not divide {q}")
    fine = delta_table(spec, q)
    coarse = delta_table(spec, Q)
    sums: Dict[int, Fraction] = {}
    for b, v in enumerate(fine):
        sums[b % Q] = sums.get(b % Q, Fraction(0)) + v
    return all(sums[m] == coarse[m] for m in range(Q))


def positivity_set(spec: ArtinSpec, q: int) -> Tuple[int, ...]:
    """Residues ``x mod q`` with ``delta_a(x mod q) > 0``."""
    return tuple(b for b, v in enumerate(delta_table(spec, q)) if v > 0)

