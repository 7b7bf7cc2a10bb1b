"""Local densities and the leading factor C_a(n) for three primes with given primitive roots.

Two independent routes to C_a(n) are provided:

* :func:`euler_constant` -- half the product of the three ``L`` constants, the
  local density at the combined discriminant modulus ``D`` and the Euler
  product of local densities at primes not dividing ``D``;
* :func:`ksum_constant` -- the truncated sum over squarefree ``k`` of the
  restricted singular series built from the exponential sums ``S_{a,q,k}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .arith import euler_phi, lcm, moebius, primes_up_to, valuation
from .density import (
    DEFAULT_ARTIN_PMAX,
    A_mod,
    ArtinSpec,
    RealWithError,
    artin_A,
    artin_spec,
    bracket,
    delta_table,
    positivity_set,
)
from .splitting import c_vector, field_degree, squarefree_upto, units

DEFAULT_PMAX = 10**5
DEFAULT_KMAX = 30
DEFAULT_QMAX = 120


class DividesDiscriminant(ValueError):
    pass


@dataclass(frozen=True)
class TripleSpec:
    specs: Tuple[ArtinSpec, ArtinSpec, ArtinSpec]
    D: int

    @property
    def bases(self) -> Tuple[int, int, int]:
        return tuple(s.a for s in self.specs)

    @property
    def disc_product(self) -> int:
        return math.prod(s.delta for s in self.specs)


@dataclass
class SingularSeriesEstimate:
    value: float
    rational_part: Optional[Fraction]
    transcendental_part: RealWithError
    truncation: Dict[str, int]
    tail_estimate: float
    extra: Dict[str, object] = field(default_factory=dict)


def modulus_D(specs: Sequence[ArtinSpec]) -> int:
    v2 = [valuation(s.delta, 2) for s in specs]
    full = lcm(*(abs(s.delta) for s in specs))
    return full >> (max(v2) - min(v2))


def triple_spec(a1: int, a2: int, a3: int) -> TripleSpec:
    specs = (artin_spec(a1), artin_spec(a2), artin_spec(a3))
    return TripleSpec(specs=specs, D=modulus_D(specs))


def theta(spec: ArtinSpec, p: int) -> Fraction:
    return Fraction(1) if spec.h % p == 0 else Fraction(1, p)


def xi(triple: TripleSpec, p: int) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """Elementary symmetric polynomials of the three theta values at p."""
    t1, t2, t3 = (theta(s, p) for s in triple.specs)
    return (Fraction(1), t1 + t2 + t3, t1 * t2 + t2 * t3 + t1 * t3, t1 * t2 * t3)


# --- local densities -------------------------------------------------------

@lru_cache(maxsize=4096)
def _weights(spec: ArtinSpec, d: int) -> Tuple[Fraction, ...]:
    """``delta_a(b mod d) / L_a`` for b in 0..d-1."""
    br = bracket(spec)
    return tuple(v / br for v in delta_table(spec, d))


def _integer_weights(spec: ArtinSpec, d: int) -> Tuple[List[int], int]:
    w = _weights(spec, d)
    den = lcm(*(x.denominator for x in w))
    return [x.numerator * (den // x.denominator) for x in w], den


def sigma_d(triple: TripleSpec, n: int, d: int) -> Fraction:
    """``d * sum_{b1+b2+b3 = n mod d} prod_i delta_i(b_i mod d) / L_i``, exactly."""
    if d < 1:
        raise ValueError("d must be positive")
    (w1, e1), (w2, e2), (w3, e3) = (_integer_weights(s, d) for s in triple.specs)
    nz2 = [(b, v) for b, v in enumerate(w2) if v]
    total = 0
    for b1, v1 in enumerate(w1):
        if not v1:
            continue
        acc = 0
        for b2, v2 in nz2:
            v3 = w3[(n - b1 - b2) % d]
            if v3:
                acc += v2 * v3
        total += v1 * acc
    return Fraction(d * total, e1 * e2 * e3)


def sigma_p_closed(triple: TripleSpec, n: int, p: int) -> Fraction:
    """Closed form of ``sigma_d(triple, n, p)`` for primes p not dividing any discriminant."""
    if triple.disc_product % p == 0:
        raise DividesDiscriminant(f"{p} divides a discriminant")
    # integer form: t_i = p * theta_i, so p - 1 - theta_i = (p^2 - p - t_i) / p
    t1, t2, t3 = (p if s.h % p == 0 else 1 for s in triple.specs)
    sym = (1, t1 + t2 + t3, t1 * t2 + t2 * t3 + t1 * t3, t1 * t2 * t3)
    den = (p * p - p - t1) * (p * p - p - t2) * (p * p - p - t3)
    hit = sum(sym[j] * p ** (3 - j) for j in range(4) if (j - n) % p == 0)
    return Fraction(den - p * hit + (p + t1) * (p + t2) * (p + t3), den)


def M_closed(spec: ArtinSpec, p: int) -> Tuple[Fraction, Fraction]:
    """Coefficients ``(u, v)`` with ``M_a(c, p) = u + v e_p(c)`` for every c prime to p."""
    t = theta(spec, p)
    return -1 / (p - 1 - t), -t / (p - 1 - t)


@lru_cache(maxsize=65536)
def M_direct(spec: ArtinSpec, c: int, r: int) -> complex:
    """``(1/A_a) sum_{b mod r} e(bc/r) A_a(b mod r)`` by direct summation."""
    return complex(sum(
        float(A_mod(spec, b, r)) * np.exp(2j * np.pi * (b * c % r) / r) for b in range(r)
    ))


def sigma_p_expsum(triple: TripleSpec, n: int, p: int) -> complex:
    """``1 + sum_{c mod p, c != 0} e(-nc/p) prod_i M_i(c, p)`` with M by direct summation."""
    total = 1 + 0j
    for c in range(1, p):
        term = np.exp(-2j * np.pi * (n * c % p) / p)
        for s in triple.specs:
            term *= M_direct(s, c, p)
        total += term
    return total


def sigma_p_from_M(triple: TripleSpec, n: int, p: int) -> Fraction:
    """Exact evaluation of the exponential-sum form from the ``(u, v)`` coefficients of M.

    Expands ``prod_i (u_i + v_i z)`` as a polynomial in ``z = e_p(c)`` and uses
    ``sum_{c != 0} e_p(c m) = p [p | m] - 1``.
    """
    if triple.disc_product % p == 0:
        raise DividesDiscriminant(f"{p} divides a discriminant")
    poly = [Fraction(1)]
    for s in triple.specs:
        u, v = M_closed(s, p)
        nxt = [Fraction(0)] * (len(poly) + 1)
        for j, coeff in enumerate(poly):
            nxt[j] += coeff * u
            nxt[j + 1] += coeff * v
        poly = nxt
    out = Fraction(1)
    for j, coeff in enumerate(poly):
        out += coeff * ((p if (j - n) % p == 0 else 0) - 1)
    return out


def classical_rho(n: int, p: int) -> Fraction:
    """Vinogradov's local factor by direct count of unit triples."""
    count = 0
    for b1 in range(1, p):
        for b2 in range(1, p):
            b3 = (n - b1 - b2) % p
            if b3:
                count += 1
    return Fraction(p * count, (p - 1) ** 3)


def classical_rho_closed(n: int, p: int) -> Fraction:
    hit = p if n % p == 0 else 0
    return 1 - Fraction(hit - 1, (p - 1) ** 3)


def local_factor(triple: TripleSpec, n: int, p: int) -> Fraction:
    """``sigma(p)`` by the closed form when allowed, else by brute force."""
    if triple.disc_product % p:
        return sigma_p_closed(triple, n, p)
    return sigma_d(triple, n, p)


# --- the leading constant ---------------------------------------------------

def euler_tail_bound(pmax: int) -> float:
    """Upper bound for ``sum_{p > pmax} |sigma(p) - 1|`` via ``11x/(x-2)^3``."""
    t = pmax - 2
    return 11.0 * (1.0 / t + 1.0 / t**2)


def _tree_prod(values: List[int]) -> int:
    # balanced product; sequential products of ~10^4 factors are quadratic
    while len(values) > 1:
        values = [math.prod(values[i:i + 2]) for i in range(0, len(values), 2)]
    return values[0] if values else 1


def _transcendental(triple: TripleSpec, artin_pmax: int) -> RealWithError:
    out = RealWithError(1.0, 0.0)
    for s in triple.specs:
        out = out * artin_A(s, artin_pmax)
    return out


def euler_constant(triple: TripleSpec, n: int, pmax: int = DEFAULT_PMAX,
                   artin_pmax: int = DEFAULT_ARTIN_PMAX) -> SingularSeriesEstimate:
    """C_a(n) as half of ``prod L_i * sigma(D) * prod_{p not | D, p <= pmax} sigma(p)``.

    ``rational_part`` holds everything except ``prod A_i`` exactly; the product
    over primes is accumulated as an unreduced numerator/denominator pair and
    reduced once.
    """
    if pmax < 100:
        raise ValueError("pmax must be >= 100")
    D = triple.D
    head = sigma_d(triple, n, D) * math.prod(bracket(s) for s in triple.specs)
    num, den = head.numerator, head.denominator
    if num:
        nums, dens = [num], [den]
        for p in primes_up_to(pmax).tolist():
            if D % p == 0:
                continue
            f = local_factor(triple, n, p)
            if not f:
                nums = [0]
                break
            nums.append(f.numerator)
            dens.append(f.denominator)
        num, den = _tree_prod(nums), _tree_prod(dens)
    rational = Fraction(num, den)
    trans = _transcendental(triple, artin_pmax)
    value = 0.5 * float(rational) * trans.value
    return SingularSeriesEstimate(
        value=value,
        rational_part=rational,
        transcendental_part=trans,
        truncation={"pmax": pmax, "artin_pmax": artin_pmax},
        tail_estimate=euler_tail_bound(pmax),
    )


def _coordinate_transform(spec: ArtinSpec, q: int, ks: Sequence[int], zs: np.ndarray) -> np.ndarray:
    """``sum_k mu(k) S_{a,q,k}(z) / [F_{a,q,k} : Q]`` for every z in ``zs``."""
    weight = np.zeros(len(units(q)))
    for k in ks:
        weight += (moebius(k) / field_degree(spec, q, k)) * c_vector(spec, q, k)
    ys = units(q)
    phase = np.exp(2j * np.pi * ((np.outer(zs, ys) % q) / q))
    return phase @ weight


def ksum_constant(triple: TripleSpec, n: int, kmax: int = DEFAULT_KMAX,
                  qmax: int = DEFAULT_QMAX) -> SingularSeriesEstimate:
    """C_a(n) from the box-truncated sum over squarefree ``k_1, k_2, k_3 <= kmax``.

    Since ``d_{a,k}(q)`` and ``L_{a,q,k}`` are products over the three
    coordinates, the triple k-sum factorizes for each ``(q, z)`` into a product
    of three single sums; this is the same finite sum, reordered.
    """
    ks = squarefree_upto(kmax)
    per_q = []
    for q in range(1, qmax + 1):
        zs = units(q)
        prod = np.exp(-2j * np.pi * ((n * zs) % q) / q)
        for s in triple.specs:
            prod = prod * _coordinate_transform(s, q, ks, zs)
        per_q.append(complex(np.sum(prod)))
    total = complex(math.fsum(t.real for t in per_q), math.fsum(t.imag for t in per_q))
    value = 0.5 * total.real
    return SingularSeriesEstimate(
        value=value,
        rational_part=None,
        transcendental_part=RealWithError(1.0, 0.0),
        truncation={"kmax": kmax, "qmax": qmax},
        tail_estimate=1.0 / kmax + 1.0 / qmax,
        extra={"imag": 0.5 * total.imag},
    )


# --- positivity and the congruence table -------------------------------------

@lru_cache(maxsize=1024)
def _supports(triple: TripleSpec) -> Tuple[Tuple[int, ...], ...]:
    return tuple(positivity_set(s, triple.D) for s in triple.specs)


@lru_cache(maxsize=1024)
def _sumset(triple: TripleSpec) -> np.ndarray:
    D = triple.D
    s1, s2, s3 = (np.zeros(D, dtype=bool) for _ in range(3))
    for arr, sup in zip((s1, s2, s3), _supports(triple)):
        arr[list(sup)] = True
    pair = np.zeros(D, dtype=bool)
    for b in np.flatnonzero(s1):
        pair |= np.roll(s2, b)
    out = np.zeros(D, dtype=bool)
    for b in np.flatnonzero(pair):
        out |= np.roll(s3, b)
    return out


def _solving_residues(triple: TripleSpec, n: int) -> Optional[Tuple[int, int, int]]:
    D = triple.D
    s1, s2, s3 = _supports(triple)
    s3set = set(s3)
    for x in s1:
        for y in s2:
            z = (n - x - y) % D
            if z in s3set:
                return (x, y, z)
    return None


def positivity(triple: TripleSpec, n: int) -> Tuple[bool, Dict[str, object]]:
    """Decide ``C_a(n) > 0`` through the finitely many local factors that can vanish.

    Checks sigma(D) (via the support sumset), then sigma(2) and sigma(3) when
    those primes do not divide D. For p >= 5 prime to every discriminant,
    ``sigma(p) > 1 - 3p/(p-2)^3 > 0``.
    """
    D = triple.D
    if not _sumset(triple)[n % D]:
        return False, {"vanishing_modulus": D}
    for p in (2, 3):
        if D % p and local_factor(triple, n, p) == 0:
            return False, {"vanishing_modulus": p}
    return True, {"modulus": D, "residues": list(_solving_residues(triple, n))}


class CongruenceTable(NamedTuple):
    modulus: int
    residues: Tuple[int, ...]


def congruence_table(a: int) -> CongruenceTable:
    """Residues n mod lcm(6, |Delta_a|) with ``C_(a,a,a)(n) > 0``."""
    spec = artin_spec(a)
    triple = triple_spec(a, a, a)
    M = lcm(6, abs(spec.delta))
    return CongruenceTable(M, tuple(n for n in range(M) if positivity(triple, n)[0]))


def lower_bound_diagnostic(triple: TripleSpec) -> Fraction:
    """``prod_i phi(h_i) / (Delta_i^2 h_i)``; reported only, never asserted against."""
    return math.prod(
        (Fraction(euler_phi(s.h), s.delta**2 * s.h) for s in triple.specs), start=Fraction(1)
    )


# --- non-factorization --------------------------------------------------------

class WitnessMismatch(AssertionError):
    pass


def nonfactorization_witness() -> Dict[str, object]:
    """Exact check that the D-local factor of (-15)^5 admits no per-prime splitting."""
    a = -759375
    spec = artin_spec(a)
    triple = triple_spec(a, a, a)
    report: Dict[str, object] = {"a": a, "delta": spec.delta, "h": spec.h}

    expected = {15: (7, 13, 14), 3: (1, 2), 5: (2, 3, 4)}
    for q, want in expected.items():
        got = positivity_set(spec, q)
        if got != want:
            raise WitnessMismatch(f"positivity set mod {q}: {got} != {want}")
        report[f"positive_mod_{q}"] = list(got)

    sig = sigma_d(triple, 7, 15)
    if sig != 0:
        raise WitnessMismatch(f"sigma(15) at n = 7 is {sig}, expected 0")
    report["sigma_15_at_7"] = sig

    x, y = (1, 1, 2), (4, 4, 4)
    if sum(x) % 3 != 7 % 3 or sum(y) % 5 != 7 % 5:
        raise WitnessMismatch("local witnesses do not sum to 7")
    prod3 = math.prod(delta_table(spec, 3)[v] for v in x)
    prod5 = math.prod(delta_table(spec, 5)[v] for v in y)
    if not (prod3 > 0 and prod5 > 0):
        raise WitnessMismatch("local witness densities are not positive")
    report["witness_mod_3"] = {"x": list(x), "delta_product": prod3}
    report["witness_mod_5"] = {"y": list(y), "delta_product": prod5}
    report["verified"] = True
    return report
