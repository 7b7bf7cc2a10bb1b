"""Counting representations n = p1 + p2 + p3 with prescribed primitive roots.

Bit sets are stored packed (``numpy.packbits``, little bit order) so a sieve to
N costs about N/8 bytes per set; they are unpacked on demand for counting.
"""

from __future__ import annotations

import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import isqrt
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .arith import factor_with_spf, prime_divisors, primes_up_to, smallest_prime_factors
from .density import ArtinSpec, artin_spec
from .singular import (
    DEFAULT_PMAX,
    SingularSeriesEstimate,
    TripleSpec,
    classical_rho_closed,
    euler_constant,
)

MAX_SIEVE_LIMIT = 4 * 10**9
SEGMENT = 1 << 18
CHUNK = 256  # p1 values per reduction chunk; fixed so results do not depend on threads
CACHE_MAGIC = b"AGSV1"


class LimitTooLarge(ValueError):
    pass


class SieveTooSmall(ValueError):
    pass


def _pack(flags: np.ndarray) -> np.ndarray:
    return np.packbits(flags.astype(bool), bitorder="little")


def _unpack(bits: np.ndarray, limit: int) -> np.ndarray:
    return np.unpackbits(bits, count=limit + 1, bitorder="little").astype(bool)


@dataclass
class SieveData:
    limit: int
    prime_bits: np.ndarray
    primroot_bits: Dict[int, np.ndarray] = field(default_factory=dict)

    def is_prime_array(self) -> np.ndarray:
        return _unpack(self.prime_bits, self.limit)

    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.is_prime_array())

    def primroot_array(self, a: int) -> np.ndarray:
        return _unpack(self.primroot_bits[a], self.limit)


def sieve(N: int, max_limit: int = MAX_SIEVE_LIMIT) -> SieveData:
    """Segmented sieve of Eratosthenes over ``[0, N]``."""
    if N < 10:
        raise ValueError("sieve limit must be >= 10")
    if N > max_limit:
        raise LimitTooLarge(f"sieve limit {N} exceeds cap {max_limit}")
    base = primes_up_to(isqrt(N))
    nbytes = (N + 1 + 7) // 8
    bits = np.zeros(nbytes, dtype=np.uint8)
    for lo in range(0, N + 1, SEGMENT):
        hi = min(lo + SEGMENT, N + 1)
        seg = np.ones(hi - lo, dtype=bool)
        if lo == 0:
            seg[: min(2, hi)] = False
        for p in base.tolist():
            start = max(p * p, (lo + p - 1) // p * p)
            if start >= hi:
                continue
            seg[start - lo :: p] = False
        # SEGMENT is a multiple of 8, so every segment starts on a byte boundary
        packed = _pack(seg)
        bits[lo // 8 : lo // 8 + len(packed)] = packed
    return SieveData(limit=N, prime_bits=bits)


def has_primitive_root(spec: ArtinSpec, p: int, p_minus_1_primes: Optional[Iterable[int]] = None) -> bool:
    """Is ``spec.a`` a generator of ``(Z/pZ)^*``?"""
    a = spec.a
    if a % p == 0:
        return False
    if p == 2:
        return a % 2 == 1
    qs = prime_divisors(p - 1) if p_minus_1_primes is None else p_minus_1_primes
    ar = a % p
    return all(pow(ar, (p - 1) // q, p) != 1 for q in qs)


def mark_primitive_roots(data: SieveData, spec: ArtinSpec) -> SieveData:
    primes = data.primes()
    spf = smallest_prime_factors(data.limit)
    flags = np.zeros(data.limit + 1, dtype=bool)
    for p in primes.tolist():
        qs = factor_with_spf(p - 1, spf) if p > 2 else []
        if has_primitive_root(spec, p, qs):
            flags[p] = True
    data.primroot_bits[spec.a] = _pack(flags)
    return data


def sieve_for(bases: Iterable[int], N: int) -> SieveData:
    data = sieve(N)
    for a in sorted(set(bases)):
        mark_primitive_roots(data, artin_spec(a))
    return data


# --- binary cache -------------------------------------------------------------

def save_cache(data: SieveData, path) -> None:
    """Header: b"AGSV1", N (u64 LE), base count (u64 LE), bases (i64 LE); then
    the prime bit set followed by one bit set per base, in header order."""
    bases = sorted(data.primroot_bits)
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<QQ", data.limit, len(bases)))
        fh.write(struct.pack(f"<{len(bases)}q", *bases))
        fh.write(data.prime_bits.tobytes())
        for a in bases:
            fh.write(data.primroot_bits[a].tobytes())


def load_cache(path) -> SieveData:
    raw = Path(path).read_bytes()
    if raw[:5] != CACHE_MAGIC:
        raise ValueError(f"{path}: not a sieve cache")
    limit, count = struct.unpack_from("<QQ", raw, 5)
    off = 5 + 16
    bases = list(struct.unpack_from(f"<{count}q", raw, off))
    off += 8 * count
    nbytes = (limit + 1 + 7) // 8
    expected = off + nbytes * (count + 1)
    if len(raw) != expected:
        raise ValueError(f"{path}: expected {expected} bytes, found {len(raw)}")

    def take(i):
        start = off + i * nbytes
        return np.frombuffer(raw[start : start + nbytes], dtype=np.uint8).copy()

    return SieveData(limit=limit, prime_bits=take(0),
                     primroot_bits={a: take(i + 1) for i, a in enumerate(bases)})


def load_or_build(bases: Iterable[int], N: int, cache: Optional[str] = None) -> SieveData:
    bases = sorted(set(bases))
    if cache and Path(cache).exists():
        data = load_cache(cache)
        if data.limit >= N and all(a in data.primroot_bits for a in bases):
            return data
    data = sieve_for(bases, N)
    if cache:
        save_cache(data, cache)
    return data


# --- counting -----------------------------------------------------------------

@dataclass
class RepresentationReport:
    n: int
    V: float
    raw_count: int
    predicted: Optional[SingularSeriesEstimate] = None
    ratio: Optional[float] = None

    def as_dict(self) -> dict:
        out = {"n": self.n, "V": self.V, "raw_count": self.raw_count, "ratio": self.ratio}
        if self.predicted is not None:
            out["predicted"] = self.predicted.value
        return out


def _excluded_primes(triple: TripleSpec) -> List[int]:
    return prime_divisors(6 * triple.disc_product)


def _weights(marks: np.ndarray, n: int, excluded: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    m = marks[: n + 1].copy()
    for p in excluded:
        if p <= n:
            m[p] = False
    logs = np.zeros(n + 1)
    idx = np.flatnonzero(m)
    logs[idx] = np.log(idx)
    return m, logs


def _chunk_sum(args) -> Tuple[float, int]:
    p1s, n, P2, L2, m3, L3 = args
    vals = []
    count = 0
    for p1 in p1s.tolist():
        r = n - p1
        hi = np.searchsorted(P2, r, side="left")  # p2 <= r - 1 keeps p3 >= 1
        if hi == 0:
            continue
        idx = r - P2[:hi]
        hit = m3[idx]
        if not hit.any():
            continue
        count += int(np.count_nonzero(hit))
        vals.append(math.log(p1) * float(np.sum(L2[:hi] * L3[idx])))
    return math.fsum(vals), count


def _count(marks: Sequence[np.ndarray], n: int, excluded: Sequence[int], threads: int = 1) -> Tuple[float, int]:
    (m1, _), (m2, L2full), (m3, L3) = (_weights(m, n, excluded) for m in marks)
    P1 = np.flatnonzero(m1)
    P2 = np.flatnonzero(m2)
    L2 = L2full[P2]
    chunks = [(P1[i : i + CHUNK], n, P2, L2, m3, L3) for i in range(0, len(P1), CHUNK)]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_chunk_sum, chunks))
    else:
        parts = [_chunk_sum(c) for c in chunks]
    return math.fsum(v for v, _ in parts), sum(c for _, c in parts)


def count_representations(triple: TripleSpec, n: int, data: SieveData,
                          exclude_small: bool = False, threads: int = 1) -> RepresentationReport:
    """Weighted count of ordered ``(p1, p2, p3)`` with ``p1 + p2 + p3 = n``.

    Each ``p_i`` must have ``a_i`` as a primitive root; with ``exclude_small``
    primes dividing ``6 * Delta_1 Delta_2 Delta_3`` are dropped.
    """
    if n > data.limit:
        raise SieveTooSmall(f"n = {n} exceeds sieve limit {data.limit}")
    missing = [a for a in triple.bases if a not in data.primroot_bits]
    if missing:
        raise KeyError(f"sieve has no primitive-root marks for {missing}")
    marks = [data.primroot_array(a) for a in triple.bases]
    excluded = _excluded_primes(triple) if exclude_small else []
    V, count = _count(marks, n, excluded, threads)
    return RepresentationReport(n=n, V=V, raw_count=count)


def classical_count(n: int, data: SieveData, threads: int = 1) -> RepresentationReport:
    """Unrestricted weighted count over all primes."""
    if n > data.limit:
        raise SieveTooSmall(f"n = {n} exceeds sieve limit {data.limit}")
    primes = data.is_prime_array()
    V, count = _count([primes] * 3, n, [], threads)
    return RepresentationReport(n=n, V=V, raw_count=count)


def classical_constant(n: int, pmax: int = DEFAULT_PMAX) -> float:
    """``(1/2) prod_{p <= pmax} rho_p(n)`` in floating point."""
    factors = [classical_rho_closed(n, p) for p in primes_up_to(pmax).tolist()]
    if not all(factors):
        return 0.0
    return 0.5 * math.exp(math.fsum(math.log(float(f)) for f in factors))


def compare(triple: TripleSpec, n: int, data: SieveData, pmax: int = DEFAULT_PMAX,
            exclude_small: bool = False, threads: int = 1) -> RepresentationReport:
    report = count_representations(triple, n, data, exclude_small, threads)
    report.predicted = euler_constant(triple, n, pmax)
    C = report.predicted.value
    report.ratio = report.V / (C * n * n) if C > 0 else math.inf
    return report


def classical_baseline(n: int, data: SieveData, pmax: int = DEFAULT_PMAX, threads: int = 1) -> Dict[str, float]:
    rep = classical_count(n, data, threads)
    C = classical_constant(n, pmax)
    return {"V": rep.V, "raw_count": rep.raw_count, "predicted": C,
            "ratio": rep.V / (C * n * n) if C > 0 else math.inf}
