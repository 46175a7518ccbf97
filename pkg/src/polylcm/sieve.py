"""Segmented prime sieve, primes in progressions, and the counting function
varsigma(m) = #{p < x : m | f(p)}."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .congruence import ResourceLimit, varrho
from .factor import factorint
from .poly import InvalidInput, Polynomial

SEGMENT_SIZE = 1 << 20
MEMORY_LIMIT = 4 * 10**9


@dataclass(frozen=True, eq=False)
class PrimeRange:
    """Primality flags for all naturals below ``limit``."""

    limit: int
    flags: np.ndarray = field(repr=False)
    segment_size: int = SEGMENT_SIZE

    @cached_property
    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.flags).astype(np.int64)

    @property
    def pi(self) -> int:
        return int(self.primes.size)

    def __contains__(self, n: int) -> bool:
        return 0 <= n < self.limit and bool(self.flags[n])

    def __len__(self) -> int:
        return self.pi


def _base_primes(n: int) -> np.ndarray:
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return np.flatnonzero(flags)


def _sieve_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    seg = np.ones(hi - lo, dtype=bool)
    for p in base:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, -(-lo // p) * p)
        seg[start - lo :: p] = False
    if lo < 2:
        seg[: 2 - lo] = False
    return seg


def primes_up_to(x: int, segment_size: int = SEGMENT_SIZE, threads: int = 1) -> PrimeRange:
    """Sieve of Eratosthenes over [0, x), one segment at a time."""
    x = max(int(x), 0)
    if x > MEMORY_LIMIT:
        raise ResourceLimit(f"sieve limit {x} exceeds the memory budget {MEMORY_LIMIT}")
    flags = np.zeros(x, dtype=bool)
    if x <= 2:
        return PrimeRange(x, flags, segment_size)
    base = _base_primes(math.isqrt(x - 1) + 1)
    bounds = [(lo, min(lo + segment_size, x)) for lo in range(0, x, segment_size)]

    def work(b):
        lo, hi = b
        flags[lo:hi] = _sieve_segment(lo, hi, base)

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            list(ex.map(work, bounds))
    else:
        for b in bounds:
            work(b)
    return PrimeRange(x, flags, segment_size)


def pi_in_ap(pr: PrimeRange, m: int, a: int) -> int:
    """Number of primes p < x with p = a (mod m); no coprimality filter."""
    if m < 1 or not 0 <= a < m:
        raise InvalidInput("need 0 <= a < m")
    return int(np.count_nonzero(pr.flags[a::m]))


def varsigma(f: Polynomial, pr: PrimeRange, m: int) -> int:
    """#{p < x : m | f(p)}, summed over the residue classes of varrho(m)."""
    return sum(pi_in_ap(pr, m, r) for r in varrho(f, m) if r < pr.limit)


def totient(m: int) -> int:
    if m < 1:
        raise InvalidInput("totient needs m >= 1")
    out = m
    for p in factorint(m) if m > 1 else ():
        out -= out // p
    return out


def von_mangoldt(m: int) -> float:
    if m < 2:
        return 0.0
    fac = factorint(m)
    if len(fac) == 1:
        return math.log(next(iter(fac)))
    return 0.0
