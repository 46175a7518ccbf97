"""Roots of f modulo primes, prime powers and composite moduli."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from . import _gf
from .factor import factorint, is_prime
from .poly import InvalidInput, Polynomial

SCAN_THRESHOLD = 1 << 14
BRUTEFORCE_CEILING = 10**7


class ResourceLimit(RuntimeError):
    """A configured size ceiling would be exceeded."""


class RamifiedPrime(InvalidInput):
    """Hensel lifting was asked to work at a prime dividing disc f or the content."""


@dataclass(frozen=True)
class ResidueClassSet:
    modulus: int
    residues: tuple[int, ...]

    @property
    def rho(self) -> int:
        return len(self.residues)

    def __len__(self) -> int:
        return len(self.residues)

    def __iter__(self):
        return iter(self.residues)

    def __contains__(self, r: int) -> bool:
        return r % self.modulus in set(self.residues)


def _make(m: int, residues) -> ResidueClassSet:
    return ResidueClassSet(m, tuple(sorted({r % m for r in residues})))


def scan_roots(f: Polynomial, m: int) -> ResidueClassSet:
    """Every r in [0, m) with f(r) = 0 mod m, by exhaustive evaluation."""
    if m < 1:
        raise InvalidInput("modulus must be >= 1")
    if m == 1:
        return ResidueClassSet(1, (0,))
    cs = [c % m for c in f.coeffs]
    if m < 3_000_000_000:
        r = np.arange(m, dtype=np.int64)
        acc = np.zeros(m, dtype=np.int64)
        for c in reversed(cs):
            acc = (acc * r + c) % m
        return ResidueClassSet(m, tuple(int(v) for v in np.flatnonzero(acc == 0)))
    return _make(m, (r for r in range(m) if _gf.evaluate(cs, r, m) == 0))


def roots_mod_prime(f: Polynomial, p: int) -> ResidueClassSet:
    """All roots of f mod the prime ``p``.

    Exhaustive scan below ``SCAN_THRESHOLD``; above it the root-bearing part
    gcd(f, x^p - x) is split by equal-degree splitting.
    """
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    g = _gf.reduce(f.coeffs, p)
    if not g:
        return ResidueClassSet(p, tuple(range(p)))
    if len(g) == 1:
        return ResidueClassSet(p, ())
    if p < SCAN_THRESHOLD:
        return scan_roots(f, p)
    g = _gf.monic(g, p)
    h = _gf.powmod([0, 1], p, g, p)
    lin = _gf.gcd(g, _gf.sub(h, [0, 1], p), p)
    return _make(p, _gf.split_linear(lin, p))


def hensel_lift(f: Polynomial, p: int, k: int) -> ResidueClassSet:
    """Lift each simple root mod p to the unique root mod p^k (Newton)."""
    if k < 1:
        raise InvalidInput("k must be >= 1")
    if f.is_ramified(p):
        raise RamifiedPrime(
            f"{p} is ramified for f (disc f = {f.disc}); use roots_mod_prime_power_bruteforce"
        )
    base = roots_mod_prime(f, p)
    if k == 1:
        return base
    df = Polynomial.from_coeffs(f.derivative()) if f.degree > 1 else None
    mod = p**k
    out = []
    for r in base:
        dr = df(r) if df is not None else f.coeffs[1]
        if dr % p == 0:
            raise RamifiedPrime(f"root {r} of f mod {p} is not simple")
        pe = p
        while pe < mod:
            pe = min(pe * pe, mod)
            dr = (df(r) if df is not None else f.coeffs[1]) % pe
            r = (r - f(r) * pow(dr, -1, pe)) % pe
        out.append(r)
    return _make(mod, out)


def roots_mod_prime_power_bruteforce(
    f: Polynomial, p: int, k: int, ceiling: int = BRUTEFORCE_CEILING
) -> ResidueClassSet:
    """Roots mod p^k, lifting level by level and scanning each fiber."""
    if k < 1:
        raise InvalidInput("k must be >= 1")
    if p**k > ceiling:
        raise ResourceLimit(f"{p}^{k} exceeds the brute-force ceiling {ceiling}")
    roots = list(roots_mod_prime(f, p))
    pj = p
    for _ in range(k - 1):
        nxt = pj * p
        roots = [r + t * pj for r in roots for t in range(p) if f(r + t * pj) % nxt == 0]
        pj = nxt
    return _make(pj, roots)


def roots_mod_prime_power(
    f: Polynomial, p: int, k: int, ceiling: int = BRUTEFORCE_CEILING
) -> ResidueClassSet:
    if not f.is_ramified(p):
        return hensel_lift(f, p, k)
    return roots_mod_prime_power_bruteforce(f, p, k, ceiling)


def crt_combine(a: ResidueClassSet, b: ResidueClassSet) -> ResidueClassSet:
    m1, m2 = a.modulus, b.modulus
    inv = pow(m1, -1, m2) if m2 > 1 else 0
    out = [r + m1 * ((s - r) * inv % m2) for r in a for s in b]
    return _make(m1 * m2, out)


def varrho(f: Polynomial, m: int, ceiling: int = BRUTEFORCE_CEILING) -> ResidueClassSet:
    """The full root set of f mod m, via prime powers and CRT."""
    if m < 1:
        raise InvalidInput("modulus must be >= 1")
    acc = ResidueClassSet(1, (0,))
    for p, e in factorint(m).items() if m > 1 else ():
        acc = crt_combine(acc, roots_mod_prime_power(f, p, e, ceiling))
        if not acc.residues:
            return ResidueClassSet(m, ())
    return acc


def rho(f: Polynomial, m: int) -> int:
    return varrho(f, m).rho


# -- batch root counting over many primes ---------------------------------


@njit(cache=True)
def _deg(a):
    for i in range(a.shape[0] - 1, -1, -1):
        if a[i] != 0:
            return i
    return -1


@njit(cache=True)
def _powmod_int(b, e, p):
    r = 1
    b %= p
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


@njit(cache=True)
def _mulmod(a, b, g, D, p):
    prod = np.zeros(2 * D - 1, np.int64)
    for i in range(D):
        ai = a[i]
        if ai:
            for j in range(D):
                prod[i + j] = (prod[i + j] + ai * b[j]) % p
    for k in range(2 * D - 2, D - 1, -1):
        c = prod[k]
        if c:
            for j in range(D + 1):
                prod[k - D + j] = (prod[k - D + j] - c * g[j]) % p
    return prod[:D].copy()


@njit(cache=True)
def _count_one(c, p, scan_limit):
    D = _deg(c)
    if D < 0:
        return p
    if D == 0:
        return 0
    if p < scan_limit:
        cnt = 0
        for r in range(p):
            acc = 0
            for i in range(D, -1, -1):
                acc = (acc * r + c[i]) % p
            if acc == 0:
                cnt += 1
        return cnt
    if D == 1:
        return 1
    inv = _powmod_int(c[D], p - 2, p)
    g = np.empty(D + 1, np.int64)
    for i in range(D + 1):
        g[i] = c[i] * inv % p
    h = np.zeros(D, np.int64)
    h[0] = 1
    base = np.zeros(D, np.int64)
    base[1] = 1
    e = p
    while e:
        if e & 1:
            h = _mulmod(h, base, g, D, p)
        e >>= 1
        if e:
            base = _mulmod(base, base, g, D, p)
    a = g.copy()
    b = np.zeros(D + 1, np.int64)
    for i in range(D):
        b[i] = h[i]
    b[1] = (b[1] - 1) % p
    while True:
        db = _deg(b)
        if db < 0:
            return _deg(a)
        binv = _powmod_int(b[db], p - 2, p)
        da = _deg(a)
        while da >= db:
            coef = a[da] * binv % p
            shift = da - db
            for j in range(db + 1):
                a[shift + j] = (a[shift + j] - coef * b[j]) % p
            da = _deg(a)
        a, b = b, a


@njit(cache=True)
def _count_batch(cmat, primes, scan_limit):
    out = np.empty(primes.shape[0], np.int64)
    for i in range(primes.shape[0]):
        out[i] = _count_one(cmat[i], primes[i], scan_limit)
    return out


def count_roots_mod_primes(f: Polynomial, primes) -> np.ndarray:
    """rho(p) for every prime in ``primes`` (each below 2^31)."""
    primes = np.asarray(primes, dtype=np.int64)
    if primes.size == 0:
        return np.zeros(0, dtype=np.int64)
    if int(primes.max()) >= 1 << 31:
        raise InvalidInput("batch root counting supports primes below 2^31")
    if all(abs(c) < 1 << 62 for c in f.coeffs):
        cmat = np.mod(np.array(f.coeffs, dtype=np.int64)[None, :], primes[:, None])
    else:
        cmat = np.array([[c % int(p) for c in f.coeffs] for p in primes], dtype=np.int64)
    return _count_batch(cmat, primes, SCAN_THRESHOLD)
