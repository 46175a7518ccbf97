"""Primality certification and integer factorization.

Everything here is deterministic: Miller-Rabin uses fixed witness sets and
Pollard-Brent uses a fixed start point with cycle constants c = 1, 2, 3, ...
"""

from __future__ import annotations

from math import gcd, isqrt

# Deterministic Miller-Rabin witness sets, keyed by exclusive upper bound.
_WITNESSES = [
    (2047, (2,)),
    (1373653, (2, 3)),
    (25326001, (2, 3, 5)),
    (3215031751, (2, 3, 5, 7)),
    (2152302898747, (2, 3, 5, 7, 11)),
    (3474749660383, (2, 3, 5, 7, 11, 13)),
    (341550071728321, (2, 3, 5, 7, 11, 13, 17)),
    (3825123056546413051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318665857834031151167461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3317044064679887385961981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
]

#: Inputs at or above this bound are only strong-probable-prime tested.
DETERMINISTIC_LIMIT = _WITNESSES[-1][0]

# Extra fixed witnesses used past the deterministic range.
_SPRP_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                 73, 79, 83, 89, 97)


class FactorizationError(RuntimeError):
    """Raised when a composite could not be split within the retry budget."""


def _is_sprp(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin with deterministic witnesses below ``DETERMINISTIC_LIMIT``.

    Above the limit the answer is a strong-probable-prime verdict; use
    :func:`is_certified` to tell the two apart.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 97 * 97:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    witnesses = _SPRP_WITNESSES
    for bound, ws in _WITNESSES:
        if n < bound:
            witnesses = ws
            break
    return all(_is_sprp(n, a % n, d, s) for a in witnesses if a % n)


def is_certified(n: int) -> bool:
    """True when a positive :func:`is_prime` verdict on ``n`` is a proof."""
    return n < DETERMINISTIC_LIMIT


def pollard_brent(n: int, max_retries: int = 64) -> int:
    """Return a nontrivial factor of the odd composite ``n``.

    Brent's cycle detection on x -> x^2 + c, starting at y = 2, with
    c = 1, 2, 3, ... on retry.
    """
    if n % 2 == 0:
        return 2
    m = 128
    for c in range(1, max_retries + 1):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # Batched gcd overshot; replay one step at a time.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise FactorizationError(f"Pollard-Brent failed to split {n} after {max_retries} retries")


def _perfect_power(n: int) -> tuple[int, int] | None:
    for k in range(2, n.bit_length() + 1):
        r = round(n ** (1.0 / k)) if n.bit_length() < 1000 else _iroot(n, k)
        for cand in (r - 1, r, r + 1):
            if cand > 1 and cand**k == n:
                return cand, k
        if r < 2:
            break
    return None


def _iroot(n: int, k: int) -> int:
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _split_into(n: int, out: dict[int, int], mult: int) -> None:
    """Fully factor ``n`` (no small factors assumed) into ``out``."""
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + mult
        return
    pp = _perfect_power(n)
    if pp is not None:
        _split_into(pp[0], out, mult * pp[1])
        return
    g = pollard_brent(n)
    e = 0
    while n % g == 0:
        n //= g
        e += 1
    _split_into(g, out, mult * e)
    _split_into(n, out, mult)


def factor_cofactor(n: int, smooth_bound: int = 1) -> dict[int, int]:
    """Factor ``n`` known to have no prime factor <= ``smooth_bound``.

    If ``n < (smooth_bound + 1)**2`` it is prime (or 1) and no test is run.
    """
    if n <= 1:
        return {}
    if n <= smooth_bound * smooth_bound:
        return {n: 1}
    out: dict[int, int] = {}
    _split_into(n, out, 1)
    # merge repeated primes discovered on different branches
    return dict(sorted(out.items()))


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` as an ascending ``{prime: exponent}`` map."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    # short trial division before reaching for rho
    p = 101
    limit = min(isqrt(n), 10_000)
    while p <= limit and n > 1:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
            limit = min(isqrt(n), 10_000)
        p += 2
    if n > 1:
        for q, e in factor_cofactor(n, 1).items():
            out[q] = out.get(q, 0) + e
    return dict(sorted(out.items()))


def divisors(n: int) -> list[int]:
    """Positive divisors of ``|n|`` in ascending order."""
    ds = [1]
    for p, e in factorint(n).items():
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)
