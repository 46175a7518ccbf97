"""Dense polynomial arithmetic over F_p.

Polynomials are lists of ints in [0, p), ascending by exponent, with no
trailing zeros; the zero polynomial is ``[]``.
"""

from __future__ import annotations


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(coeffs, p: int) -> list[int]:
    return trim([c % p for c in coeffs])


def sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return trim(out)


def mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return trim([c % p for c in out])


def monic(a: list[int], p: int) -> list[int]:
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def divmod_(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - c * b[j]) % p
    return trim(q), trim(r[:db])


def mod(a: list[int], b: list[int], p: int) -> list[int]:
    return divmod_(a, b, p)[1]


def gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p) if a else []


def powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = mod(base, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = mod(mul(base, base, p), m, p)
    return mod(result, m, p)


def deriv(a: list[int], p: int) -> list[int]:
    return trim([i * a[i] % p for i in range(1, len(a))])


def evaluate(a: list[int], r: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * r + c) % p
    return acc


def distinct_degree(f: list[int], p: int) -> list[tuple[int, int]]:
    """Distinct-degree factorization of a monic squarefree ``f``.

    Returns ``(k, number of irreducible factors of degree k)`` pairs.
    """
    out = []
    h = [0, 1]
    k = 0
    g = list(f)
    while len(g) - 1 >= 2 * (k + 1):
        k += 1
        h = powmod(h, p, g, p)
        d = gcd(g, sub(h, [0, 1], p), p)
        if len(d) > 1:
            out.append((k, (len(d) - 1) // k))
            g = divmod_(g, d, p)[0]
            h = mod(h, g, p)
    if len(g) > 1:
        out.append((len(g) - 1, 1))
    return out


def split_linear(g: list[int], p: int) -> list[int]:
    """Roots of a monic ``g`` that is a product of distinct linear factors.

    Equal-degree splitting with deterministic trial elements x + c,
    c = 0, 1, 2, ...; ``p`` must be odd.
    """
    deg = len(g) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [(-g[0]) % p]
    half = (p - 1) // 2
    c = 0
    while True:
        w = powmod([c % p, 1], half, g, p)
        d = gcd(g, sub(w, [1], p), p)
        if 1 < len(d) < len(g):
            rest = divmod_(g, d, p)[0]
            return sorted(split_linear(d, p) + split_linear(monic(rest, p), p))
        c += 1
