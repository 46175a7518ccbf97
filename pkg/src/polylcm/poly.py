"""Integer polynomials: evaluation, discriminant and an irreducibility screen."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import _gf
from .factor import divisors


class InvalidInput(ValueError):
    """Bad user-supplied data (polynomial, modulus, parameter)."""


class Verdict(str, enum.Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Polynomial:
    """f(x) = sum(coeffs[i] * x**i), coefficients ascending."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)
        if len(cs) < 2:
            raise InvalidInput("polynomial must have degree >= 1")

    @classmethod
    def from_coeffs(cls, coeffs) -> "Polynomial":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __call__(self, n: int) -> int:
        return eval_poly(self, n)

    def derivative(self) -> tuple[int, ...]:
        return tuple(i * c for i, c in enumerate(self.coeffs))[1:]

    @cached_property
    def disc(self) -> int:
        return discriminant(self)

    @cached_property
    def content(self) -> int:
        return math.gcd(*self.coeffs)

    def is_ramified(self, p: int) -> bool:
        """p | disc f, or p divides every coefficient."""
        return self.disc % p == 0 or self.content % p == 0

    def canonical(self) -> str:
        """Comma-separated ascending coefficients, e.g. ``"1,0,1"``."""
        return ",".join(str(c) for c in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def eval_poly(f: Polynomial, n: int) -> int:
    """f(n) exactly, by Horner's rule."""
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * n + c
    return acc


def _bareiss_det(m: list[list[int]]) -> int:
    """Exact integer determinant (fraction-free elimination)."""
    a = [row[:] for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Res(a, b) as the Sylvester determinant; ascending coefficient tuples."""
    m, n = len(a) - 1, len(b) - 1
    if n == 0:
        return b[0] ** m
    if m == 0:
        return a[0] ** n
    size = m + n
    rows = []
    ra, rb = list(reversed(a)), list(reversed(b))
    for i in range(n):
        rows.append([0] * i + ra + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + rb + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def discriminant(f: Polynomial) -> int:
    """disc f = (-1)^(d(d-1)/2) Res(f, f') / lc(f)."""
    d = f.degree
    if d < 1:
        raise InvalidInput("discriminant needs degree >= 1")
    if d == 1:
        return 1
    res = resultant(f.coeffs, f.derivative())
    q, r = divmod(res, f.leading)
    assert r == 0
    return -q if (d * (d - 1) // 2) % 2 else q


def rational_roots(f: Polynomial, max_candidates: int = 20000) -> list[Fraction] | None:
    """All rational roots, or ``None`` if the candidate set is too large."""
    cs = f.coeffs
    roots = []
    if cs[0] == 0:
        roots.append(Fraction(0))
        k = next(i for i, c in enumerate(cs) if c)
        cs = cs[k:]
        if len(cs) == 1:
            return roots
    nums, dens = divisors(cs[0]), divisors(cs[-1])
    if len(nums) * len(dens) > max_candidates:
        return None
    seen = set()
    for a in nums:
        for b in dens:
            r = Fraction(a, b)
            for cand in (r, -r):
                if cand in seen:
                    continue
                seen.add(cand)
                # b^d f(a/b) in integers
                num, den = cand.numerator, cand.denominator
                acc = 0
                deg = len(cs) - 1
                for i, c in enumerate(cs):
                    acc += c * num**i * den ** (deg - i)
                if acc == 0:
                    roots.append(cand)
    return sorted(roots)


def _small_primes(count: int, skip) -> list[int]:
    out, n = [], 2
    while len(out) < count:
        if all(n % p for p in range(2, int(n**0.5) + 1)) and skip % n:
            out.append(n)
        n += 1
    return out


def degree_pattern(f: Polynomial, p: int) -> list[int]:
    """Degrees of the irreducible factors of f mod p (f squarefree mod p)."""
    g = _gf.monic(_gf.reduce(f.coeffs, p), p)
    pattern = []
    for k, cnt in _gf.distinct_degree(g, p):
        pattern.extend([k] * cnt)
    return sorted(pattern)


def _subset_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for k in degrees:
        sums |= {s + k for s in sums}
    return sums


def check_irreducible(f: Polynomial, n_primes: int = 25) -> Verdict:
    """Heuristic irreducibility screen over Q.

    Rejected on a rational root or a repeated factor. Otherwise the factor
    degree patterns of f mod p over the first ``n_primes`` good primes are
    intersected: if no proper degree survives, f is irreducible.
    """
    d = f.degree
    if d == 1:
        return Verdict.ACCEPTED
    disc = f.disc
    if disc == 0:
        return Verdict.REJECTED
    roots = rational_roots(f)
    if roots:
        return Verdict.REJECTED
    possible = set(range(1, d))
    if roots is not None:
        possible.discard(1)
        possible.discard(d - 1)
    for p in _small_primes(n_primes, disc * f.leading):
        possible &= _subset_sums(degree_pattern(f, p))
        if not possible:
            return Verdict.ACCEPTED
    return Verdict.INCONCLUSIVE

