"""Factor tables of |f(q)| over prime arguments q < x.

Small primes are removed by marking arithmetic progressions q = r mod l^k
for the roots r of f mod l^k; what is left is certified prime or split
with Pollard-Brent. From the table the exponents alpha_l (sum over q) and
lambda_l (max over q) give Q(x), lcm{f(q)} and its radical exactly.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .congruence import BRUTEFORCE_CEILING, roots_mod_prime, roots_mod_prime_power_bruteforce
from .factor import factor_cofactor, is_certified
from .poly import InvalidInput, Polynomial
from .sieve import primes_up_to

L0_FLOOR = 10**4
L0_CAP = 10**6


def default_l0(x: int) -> int:
    return min(max(L0_FLOOR, math.isqrt(max(x - 1, 0)) + 1), L0_CAP)


@dataclass(frozen=True)
class FactorRecord:
    q: int
    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def largest_prime(self) -> int:
        return self.factors[-1][0]


@dataclass
class ExponentLedger:
    """prime l -> (alpha, lambda): total and maximal exponent over the table."""

    alpha: dict[int, int] = field(default_factory=dict)
    lam: dict[int, int] = field(default_factory=dict)

    @classmethod
    def from_records(cls, records) -> "ExponentLedger":
        led = cls()
        for rec in records:
            for ell, v in rec.factors:
                led.alpha[ell] = led.alpha.get(ell, 0) + v
                if v > led.lam.get(ell, 0):
                    led.lam[ell] = v
        return led

    def merge(self, other: "ExponentLedger") -> "ExponentLedger":
        out = ExponentLedger(dict(self.alpha), dict(self.lam))
        for ell, a in other.alpha.items():
            out.alpha[ell] = out.alpha.get(ell, 0) + a
            out.lam[ell] = max(out.lam.get(ell, 0), other.lam[ell])
        return out

    def primes(self) -> list[int]:
        return sorted(self.alpha)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExponentLedger) and (self.alpha, self.lam) == (other.alpha, other.lam)


@dataclass(frozen=True, eq=False)
class FactorizationTable:
    poly: Polynomial
    x: int
    records: tuple[FactorRecord, ...]
    n_arguments: int
    arguments: str = "primes"
    l0: int = L0_FLOOR

    @cached_property
    def ledger(self) -> ExponentLedger:
        return ExponentLedger.from_records(self.records)

    @property
    def certified(self) -> bool:
        """False if some listed prime is only a strong probable prime."""
        return all(is_certified(r.largest_prime) for r in self.records)

    def __len__(self) -> int:
        return len(self.records)


@lru_cache(maxsize=4096)
def _root_levels(f: Polynomial, ell: int, k: int) -> tuple[int, ...] | None:
    """Roots mod ell^k, or None past the brute-force ceiling at a ramified ell."""
    if k == 1:
        return roots_mod_prime(f, ell).residues
    if not f.is_ramified(ell):
        prev = _root_levels(f, ell, k - 1)
        mod = ell**k
        df = f.derivative()
        out = []
        for r in prev:
            d = 0
            for c in reversed(df):
                d = (d * r + c) % mod
            out.append((r - f(r) * pow(d, -1, mod)) % mod)
        return tuple(sorted(out))
    if ell**k > BRUTEFORCE_CEILING:
        return None
    return roots_mod_prime_power_bruteforce(f, ell, k).residues


def _valuation(n: int, ell: int) -> int:
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def _factor_block(f, args, values, small_primes, l0):
    """Factor values[i] = |f(args[i])| for one contiguous block of arguments."""
    n = len(args)
    if n == 0:
        return []
    lo, hi = int(args[0]), int(args[-1]) + 1
    pos = np.full(hi - lo, -1, dtype=np.int64)
    pos[args - lo] = np.arange(n)
    maxval = max(values)
    found: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for ell in small_primes:
        ell = int(ell)
        if ell > maxval:
            break
        v = None
        k, mod = 1, ell
        hits_any = True
        while hits_any and mod <= maxval:
            roots = _root_levels(f, ell, k)
            if roots is None:
                # ramified and beyond the ceiling: finish by direct division
                idx = np.flatnonzero(v == k - 1)
                for i in idx:
                    v[i] = _valuation(values[i], ell)
                break
            hits_any = False
            for r in roots:
                start = r + (lo - r + mod - 1) // mod * mod if r < lo else r
                if start >= hi:
                    continue
                hit = pos[start - lo :: mod]
                hit = hit[hit >= 0]
                if hit.size:
                    if v is None:
                        v = np.zeros(n, dtype=np.int64)
                    v[hit] += 1
                    hits_any = True
            k += 1
            mod *= ell
        if v is not None:
            for i in np.flatnonzero(v):
                found[i].append((ell, int(v[i])))
    out = []
    for i in range(n):
        c = values[i]
        for ell, e in found[i]:
            c //= ell**e
        facs = found[i]
        if c > 1:
            facs = facs + sorted(factor_cofactor(c, l0).items())
        out.append(FactorRecord(int(args[i]), values[i], tuple(facs)))
    return out


def _arguments(x: int, arguments: str) -> np.ndarray:
    if arguments == "primes":
        return primes_up_to(x).primes
    if arguments == "integers":
        return np.arange(1, max(x, 1), dtype=np.int64)
    raise InvalidInput(f"unknown argument set {arguments!r}")


def build_factor_table(
    f: Polynomial,
    x: int,
    l0: int | None = None,
    threads: int = 1,
    arguments: str = "primes",
) -> FactorizationTable:
    """Complete factorizations of |f(q)| for every prime q < x.

    ``arguments="integers"`` uses every n in [1, x) instead. Values 0 and 1
    get no record. ``threads`` splits the arguments into contiguous blocks;
    the result does not depend on it.
    """
    x = int(x)
    l0 = default_l0(x) if l0 is None else int(l0)
    args = _arguments(x, arguments)
    values = [abs(f(int(q))) for q in args]
    keep = [i for i, v in enumerate(values) if v > 1]
    args_k = args[keep] if len(keep) != len(args) else args
    values_k = [values[i] for i in keep]
    small = primes_up_to(l0 + 1).primes
    nblocks = max(1, min(int(threads), len(keep) or 1))
    cuts = [len(keep) * j // nblocks for j in range(nblocks + 1)]
    blocks = [(args_k[a:b], values_k[a:b]) for a, b in zip(cuts, cuts[1:])]
    if nblocks > 1:
        with ThreadPoolExecutor(nblocks) as ex:
            parts = list(ex.map(lambda blk: _factor_block(f, blk[0], blk[1], small, l0), blocks))
    else:
        parts = [_factor_block(f, blocks[0][0], blocks[0][1], small, l0)]
    records = tuple(r for part in parts for r in part)
    return FactorizationTable(f, x, records, int(len(args)), arguments, l0)


def alpha(table: FactorizationTable, ell: int) -> int:
    """Exact exponent of ``ell`` in Q(x)."""
    return table.ledger.alpha.get(ell, 0)


def log_Q(table: FactorizationTable) -> float:
    led = table.ledger
    return math.fsum(a * math.log(ell) for ell, a in led.alpha.items())


def log_L(table: FactorizationTable) -> float:
    led = table.ledger
    return math.fsum(lam * math.log(ell) for ell, lam in led.lam.items())


def log_rad_L(table: FactorizationTable) -> float:
    return math.fsum(math.log(ell) for ell in table.ledger.alpha)


def lcm_from_ledger(table: FactorizationTable) -> int:
    return math.prod(ell**lam for ell, lam in table.ledger.lam.items())


@dataclass(frozen=True)
class Decomposition:
    small: float
    medium: float
    large: float
    very_large: float
    x_b: float
    delta: float
    B: float

    def total(self) -> float:
        return math.fsum((self.small, self.medium, self.large, self.very_large))

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.small, self.medium, self.large, self.very_large)


def regime(ell: int, x: int, x_b: float, delta: float) -> str:
    """Which part of Q(x) the prime ``ell`` belongs to.

    [2, x_b) small, [x_b, sqrt x] medium, (sqrt x, x^delta) large,
    [x^delta, oo) very large; earlier regimes win if cuts cross.
    """
    if ell < x_b:
        return "small"
    if ell * ell <= x:
        return "medium"
    if math.log(ell) < delta * math.log(x):
        return "large"
    return "very_large"


def decompose(table: FactorizationTable, B: float = 6.0, delta: float = 0.847) -> Decomposition:
    """Split log Q(x) into the small/medium/large/very-large prime parts."""
    if not 0 < delta < 1:
        raise InvalidInput("delta must lie in (0, 1)")
    if B < 0:
        raise InvalidInput("B must be >= 0")
    x = table.x
    if x < 2:
        return Decomposition(0.0, 0.0, 0.0, 0.0, 0.0, delta, B)
    lx = math.log(x)
    x_b = math.sqrt(x) * lx ** (-B)
    parts = {"small": [], "medium": [], "large": [], "very_large": []}
    for ell, a in table.ledger.alpha.items():
        parts[regime(ell, x, x_b, delta)].append(a * math.log(ell))
    return Decomposition(
        math.fsum(parts["small"]),
        math.fsum(parts["medium"]),
        math.fsum(parts["large"]),
        math.fsum(parts["very_large"]),
        x_b,
        delta,
        B,
    )


@dataclass(frozen=True)
class DensityStats:
    N: int
    total: int
    fraction: float
    exponent: float
    against: str
    flags: tuple[tuple[int, bool], ...] = field(repr=False)


def greatest_prime_divisor_stats(
    table: FactorizationTable, e: float, against: str = "q"
) -> DensityStats:
    """Count arguments q whose |f(q)| has a prime factor above q^e.

    ``against="x"`` compares with x^e instead of q^e. The fraction is taken
    over all arguments, including those with |f(q)| in {0, 1}.
    """
    d = table.poly.degree
    if not 0 < e < d + 1:
        raise InvalidInput(f"exponent must lie in (0, {d + 1})")
    if against not in ("q", "x"):
        raise InvalidInput("against must be 'q' or 'x'")
    lx = math.log(table.x) if table.x > 1 else 0.0
    flags = []
    for rec in table.records:
        ref = math.log(rec.q) if against == "q" else lx
        flags.append((rec.q, math.log(rec.largest_prime) > e * ref))
    N = sum(flag for _, flag in flags)
    frac = N / table.n_arguments if table.n_arguments else 0.0
    return DensityStats(N, table.n_arguments, frac, e, against, tuple(flags))


def restrict(table: FactorizationTable, x: int) -> FactorizationTable:
    """The table for a smaller bound x, read off an existing one."""
    if x > table.x:
        raise InvalidInput("can only restrict to a smaller x")
    recs = tuple(r for r in table.records if r.q < x)
    if table.arguments == "primes":
        n_args = int(primes_up_to(x).pi)
    else:
        n_args = max(x - 1, 0)
    return FactorizationTable(table.poly, x, recs, n_args, table.arguments, table.l0)


def varsigma_matches_alpha(table: FactorizationTable, pr=None, limit: int = 200):
    """Check alpha(l) == varsigma(l) for unramified l with l^2 > max |f(q)|.

    Such l divide each f(q) at most once, so the two counts must agree.
    Returns ``(ok, detail)`` over at most ``limit`` primes.
    """
    from .sieve import varsigma

    if not table.records:
        return True, "empty table"
    if table.arguments != "primes":
        raise InvalidInput("varsigma counts prime arguments only")
    pr = pr if pr is not None and pr.limit == table.x else primes_up_to(table.x)
    maxval = max(r.value for r in table.records)
    cands = [l for l in sorted(table.ledger.alpha) if l * l > maxval and not table.poly.is_ramified(l)][:limit]
    bad = [l for l in cands if table.ledger.alpha[l] != varsigma(table.poly, pr, l)]
    return not bad, f"checked {len(cands)} primes; mismatches {bad[:5]}"
