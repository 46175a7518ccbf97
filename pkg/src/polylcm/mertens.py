"""Mertens-type sums sum_{p<x} rho(p) log p / (p - 1) and related diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import adaptive_quad
from .congruence import count_roots_mod_primes
from .poly import InvalidInput, Polynomial
from .sieve import PrimeRange, pi_in_ap, primes_up_to, varrho

# Li(x) tolerance, relative to the size x / log x of the integral
_LI_REL_TOL = 1e-13


def _terms(f: Polynomial, primes: np.ndarray) -> np.ndarray:
    rho = count_roots_mod_primes(f, primes)
    p = primes.astype(np.float64)
    return rho * np.log(p) / (p - 1.0)


def mertens_sum(f: Polynomial, x: int, pr: PrimeRange | None = None) -> float:
    """sum over primes p < x of rho(p) log p / (p - 1), compensated."""
    if pr is None or pr.limit < x:
        pr = primes_up_to(x)
    primes = pr.primes[pr.primes < x]
    return math.fsum(_terms(f, primes).tolist())


@dataclass(frozen=True)
class Checkpoint:
    x: int
    S: float
    drift: float


@dataclass(frozen=True)
class DriftSeries:
    checkpoints: tuple[Checkpoint, ...]

    @property
    def R_estimate(self) -> float:
        """Empirical estimate of the limiting constant: the last drift."""
        return self.checkpoints[-1].drift

    def deltas(self) -> list[float]:
        cps = self.checkpoints
        return [b.drift - a.drift for a, b in zip(cps, cps[1:])]


def drift_series(f: Polynomial, xs) -> DriftSeries:
    """S(x) - log x at each checkpoint; one sieve and one root count overall."""
    xs = [int(v) for v in xs]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise InvalidInput("checkpoints must be strictly increasing")
    if not xs:
        return DriftSeries(())
    pr = primes_up_to(xs[-1])
    primes = pr.primes
    terms = _terms(f, primes)
    cps = []
    for x in xs:
        k = int(np.searchsorted(primes, x))
        S = math.fsum(terms[:k].tolist())
        cps.append(Checkpoint(x, S, S - math.log(x)))
    return DriftSeries(tuple(cps))


def li(x: float) -> float:
    """Offset logarithmic integral: integral of dt/log t from 2 to x."""
    if x < 2:
        raise InvalidInput("Li is taken from 2")
    # t = e^u turns the integrand into e^u / u, smooth on [log 2, log x]
    tol = _LI_REL_TOL * max(x / math.log(x), 1.0)
    return adaptive_quad(lambda u: np.exp(u) / u, math.log(2.0), math.log(x), tol=tol)


@dataclass(frozen=True)
class RootCountComparison:
    x: int
    sum_rho: int
    li: float
    ratio: float


def root_count_vs_li(f: Polynomial, x: int) -> RootCountComparison:
    """Exact sum of rho(p) over p < x against Li(x)."""
    if x < 3:
        raise InvalidInput("need x >= 3")
    pr = primes_up_to(x)
    total = int(count_roots_mod_primes(f, pr.primes).sum())
    L = li(x)
    return RootCountComparison(x, total, L, total / L)


def prime_powers_below(bound: int) -> list[tuple[int, int, int]]:
    """(m, p, k) for every prime power m = p^k < bound, sorted by m."""
    out = []
    if bound <= 2:
        return out
    for p in primes_up_to(bound).primes.tolist():
        m, k = p, 1
        while m < bound:
            out.append((m, p, k))
            m *= p
            k += 1
    return sorted(out)


def lambda_weighted_varsigma_sum(
    f: Polynomial, x: int, bound: float, pr: PrimeRange | None = None
) -> float:
    """sum over prime powers m < bound of varsigma(m) * Lambda(m), exactly counted."""
    if bound > x:
        raise InvalidInput("bound must not exceed x")
    if pr is None or pr.limit != x:
        pr = primes_up_to(x)
    terms = []
    for m, p, _ in prime_powers_below(math.ceil(bound)):
        if m >= bound:
            continue
        s = sum(pi_in_ap(pr, m, r) for r in varrho(f, m))
        if s:
            terms.append(s * math.log(p))
    return math.fsum(terms)
