"""Invariant checks run by ``polylcm verify`` at a configurable scale."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .analytic import FAMILIES, Schedule, integrate_c
from .congruence import count_roots_mod_primes, hensel_lift, roots_mod_prime, scan_roots, varrho
from .factor import is_prime
from .poly import Polynomial
from .sieve import primes_up_to, varsigma
from .valuations import build_factor_table, decompose, lcm_from_ledger, log_Q, varsigma_matches_alpha


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _check(name, cond, detail=""):
    return CheckResult(name, bool(cond), detail)


def run_checks(f: Polynomial, x: int = 10**4, m_max: int = 2000, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    d = f.degree

    bad = [m for m in range(1, m_max + 1) if varrho(f, m) != scan_roots(f, m)]
    out.append(_check("varrho completeness", not bad, f"m <= {m_max}; mismatches {bad[:5]}"))

    small = [int(p) for p in primes_up_to(min(1000, x) + 1).primes]
    bad = []
    for p in small:
        if f.is_ramified(p):
            continue
        rho_p = len(roots_mod_prime(f, p))
        k = 1
        while p ** (k + 1) <= 10**6:
            k += 1
            lifted = hensel_lift(f, p, k)
            if lifted.rho != rho_p or any(f(r) % p**k for r in lifted):
                bad.append((p, k))
    out.append(_check("hensel stability", not bad, f"failures {bad[:5]}"))

    pr = primes_up_to(x)
    rho = count_roots_mod_primes(f, pr.primes)
    content = math.gcd(*f.coeffs)
    lag = [int(p) for p, r in zip(pr.primes, rho) if content % p and r > d]
    out.append(_check("lagrange bound", not lag, f"rho(p) > {d} at {lag[:5]}"))

    sample = pr.primes[rng.sample(range(pr.pi), min(200, pr.pi))] if pr.pi else []
    mism = [int(p) for p in sample if len(roots_mod_prime(f, int(p))) != rho[pr.primes.searchsorted(p)]]
    out.append(_check("batch root counts", not mism, f"mismatches {mism[:5]}"))

    primes = [int(p) for p in pr.primes]
    bad = []
    for m in rng.sample(range(1, m_max + 1), min(50, m_max)):
        direct = sum(1 for p in primes if f(p) % m == 0)
        if varsigma(f, pr, m) != direct:
            bad.append(m)
    out.append(_check("varsigma vs direct scan", not bad, f"mismatches {bad[:5]}"))

    table = build_factor_table(f, x)
    recon = all(math.prod(l**v for l, v in r.factors) == r.value for r in table.records)
    out.append(_check("factor reconstruction", recon))
    cert = all(is_prime(l) for r in table.records for l, _ in r.factors)
    out.append(_check("factor primality", cert))

    direct = math.fsum(math.log(r.value) for r in table.records)
    lq = log_Q(table)
    out.append(_check("log Q identity", abs(lq - direct) <= 1e-6 * max(lq, 1.0), f"{lq} vs {direct}"))

    values = [r.value for r in table.records]
    out.append(_check("lcm oracle", lcm_from_ledger(table) == math.lcm(*values) if values else True))

    dec = decompose(table, 6.0, 0.847)
    out.append(_check("partition identity", abs(dec.total() - lq) <= 1e-9 * max(lq, 1.0)))

    ok, detail = varsigma_matches_alpha(table, pr)
    out.append(_check("alpha equals varsigma for large unramified primes", ok, detail))

    worst = 0.0
    for fam in FAMILIES.values():
        lo = max(fam.lo, 0.5) if fam.name != "vanilla" else 0.0
        hi = fam.hi if fam.closed_right else fam.hi - 1e-3
        sched = Schedule(d, ((lo, hi, fam),))
        for _ in range(100):
            a, b = sorted(rng.uniform(lo, hi) for _ in range(2))
            diff = abs(integrate_c(sched, a, b) - integrate_c(sched, a, b, "quadrature"))
            worst = max(worst, diff)
    out.append(_check("closed form vs quadrature", worst <= 1e-9, f"max diff {worst:.3e}"))

    t3 = build_factor_table(f, x, threads=3)
    out.append(_check("partition-independent table", t3.records == table.records))
    return out
