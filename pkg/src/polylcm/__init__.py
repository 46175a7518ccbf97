"""Exact lcm{f(p) : p < x} and related statistics for integer polynomials."""

__version__ = "0.1.0"

from .poly import InvalidInput, Polynomial, Verdict, check_irreducible, discriminant, eval_poly
from .congruence import (
    ResidueClassSet,
    ResourceLimit,
    count_roots_mod_primes,
    hensel_lift,
    roots_mod_prime,
    roots_mod_prime_power_bruteforce,
    varrho,
)
from .sieve import PrimeRange, pi_in_ap, primes_up_to, totient, varsigma, von_mangoldt
from .valuations import (
    FactorizationTable,
    alpha,
    build_factor_table,
    decompose,
    greatest_prime_divisor_stats,
    log_L,
    log_Q,
    log_rad_L,
)
from .analytic import (
    c_theta,
    default_schedule,
    epsilon_of_degree,
    integral_bound_constant,
    integrate_c,
    main_bound_coefficient,
    solve_delta,
)
from .mertens import drift_series, lambda_weighted_varsigma_sum, mertens_sum, root_count_vs_li
