import random

import pytest
import sympy

from polylcm.factor import (
    DETERMINISTIC_LIMIT,
    divisors,
    factor_cofactor,
    factorint,
    is_certified,
    is_prime,
    pollard_brent,
)


def test_is_prime_small_range():
    for n in range(-5, 20000):
        assert is_prime(n) == sympy.isprime(n), n


@pytest.mark.parametrize(
    "n",
    [
        2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383,
        341550071728321, 3825123056546413051,  # strong pseudoprimes to leading bases
        561, 41041, 825265, 321197185,          # Carmichael numbers
    ],
)
def test_is_prime_rejects_pseudoprimes(n):
    assert not is_prime(n)


def test_is_prime_random_large():
    rng = random.Random(3)
    for _ in range(400):
        n = rng.randrange(10**12, 10**24)
        assert is_prime(n) == sympy.isprime(n)


def test_certification_boundary():
    assert is_certified(DETERMINISTIC_LIMIT - 1)
    assert not is_certified(DETERMINISTIC_LIMIT)


def test_pollard_brent_is_deterministic():
    n = 1000003 * 998244353
    g1, g2 = pollard_brent(n), pollard_brent(n)
    assert g1 == g2 and n % g1 == 0 and 1 < g1 < n


def test_factorint_matches_sympy():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randrange(2, 10**18)
        assert factorint(n) == sympy.factorint(n)


def test_factorint_prime_powers_and_semiprimes():
    p, q = 1000000007, 998244353
    assert factorint(p**3) == {p: 3}
    assert factorint(p * p * q) == {q: 1, p: 2}
    assert factorint(-12) == {2: 2, 3: 1}
    with pytest.raises(ValueError):
        factorint(0)


def test_factor_cofactor_skips_test_below_square():
    # below (bound+1)^2 a cofactor free of small primes is prime by construction
    assert factor_cofactor(10007, smooth_bound=10**4) == {10007: 1}
    n = 10007 * 10009
    assert factor_cofactor(n, smooth_bound=10**4) == {10007: 1, 10009: 1}


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(-7) == [1, 7]
