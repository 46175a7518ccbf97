import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polylcm import (
    c_theta,
    default_schedule,
    epsilon_of_degree,
    integral_bound_constant,
    integrate_c,
    main_bound_coefficient,
    solve_delta,
)
from polylcm.analytic import (
    FAMILIES,
    IWANIEC,
    IWANIEC_ONLY_CONSTANT,
    IWANIEC_PLUS_VANILLA_CONSTANT,
    VANILLA,
    WU_XI,
    DomainError,
    Schedule,
    adaptive_quad,
    table1,
    truncate,
)

mpmath.mp.dps = 40

TABLE1 = {1: 0.6265, 2: 0.847, 3: 0.8632, 4: 0.9170, 5: 0.9496, 6: 0.9694, 7: 0.9814, 8: 0.9887}


def _single(fam, d=3):
    lo = 0.0 if fam is VANILLA else 0.5
    return Schedule(d, ((lo, fam.hi, fam),))


def test_c_theta_examples():
    assert c_theta(VANILLA, 0.5) == 4.0
    assert c_theta("iwaniec", 2 / 3) == pytest.approx(6.0, rel=1e-14)
    assert c_theta(WU_XI, 32 / 41) == pytest.approx(1148 / 203, rel=1e-14)


def test_wu_xi_pieces_switch_at_breaks():
    assert c_theta(WU_XI, 0.6) == pytest.approx(124 / (91 - 89 * 0.6))
    assert c_theta(WU_XI, 0.7) == pytest.approx(120 / (86 - 83 * 0.7))
    assert c_theta(WU_XI, 0.9) == pytest.approx(28 / (19 - 18 * 0.9))
    # one-sided at each break: the right piece is active
    assert c_theta(WU_XI, 64 / 97) == pytest.approx(120 / (86 - 83 * 64 / 97))


@pytest.mark.parametrize(
    "fam, theta", [(VANILLA, 1.0), (VANILLA, -0.1), (IWANIEC, 0.49), (IWANIEC, 0.7), (WU_XI, 16 / 17)]
)
def test_c_theta_domain(fam, theta):
    with pytest.raises(DomainError):
        c_theta(fam, theta)


def test_integrate_examples():
    iw = _single(IWANIEC)
    assert integrate_c(iw, 0.5, 2 / 3) == pytest.approx(float(mpmath.mpf(8) / 7 * mpmath.log(mpmath.mpf(15) / 8)), abs=1e-14)
    assert integrate_c(iw, 0.5, 2 / 3) == pytest.approx(0.7184099, abs=1e-7)
    van = _single(VANILLA)
    assert integrate_c(van, 2 / 3, 0.9) == pytest.approx(2 * math.log(10 / 3), abs=1e-13)
    assert integrate_c(van, 0.3, 0.3) == 0.0
    with pytest.raises(DomainError):
        integrate_c(iw, 0.5, 0.7)
    with pytest.raises(DomainError):
        integrate_c(iw, 0.6, 0.55)


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_closed_form_matches_quadrature(name):
    fam = FAMILIES[name]
    sched = _single(fam)
    rng = random.Random(hash(name) & 0xFFFF)
    lo, hi = sched.lo, fam.hi if fam.closed_right else fam.hi - 1e-6
    for _ in range(1000):
        a, b = sorted(rng.uniform(lo, hi) for _ in range(2))
        cf = integrate_c(sched, a, b)
        qd = integrate_c(sched, a, b, "quadrature")
        assert abs(cf - qd) <= 1e-9


def test_adaptive_quad_on_known_integrals():
    import numpy as np

    assert adaptive_quad(np.sin, 0.0, math.pi) == pytest.approx(2.0, abs=1e-12)
    assert adaptive_quad(lambda t: 1 / t, 1.0, 1000.0) == pytest.approx(math.log(1000), abs=1e-10)


@settings(max_examples=200, deadline=None)
@given(a=st.floats(0.5, 0.93), h1=st.floats(0, 0.005), h2=st.floats(0, 0.005))
def test_integral_monotone_in_upper_limit(a, h1, h2):
    sched = default_schedule(2)
    b1 = min(a + h1, 0.94)
    b2 = min(b1 + h2, 0.94)
    assert integrate_c(sched, 0.5, b1) <= integrate_c(sched, 0.5, b2) + 1e-15
    assert sched(b1) > 0


def test_schedules():
    assert default_schedule(1).name == "iwaniec"
    assert default_schedule(1).hi == pytest.approx(2 / 3)
    assert default_schedule(2).name == "wu-xi"
    assert default_schedule(2, wu_xi=False).name == "iwaniec+vanilla"
    assert default_schedule(5).name == "iwaniec+vanilla"
    s = default_schedule(3)
    # each theta is covered once: 2/3 goes to the closed Iwaniec piece
    assert s(2 / 3) == pytest.approx(6.0)
    assert s(0.7) == pytest.approx(2 / 0.3)


def test_wu_xi_certificate():
    v = integrate_c(default_schedule(2), 0.5, 0.847)
    assert 1.49 < v < 1.50
    assert v < 1.5
    assert abs(v - integrate_c(default_schedule(2), 0.5, 0.847, "quadrature")) <= 1e-9


def test_named_constants_against_mpmath():
    k3 = mpmath.mpf(8) / 7 * mpmath.log(mpmath.mpf(15) / 8) - 2 * mpmath.log(3)
    k1 = mpmath.mpf(8) / 7 * mpmath.log(mpmath.mpf(5) / 2)
    assert IWANIEC_PLUS_VANILLA_CONSTANT == pytest.approx(float(k3), abs=1e-15)
    assert IWANIEC_ONLY_CONSTANT == pytest.approx(float(k1), abs=1e-15)
    # the four-decimal roundings printed alongside Table 1
    assert round(integral_bound_constant(3), 4) == -1.4788
    assert round(integral_bound_constant(1), 4) == 1.0472
    assert integral_bound_constant(2) is None
    assert integral_bound_constant(2, wu_xi=False) == IWANIEC_PLUS_VANILLA_CONSTANT


def test_closed_form_identity_for_constants():
    for d in (3, 4, 7):
        s = default_schedule(d)
        for delta in (0.7, 0.8, 0.95):
            assert integrate_c(s, 0.5, delta) == pytest.approx(
                integral_bound_constant(d) - 2 * math.log(1 - delta), abs=1e-12
            )
    s = default_schedule(1)
    for delta in (0.55, 0.6, 0.66):
        assert integrate_c(s, 0.5, delta) == pytest.approx(
            integral_bound_constant(1) - (8 / 7) * math.log(6 - 7 * delta), abs=1e-12
        )


def test_table1_paper_mode():
    assert table1("paper") == TABLE1
    for d, v in TABLE1.items():
        assert truncate(solve_delta(d, "paper")) == v


def test_epsilon_examples():
    assert epsilon_of_degree(2) == 0.153
    assert epsilon_of_degree(1) == 0.3735
    assert epsilon_of_degree(5) == pytest.approx(math.exp(-2.9894))
    assert 1 - epsilon_of_degree(5) == pytest.approx(0.949683, abs=1e-6)


def test_solve_delta_exact_d1():
    k1 = mpmath.mpf(8) / 7 * mpmath.log(mpmath.mpf(5) / 2)
    ref = (6 - mpmath.exp((k1 - mpmath.mpf(1) / 2) * 7 / 8)) / 7
    got = solve_delta(1, "exact")
    assert got == pytest.approx(float(ref), abs=2e-8)
    assert got < 0.62656  # the printed threshold is an upper rounding
    assert abs(main_bound_coefficient(1, got)) < 1e-6


def test_solve_delta_exact_d2():
    got = solve_delta(2, "exact")
    assert got == pytest.approx(0.8472308836439075, abs=2e-8)
    assert solve_delta(2, "paper") == 0.847
    assert abs(integrate_c(default_schedule(2), 0.5, got) - 1.5) < 1e-6


@pytest.mark.parametrize("d", range(3, 9))
def test_solve_delta_exact_matches_closed_form(d):
    k = mpmath.mpf(8) / 7 * mpmath.log(mpmath.mpf(15) / 8) - 2 * mpmath.log(3)
    ref = 1 - mpmath.exp((k - d + mpmath.mpf(1) / 2) / 2)
    assert solve_delta(d, "exact") == pytest.approx(float(ref), abs=2e-8)
    # paper mode differs only through the rounded shift
    assert abs(solve_delta(d, "paper") - float(ref)) < 1e-5


def test_solve_delta_eh_override():
    assert solve_delta(3, eh_delta=0.99) == 0.99
    with pytest.raises(ValueError):
        solve_delta(3, eh_delta=1.0)


def test_main_bound_coefficient_examples():
    assert main_bound_coefficient(2, 0.847) == pytest.approx(0.0017230756723201068, rel=1e-9)
    assert main_bound_coefficient(2, 0.847) > 0
    assert main_bound_coefficient(3, 0.5) == 2.5
    with pytest.raises(DomainError):
        main_bound_coefficient(1, 0.7)


def test_invalid_degree():
    for fn in (epsilon_of_degree, solve_delta, default_schedule):
        with pytest.raises(ValueError):
            fn(0)
