"""Brun-Titchmarsh-type constants C(theta), their integrals and the
resulting admissible exponents delta = 1 - eps(d)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .poly import InvalidInput


class DomainError(InvalidInput):
    """Argument outside the support of a bound family or schedule."""


@dataclass(frozen=True)
class Piece:
    """theta -> num / (c0 - c1*theta) on [a, b)."""

    a: float
    b: float
    num: float
    c0: float
    c1: float

    def __call__(self, theta):
        return self.num / (self.c0 - self.c1 * theta)

    def antiderivative(self, theta: float) -> float:
        return -(self.num / self.c1) * math.log(self.c0 - self.c1 * theta)


@dataclass(frozen=True)
class PiecewiseBound:
    name: str
    pieces: tuple[Piece, ...]
    closed_right: bool = False

    @property
    def lo(self) -> float:
        return self.pieces[0].a

    @property
    def hi(self) -> float:
        return self.pieces[-1].b

    def piece_at(self, theta: float) -> Piece:
        for pc in self.pieces:
            if pc.a <= theta < pc.b:
                return pc
        if self.closed_right and theta == self.hi:
            return self.pieces[-1]
        raise DomainError(f"theta={theta} outside the support of {self.name}")


def _f(q) -> float:
    return float(Fraction(q))


VANILLA = PiecewiseBound("vanilla", (Piece(0.0, 1.0, 2.0, 1.0, 1.0),))
IWANIEC = PiecewiseBound("iwaniec", (Piece(0.5, _f("2/3"), 8.0, 6.0, 7.0),), closed_right=True)
WU_XI = PiecewiseBound(
    "wu-xi",
    (
        Piece(0.5, _f("64/97"), 124.0, 91.0, 89.0),
        Piece(_f("64/97"), _f("32/41"), 120.0, 86.0, 83.0),
        Piece(_f("32/41"), _f("16/17"), 28.0, 19.0, 18.0),
    ),
)
FAMILIES = {b.name: b for b in (VANILLA, IWANIEC, WU_XI)}


def c_theta(family: PiecewiseBound | str, theta: float) -> float:
    """C(theta) for one bound family."""
    if isinstance(family, str):
        family = FAMILIES[family]
    return family.piece_at(theta)(theta)


@dataclass(frozen=True)
class Schedule:
    """Assignment of bound families to consecutive theta-intervals."""

    degree: int
    segments: tuple[tuple[float, float, PiecewiseBound], ...]

    @property
    def lo(self) -> float:
        return self.segments[0][0]

    @property
    def hi(self) -> float:
        return self.segments[-1][1]

    @property
    def closed_right(self) -> bool:
        return self.segments[-1][2].closed_right

    @property
    def name(self) -> str:
        return "+".join(fam.name for _, _, fam in self.segments)

    def pieces(self, a: float, b: float) -> list[Piece]:
        """Integrand pieces clipped to [a, b], in ascending order."""
        out = []
        for s0, s1, fam in self.segments:
            for pc in fam.pieces:
                lo, hi = max(a, s0, pc.a), min(b, s1, pc.b)
                if lo < hi:
                    out.append(Piece(lo, hi, pc.num, pc.c0, pc.c1))
        return out

    def __call__(self, theta: float) -> float:
        for s0, s1, fam in self.segments:
            if s0 <= theta <= s1 and (theta < s1 or fam.closed_right or theta == self.hi):
                return c_theta(fam, theta)
        raise DomainError(f"theta={theta} outside schedule support")


def default_schedule(d: int, wu_xi: bool | None = None) -> Schedule:
    """Iwaniec on [1/2, 2/3] then classical on (2/3, 1); d = 1 stops at 2/3
    and d = 2 uses the Wu-Xi family unless ``wu_xi=False``."""
    if d < 1:
        raise InvalidInput("degree must be >= 1")
    if wu_xi is None:
        wu_xi = d == 2
    if wu_xi:
        if d != 2:
            raise InvalidInput("the Wu-Xi family applies to quadratics only")
        return Schedule(d, ((0.5, WU_XI.hi, WU_XI),))
    two_thirds = IWANIEC.hi
    if d == 1:
        return Schedule(d, ((0.5, two_thirds, IWANIEC),))
    return Schedule(d, ((0.5, two_thirds, IWANIEC), (two_thirds, 1.0, VANILLA)))


def _check_range(schedule: Schedule, a: float, b: float) -> None:
    if a > b:
        raise DomainError("need a <= b")
    if a < schedule.lo or b > schedule.hi or (b == schedule.hi and not schedule.closed_right):
        raise DomainError(f"[{a}, {b}] not inside the support of {schedule.name}")


_GL_X, _GL_W = np.polynomial.legendre.leggauss(15)


def _gl15(func, a: float, b: float) -> float:
    h = 0.5 * (b - a)
    return h * float(np.dot(_GL_W, func(a + h * (_GL_X + 1.0))))


def adaptive_quad(func, a: float, b: float, tol: float = 1e-12, max_depth: int = 60) -> float:
    """Adaptive bisection with a 15-point Gauss-Legendre rule on each leaf.

    ``func`` must accept numpy arrays.
    """

    def rec(lo, hi, whole, tol, depth):
        mid = 0.5 * (lo + hi)
        left, right = _gl15(func, lo, mid), _gl15(func, mid, hi)
        if depth >= max_depth or abs(left + right - whole) <= tol:
            return left + right
        return rec(lo, mid, left, tol / 2, depth + 1) + rec(mid, hi, right, tol / 2, depth + 1)

    if a == b:
        return 0.0
    return rec(a, b, _gl15(func, a, b), tol, 0)


def integrate_c(schedule: Schedule, a: float, b: float, method: str = "closed_form") -> float:
    """Integral of C(theta) over [a, b] under ``schedule``."""
    _check_range(schedule, a, b)
    pieces = schedule.pieces(a, b)
    if method == "closed_form":
        return math.fsum(pc.antiderivative(pc.b) - pc.antiderivative(pc.a) for pc in pieces)
    if method == "quadrature":
        return math.fsum(adaptive_quad(pc, pc.a, pc.b) for pc in pieces)
    raise InvalidInput(f"unknown integration method {method!r}")


# constants of the two closed forms
IWANIEC_PLUS_VANILLA_CONSTANT = (8 / 7) * math.log(15 / 8) - 2 * math.log(3)
IWANIEC_ONLY_CONSTANT = (8 / 7) * math.log(5 / 2)

# rounded constants as printed alongside Table 1
PAPER_EPS = {1: 0.3735, 2: 0.153}
PAPER_SHIFT = 0.9788
PAPER_DELTA_D1 = 0.62656
PAPER_DELTA_D2 = 0.847


def integral_bound_constant(d: int, wu_xi: bool | None = None) -> float | None:
    """delta-free constant K of the closed form of the integral up to delta.

    d = 1: integral = K - (8/7) log(6 - 7 delta);
    d >= 2: integral = K - 2 log(1 - delta).
    Returns None on the Wu-Xi path, which has no single constant.
    """
    sched = default_schedule(d, wu_xi)
    if sched.segments[0][2] is WU_XI:
        return None
    return IWANIEC_ONLY_CONSTANT if d == 1 else IWANIEC_PLUS_VANILLA_CONSTANT


def epsilon_of_degree(d: int) -> float:
    if d < 1:
        raise InvalidInput("degree must be >= 1")
    if d in PAPER_EPS:
        return PAPER_EPS[d]
    return math.exp((-d - PAPER_SHIFT) / 2)


def truncate(v: float, places: int = 4) -> float:
    """Truncate toward zero, tolerant of binary representation error."""
    scale = 10**places
    return math.floor(v * scale + 1e-9) / scale


def solve_delta(
    d: int,
    mode: str = "paper",
    wu_xi: bool | None = None,
    eh_delta: float | None = None,
    tol: float = 1e-8,
) -> float:
    """Largest delta with d - 1/2 >= integral of C over [1/2, delta].

    ``mode="paper"`` returns the rounded values used for Table 1;
    ``mode="exact"`` bisects with unrounded constants. ``eh_delta`` skips
    the constraint entirely (conditional on Elliott-Halberstam) and returns
    the requested value.
    """
    if d < 1:
        raise InvalidInput("degree must be >= 1")
    if eh_delta is not None:
        if not 0 < eh_delta < 1:
            raise InvalidInput("an EH override delta must lie in (0, 1)")
        return float(eh_delta)
    sched = default_schedule(d, wu_xi)
    on_wu_xi = sched.segments[0][2] is WU_XI
    if mode == "paper":
        if d == 1:
            return PAPER_DELTA_D1
        if on_wu_xi:
            return PAPER_DELTA_D2
        return 1 - math.exp((-d - PAPER_SHIFT) / 2)
    if mode != "exact":
        raise InvalidInput(f"unknown mode {mode!r}")
    target = d - 0.5
    lo = sched.lo
    hi = sched.hi if sched.closed_right else math.nextafter(sched.hi, 0.0)
    if integrate_c(sched, lo, hi) <= target:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if integrate_c(sched, sched.lo, mid) <= target:
            lo = mid
        else:
            hi = mid
    return lo


def main_bound_coefficient(d: int, delta: float, wu_xi: bool | None = None) -> float:
    """d - 1/2 - integral of C over [1/2, delta]; positive iff the linear
    lower bound on the very-large-prime part survives."""
    sched = default_schedule(d, wu_xi)
    return d - 0.5 - integrate_c(sched, 0.5, delta)


def table1(mode: str = "paper", degrees=range(1, 9)) -> dict[int, float]:
    """1 - eps(d) truncated to four places."""
    if mode == "paper":
        return {d: truncate(1 - epsilon_of_degree(d)) for d in degrees}
    return {d: truncate(solve_delta(d, "exact")) for d in degrees}
