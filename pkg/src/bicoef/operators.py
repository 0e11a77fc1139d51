"""The class operator, membership grids, and the coefficient-equating systems.

The operator L[f] = (1-lam)*(f/z)^mu + lam*f'(z)*(f/z)^(mu-1) maps a
normalized function to a unit-constant series.  Its first two coefficients
admit closed forms in (a2, a3, lam, mu); matching them against the series
route is the module's core identity.  The induce/lift pair implements the
forward and inverse coefficient-equating systems used to derive the bounds:
``induce`` solves for (a2, a3) and the second positive-real-part element from
a given first one, ``lift`` recovers the coefficient functionals from a full
tuple.

All scalar formulas are plain arithmetic, so they broadcast over numpy
arrays; the falsification harness relies on that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import caratheodory
from .series import NormalizedFunction, TruncatedSeries, revert

__all__ = [
    "AlphaParams",
    "BetaParams",
    "CoefficientTuple",
    "MembershipGrid",
    "MembershipReport",
    "apply_operator",
    "operator_coeffs_closed",
    "membership_alpha",
    "membership_beta",
    "lift_alpha",
    "lift_beta",
    "BetaLift",
    "induce_q_alpha",
    "induce_q_beta",
    "CONSISTENCY_TOL",
]

CONSISTENCY_TOL = 1e-9


@dataclass(frozen=True)
class AlphaParams:
    """Parameters of the angular-opening class: 0 < alpha <= 1, lam >= 1, mu >= 0."""

    alpha: float
    lam: float
    mu: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if self.lam < 1.0:
            raise ValueError(f"lam must be >= 1, got {self.lam!r}")
        if self.mu < 0.0:
            raise ValueError(f"mu must be >= 0, got {self.mu!r}")


@dataclass(frozen=True)
class BetaParams:
    """Parameters of the real-part class: 0 <= beta < 1, lam >= 1, mu >= 0."""

    beta: float
    lam: float
    mu: float

    def __post_init__(self):
        if not 0.0 <= self.beta < 1.0:
            raise ValueError(f"beta must lie in [0, 1), got {self.beta!r}")
        if self.lam < 1.0:
            raise ValueError(f"lam must be >= 1, got {self.lam!r}")
        if self.mu < 0.0:
            raise ValueError(f"mu must be >= 0, got {self.mu!r}")


@dataclass(frozen=True)
class CoefficientTuple:
    """First two coefficients of the paired positive-real-part elements."""

    p1: complex
    p2: complex
    q1: complex
    q2: complex

    def prefix_verdicts(self, mode: str = "toeplitz") -> tuple[str, str]:
        """Admissibility verdicts for the (p1, p2) and (q1, q2) prefixes."""
        return (
            caratheodory.is_admissible_prefix([self.p1, self.p2], mode=mode),
            caratheodory.is_admissible_prefix([self.q1, self.q2], mode=mode),
        )


def apply_operator(f: NormalizedFunction, lam: float, mu: float,
                   order: int | None = None) -> TruncatedSeries:
    """The operator series (1-lam)*(f/z)^mu + lam*f'*(f/z)^(mu-1).

    f/z and f' are known only through order f.order - 1, so that is the
    maximum (and default) result order.  The constant term is exactly 1.
    """
    max_order = f.order - 1
    if order is None:
        order = max_order
    if order > max_order:
        raise ValueError(f"order {order} exceeds computable order {max_order}")
    h = f.series.shift_down().truncate(order)
    df = f.series.derivative().truncate(order)
    return (1.0 - lam) * h.pow_real(mu) + lam * (df * h.pow_real(mu - 1.0))


def operator_coeffs_closed(a2, a3, lam, mu):
    """Closed forms of the operator's first two coefficients.

    l1 = (lam+mu)*a2 and l2 = (2*lam+mu)*a3 + (mu-1)*(lam+mu/2)*a2^2; matches
    the series route of :func:`apply_operator` coefficient by coefficient.
    """
    l1 = (lam + mu) * a2
    l2 = (2.0 * lam + mu) * a3 + (mu - 1.0) * (lam + mu / 2.0) * a2 * a2
    return l1, l2


@dataclass(frozen=True)
class MembershipGrid:
    """Evaluation grid for the disk: circles of the given radii."""

    radii: tuple[float, ...] = (0.5, 0.8, 0.9, 0.95)
    n_angles: int = 256
    tol: float = 1e-8

    def points(self) -> np.ndarray:
        for r in self.radii:
            if not 0.0 <= r < 1.0:
                raise ValueError(f"grid radius must be < 1, got {r!r}")
        ang = 2.0 * np.pi * np.arange(self.n_angles) / self.n_angles
        ring = np.exp(1j * ang)
        return np.concatenate([r * ring for r in self.radii])


@dataclass(frozen=True)
class MembershipReport:
    """Outcome of a grid membership check (a necessary condition only).

    ``worst_value`` is the largest |arg| (angular test) or the smallest real
    part (real-part test) over both the function and its reversion; a
    positive ``margin`` means the condition held with that much room.
    """

    passed: bool
    test: str               # "arg" or "re"
    threshold: float
    worst_value: float
    margin: float
    worst_point: complex
    worst_side: str         # "f" or "g"
    tol: float


def _worst_over_grid(f: NormalizedFunction, grid: MembershipGrid, lam, mu, test):
    """Worst operator value over both f and its reversion on the grid.

    test "arg" tracks the largest |principal arg|, test "re" the smallest
    real part.  Returns (value, point, side).
    """
    pts = grid.points()
    worst = None
    for side, fn in (("f", f), ("g", revert(f))):
        values = apply_operator(fn, lam, mu).evaluate(pts)
        if test == "arg":
            v = np.abs(np.angle(values))
            i = int(np.argmax(v))
            worse = worst is None or v[i] > worst[0]
        else:
            v = values.real
            i = int(np.argmin(v))
            worse = worst is None or v[i] < worst[0]
        if worse:
            worst = (float(v[i]), complex(pts[i]), side)
    return worst


def membership_alpha(f: NormalizedFunction, params: AlphaParams,
                     grid: MembershipGrid | None = None) -> MembershipReport:
    """Grid test of |arg L| < alpha*pi/2 for f and its reversion.

    Works on truncations, so a PASS is necessary, not sufficient, for class
    membership; a FAIL is conclusive at the truncation level.
    """
    grid = grid or MembershipGrid()
    threshold = params.alpha * math.pi / 2.0
    worst, point, side = _worst_over_grid(f, grid, params.lam, params.mu, "arg")
    margin = threshold - worst
    return MembershipReport(margin > -grid.tol, "arg", threshold, worst,
                            margin, point, side, grid.tol)


def membership_beta(f: NormalizedFunction, params: BetaParams,
                    grid: MembershipGrid | None = None) -> MembershipReport:
    """Grid test of Re L > beta for f and its reversion (necessary condition)."""
    grid = grid or MembershipGrid()
    worst, point, side = _worst_over_grid(f, grid, params.lam, params.mu, "re")
    margin = worst - params.beta
    return MembershipReport(margin > -grid.tol, "re", params.beta, worst,
                            margin, point, side, grid.tol)


def _check_first_coeff_consistency(p1, q1):
    # The coefficient systems force q1 = -p1; everything downstream uses only
    # the squares, so the sign-mirrored tuple is accepted as well.
    if abs(p1 * p1 - q1 * q1) > CONSISTENCY_TOL:
        raise ValueError(f"inconsistent tuple: p1^2 != q1^2 ({p1!r}, {q1!r})")


def lift_alpha(t: CoefficientTuple, params: AlphaParams):
    """(a2^2, a3) functionals of a coefficient tuple for the angular class.

    a2^2 = alpha^2 (p2+q2) / ((lam+mu)^2 + alpha (mu + 2 lam - lam^2)) and
    a3 = alpha^2 (p1^2+q1^2) / (2 (lam+mu)^2) + alpha (p2-q2) / (2 (2 lam+mu)).
    The denominator is positive throughout the parameter ranges.
    """
    _check_first_coeff_consistency(t.p1, t.q1)
    a, lam, mu = params.alpha, params.lam, params.mu
    denom = (lam + mu) ** 2 + a * (mu + 2.0 * lam - lam * lam)
    a2_sq = a * a * (t.p2 + t.q2) / denom
    a3 = (a * a * (t.p1 * t.p1 + t.q1 * t.q1) / (2.0 * (lam + mu) ** 2)
          + a * (t.p2 - t.q2) / (2.0 * (2.0 * lam + mu)))
    return a2_sq, a3


@dataclass(frozen=True)
class BetaLift:
    """Functionals of a tuple for the real-part class.

    The two a2^2 candidates come from the first-coefficient equations and
    from the sum of the second-coefficient equations; the two a3 routes come
    from substituting a2^2 back versus eliminating it.  For tuples produced
    by :func:`induce_q_beta` all four agree pairwise.
    """

    a2sq_from_p1q1: complex
    a2sq_from_p2q2: complex
    a3_primary: complex
    a3_alternate: complex


def lift_beta(t: CoefficientTuple, params: BetaParams) -> BetaLift:
    _check_first_coeff_consistency(t.p1, t.q1)
    b, lam, mu = params.beta, params.lam, params.mu
    one_b = 1.0 - b
    a2sq_1 = one_b * one_b * (t.p1 * t.p1 + t.q1 * t.q1) / (2.0 * (lam + mu) ** 2)
    a2sq_2 = one_b * (t.p2 + t.q2) / ((mu + 1.0) * (2.0 * lam + mu))
    a3_primary = a2sq_1 + one_b * (t.p2 - t.q2) / (2.0 * (2.0 * lam + mu))
    a3_alternate = one_b / (2.0 * (2.0 * lam + mu)) * (
        (mu + 3.0) / (mu + 1.0) * t.p2 + (1.0 - mu) / (mu + 1.0) * t.q2)
    return BetaLift(a2sq_1, a2sq_2, a3_primary, a3_alternate)


def induce_q_alpha(p1, p2, params: AlphaParams):
    """Forward-solve (a2, a3) from (p1, p2), then back-solve (q1, q2).

    Scalar or broadcasting array inputs.  Feeding the resulting tuple into
    :func:`lift_alpha` reproduces (a2^2, a3) exactly.
    """
    a, lam, mu = params.alpha, params.lam, params.mu
    a2 = a * p1 / (lam + mu)
    half_quad = (mu - 1.0) * (lam + mu / 2.0) * a2 * a2
    a3 = (a * p2 + a * (a - 1.0) / 2.0 * p1 * p1 - half_quad) / (2.0 * lam + mu)
    q1 = -p1
    q2 = (-(2.0 * lam + mu) * a3 + (3.0 + mu) * (lam + mu / 2.0) * a2 * a2
          - a * (a - 1.0) / 2.0 * q1 * q1) / a
    return a2, a3, q1, q2


def induce_q_beta(p1, p2, params: BetaParams):
    """Real-part-class analogue of :func:`induce_q_alpha`."""
    b, lam, mu = params.beta, params.lam, params.mu
    one_b = 1.0 - b
    a2 = one_b * p1 / (lam + mu)
    a3 = (one_b * p2 - (mu - 1.0) * (lam + mu / 2.0) * a2 * a2) / (2.0 * lam + mu)
    q1 = -p1
    q2 = (-(2.0 * lam + mu) * a3 + (3.0 + mu) * (lam + mu / 2.0) * a2 * a2) / one_b
    return a2, a3, q1, q2
