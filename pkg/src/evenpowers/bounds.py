"""The diagonal (geometric) and Hölder (analytic) lower bounds for
S_{m,k}(a), their numerical verification and the ratio R(a) between them.

    b_geo = (1/k) U_{2m}((a/k)^{1/(2m)})
    b_ana = a^{k-1} U_{2m}(a^{1/(2m)})^k

U_{2m} is taken from the closed form for m in {1, 2} and from direct
summation at tolerance 1e-12 otherwise, in both bounds.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import DomainError, EvalOptions, PowerParams
from .series import SeriesBracket, _q_integral, integral_s, s_bracket
from .special import u_value

U_TOL = 1e-12


def b_geo(params: PowerParams) -> float:
    """Lower bound from restricting the lattice sum to the diagonal."""
    m, k, a = params.m, params.k, params.a
    return u_value(m, (a / k) ** (1.0 / (2 * m)), U_TOL) / k


def b_ana(params: PowerParams) -> float:
    """Lower bound from Hölder's inequality.

    The direct product is used when it is a normal number, so k = 1 gives
    exactly U; otherwise it is evaluated in log space.
    """
    m, k, a = params.m, params.k, params.a
    u = u_value(m, a ** (1.0 / (2 * m)), U_TOL)
    try:
        direct = a ** (k - 1) * u ** k
    except OverflowError:
        direct = math.inf
    if math.isfinite(direct) and direct >= sys.float_info.min:
        return direct
    return math.exp((k - 1) * math.log(a) + k * math.log(u))


def ratio(params: PowerParams) -> float:
    """R(a) = b_ana / b_geo."""
    return b_ana(params) / b_geo(params)


@dataclass(frozen=True)
class HolderReport:
    lhs: float
    rhs: float
    slack: float
    left_identity_error: float
    lhs_error: float
    rhs_error: float
    degenerate: bool


def holder_check(params: PowerParams, opts: EvalOptions = EvalOptions()) -> HolderReport:
    """Check the Hölder step numerically.

    lhs = int_0^1 Theta_m(q) q^{a-1} dq and rhs = S^{1/k} a^{-(k-1)/k} with
    S from :func:`integral_s`; ``slack`` = rhs - lhs should be >= 0.
    ``left_identity_error`` compares lhs with U_{2m}(a^{1/(2m)}).  With
    k = 1 the inequality is an identity and ``degenerate`` is set.
    """
    params.require_convergent()
    m, k, a = params.m, params.k, params.a
    left = _q_integral(m, 1, a, opts)
    full = integral_s(params, opts)
    rhs = full.value ** (1.0 / k) * a ** (-(k - 1) / k)
    u = u_value(m, a ** (1.0 / (2 * m)), U_TOL)
    return HolderReport(
        lhs=left.value,
        rhs=rhs,
        slack=rhs - left.value,
        left_identity_error=abs(left.value - u),
        lhs_error=left.error_bound,
        rhs_error=full.error_bound * rhs / (k * full.value),
        degenerate=k == 1,
    )


@dataclass(frozen=True)
class BoundReport:
    """Both bounds at one parameter point, checked against a certified bracket.

    ``*_verified``: bound <= bracket.upper + tol (necessary condition).
    ``*_strict``: bound <= bracket.lower, which proves the inequality at
    this point.  For k = 1 both bounds equal S, so strict means the
    bracket contains the bound.
    """

    params: PowerParams
    b_geo: float
    b_ana: float
    ratio: float
    s_bracket: SeriesBracket
    geo_verified: bool
    ana_verified: bool
    geo_strict: bool
    ana_strict: bool

    @property
    def geo_slack(self) -> float:
        return self.s_bracket.lower - self.b_geo

    @property
    def ana_slack(self) -> float:
        return self.s_bracket.lower - self.b_ana

    @property
    def all_strict(self) -> bool:
        return self.geo_strict and self.ana_strict


def _equality_contained(bracket: SeriesBracket, value: float) -> bool:
    return bracket.contains(value, slack=1e-12 * abs(value))


def verify_bounds(params: PowerParams, opts: EvalOptions = EvalOptions(abs_tol=1e-3),
                  refine: float = 0.1) -> BoundReport:
    """Compute both bounds and confirm them against :func:`s_bracket`.

    After the bracket at ``opts`` the bracket is refined, within
    ``opts.max_terms``, until its width is at most ``refine`` times the
    smaller of the two observed slacks.
    """
    params.require_convergent()
    bg, ba = b_geo(params), b_ana(params)
    br = s_bracket(params, opts)
    if params.k > 1:
        slack = br.lower - max(bg, ba)
        if slack > 0 and br.width > refine * slack:
            br = s_bracket(params, opts.replace(abs_tol=refine * slack))
    tol = opts.abs_tol
    if params.k == 1:
        geo_strict = _equality_contained(br, bg)
        ana_strict = _equality_contained(br, ba)
    else:
        geo_strict = bg <= br.lower
        ana_strict = ba <= br.lower
    return BoundReport(
        params=params, b_geo=bg, b_ana=ba, ratio=ba / bg, s_bracket=br,
        geo_verified=bg <= br.upper + tol, ana_verified=ba <= br.upper + tol,
        geo_strict=geo_strict, ana_strict=ana_strict,
    )


def ratio_curve(params_base: PowerParams, a_grid: Sequence[float]) -> list[tuple[float, float]]:
    """(a, R(a)) for each a of a strictly increasing grid."""
    grid = [float(a) for a in a_grid]
    if not grid:
        raise DomainError("a_grid must be nonempty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("a_grid must be strictly increasing")
    return [(a, ratio(params_base.with_a(a))) for a in grid]


def asymptotic_slope(params_base: PowerParams, a_min: float, a_max: float,
                     points: int = 25) -> float:
    """Least-squares slope of log R against log a on a log-spaced grid.

    For large a the expected slope is (k-1)/(2m).
    """
    if not 0 < a_min or a_max < 100 * a_min:
        raise DomainError("need 0 < a_min and a_max >= 100 a_min")
    if points < 10:
        raise DomainError("degenerate fit: need at least 10 points")
    a = np.geomspace(a_min, a_max, points)
    R = np.array([r for _, r in ratio_curve(params_base, a)])
    slope, _ = np.polyfit(np.log(a), np.log(R), 1)
    return float(slope)


def crossover(params_base: PowerParams, a_lo: float, a_hi: float,
              tol: float = 1e-6) -> Optional[float]:
    """Locate a sign change of log R(a) in [a_lo, a_hi] by bisection.

    Bisection runs in log a down to width ``tol``.  Returns None when the
    endpoint signs agree (for k = 1, R is identically 1 and None is
    returned).
    """
    if not 0 < a_lo < a_hi:
        raise DomainError("need 0 < a_lo < a_hi")
    if not tol > 0:
        raise DomainError("tol must be positive")
    if params_base.k == 1:
        return None

    def g(log_a):
        return math.log(ratio(params_base.with_a(math.exp(log_a))))

    lo, hi = math.log(a_lo), math.log(a_hi)
    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0.0:
        return a_lo
    if g_hi == 0.0:
        return a_hi
    if (g_lo > 0) == (g_hi > 0):
        return None
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if g_mid == 0.0:
            return math.exp(mid)
        if (g_mid > 0) == (g_lo > 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    return math.exp(0.5 * (lo + hi))
