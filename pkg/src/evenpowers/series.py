"""The Dirichlet series S_{m,k}(a) = sum_n r_{m,k}(n) / (n + a).

Three routes:

* coefficient partial sums closed by a certified two-sided tail
  (:func:`s_bracket`),
* summation over the lattice box max |x_i| <= M (:func:`s_lattice`),
* quadrature of int_0^1 q^{a-1} Theta_m(q)^k dq (:func:`integral_s`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import CertifiedValue, DivergenceError, DomainError, EvalOptions, PowerParams
from .representation import r_convolution
from .special import log_theta

# relative slop applied to the float volume constant so the lattice
# majorant/minorant stay on the safe side of rounding
_VOLUME_SLOP = 1e-12


@dataclass(frozen=True)
class SeriesBracket:
    """Interval [lower, upper] certified to contain S_{m,k}(a).

    ``terms`` is the truncation index N of the coefficient sum,
    ``partial_sum`` the plain sum over n <= N.  For the coefficient method
    ``lower`` is the partial sum plus a certified lower bound on the tail.
    """

    params: PowerParams
    lower: float
    upper: float
    terms: int
    method_tag: str = "coefficient"
    converged: bool = True
    partial_sum: Optional[float] = None

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= value <= self.upper + slack

    def overlaps(self, other: "SeriesBracket") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper


def s_lower(params: PowerParams, N: int) -> float:
    """Partial sum sum_{n=0}^{N} r_{m,k}(n) / (n + a) from exact counts."""
    if N < 0:
        raise DomainError("N must be >= 0")
    counts = r_convolution(params, N).counts.astype(float)
    return float(np.sum(counts / (np.arange(N + 1) + params.a)))


def ball_volume(m: int, k: int) -> float:
    """Volume of the unit l^{2m} ball in R^k: (2 Gamma(1+1/2m))^k / Gamma(1+k/2m)."""
    p = 2 * m
    return math.exp(k * math.log(2.0 * math.gamma(1.0 + 1.0 / p))
                    - math.lgamma(1.0 + k / p))


def cumulative_majorant(m: int, k: int, n) -> np.ndarray:
    """Upper bound for A(n) = #{x : sum x_i^{2m} <= n}.

    The smaller of the box bound (2R+1)^k and V (R + k^{1/2m}/2)^k with
    R = n^{1/(2m)}: unit cubes centred at the counted points are disjoint
    and lie inside the ball of radius R + k^{1/2m}/2.
    """
    R = np.asarray(n, dtype=float) ** (1.0 / (2 * m))
    delta = 0.5 * k ** (1.0 / (2 * m))
    vol = ball_volume(m, k) * (1 + _VOLUME_SLOP)
    return np.minimum((2.0 * R + 1.0) ** k, vol * (R + delta) ** k)


def cumulative_minorant(m: int, k: int, n) -> np.ndarray:
    """Lower bound V (R - k^{1/2m}/2)^k for A(n); the cubes around the
    counted points cover the ball of radius R - k^{1/2m}/2."""
    R = np.asarray(n, dtype=float) ** (1.0 / (2 * m))
    delta = 0.5 * k ** (1.0 / (2 * m))
    vol = ball_volume(m, k) * (1 - _VOLUME_SLOP)
    return vol * np.maximum(R - delta, 0.0) ** k


def _block_edges(N: int) -> np.ndarray:
    fine = N * np.exp(np.arange(0.0, math.log(1e6), 2.0 ** -12))
    coarse = N * 1e6 * np.exp(np.arange(0.0, math.log(1e60), 2.0 ** -6))
    edges = np.floor(np.concatenate([fine, coarse]))
    edges[0] = N
    return np.unique(edges)


def _far_tail(m: int, k: int, a: float, T: float) -> float:
    # sum_{n>T} A(n) g(n) <= int_{T+a}^inf (2 (c u)^{1/2m} + 1)^k / u^2 du,
    # u = t + a - 1 and t <= c u on the range
    p = 2 * m
    u0 = T + a
    c = max(1.0, (T + 1.0) / (T + a))
    total = 0.0
    for j in range(k + 1):
        e = j / p
        total += math.comb(k, j) * (2.0 * c ** (1.0 / p)) ** j * u0 ** (e - 1.0) / (1.0 - e)
    return total


def tail_bounds(params: PowerParams, N: int, A_N: int) -> tuple[float, float]:
    """Certified (lower, upper) bounds on sum_{n>N} r(n) / (n + a).

    Abel summation gives the tail as sum_{n>N} (A(n) - A(N)) g(n) with
    g(n) = 1/((n+a)(n+1+a)).  On blocks (t_j, t_{j+1}] of a geometric mesh
    A(n) - A(N) is bracketed by the minorant at t_j + 1 and the majorant at
    t_{j+1}, and g sums to (t_{j+1} - t_j)/((t_j+1+a)(t_{j+1}+1+a)).  The
    region beyond the mesh is closed by an integral comparison (upper) and
    dropped (lower).
    """
    params.require_convergent()
    m, k, a = params.m, params.k, params.a
    t = _block_edges(max(int(N), 1))
    lo_t, hi_t = t[:-1], t[1:]
    mass = (hi_t - lo_t) / ((lo_t + 1.0 + a) * (hi_t + 1.0 + a))
    A = float(A_N)
    upper_h = np.maximum(cumulative_majorant(m, k, hi_t) - A, 0.0)
    lower_h = np.maximum(cumulative_minorant(m, k, lo_t + 1.0) - A, 0.0)
    upper = float(np.sum(upper_h * mass)) + _far_tail(m, k, a, float(t[-1]))
    lower = float(np.sum(lower_h * mass))
    return lower, upper


def s_bracket(params: PowerParams, opts: EvalOptions = EvalOptions(abs_tol=1e-6),
              start: int = 256) -> SeriesBracket:
    """Certified bracket for S_{m,k}(a).

    N doubles from ``start`` until the width is at most ``opts.abs_tol`` or
    ``opts.max_terms`` is reached.  Brackets from successive N are
    intersected, so a smaller tolerance always returns a nested interval.

    Raises
    ------
    DivergenceError
        If k >= 2m.
    """
    params.require_convergent()
    a = params.a
    N = min(start, opts.max_terms)
    lo, hi = -math.inf, math.inf
    while True:
        counts = r_convolution(params, N).counts
        partial = float(np.sum(counts.astype(float) / (np.arange(N + 1) + a)))
        A_N = int(np.sum(counts))
        t_lo, t_hi = tail_bounds(params, N, A_N)
        lo = max(lo, partial + t_lo)
        hi = min(hi, partial + t_hi)
        if hi - lo <= opts.abs_tol or N >= opts.max_terms:
            return SeriesBracket(params, lo, hi, N, "coefficient",
                                 converged=hi - lo <= opts.abs_tol,
                                 partial_sum=partial)
        N = min(2 * N, opts.max_terms)


def s_lattice(params: PowerParams, M: int) -> float:
    """Sum of 1/(sum x_i^{2m} + a) over the box max |x_i| <= M.

    Enumerates the nonnegative orthant with weight 2^(#nonzero coords);
    the first k-1 coordinates are merged by value after each step so the
    work grows with the number of distinct partial sums.
    """
    if M < 0:
        raise DomainError("M must be >= 0")
    m, k, a = params.m, params.k, params.a
    t = np.arange(M + 1)
    exact = k * float(M) ** (2 * m) < 2.0 ** 62
    pw = t.astype(np.int64) ** (2 * m) if exact else t.astype(float) ** (2 * m)
    w = np.where(t == 0, 1.0, 2.0)
    vals, wts = pw, w
    for _ in range(k - 2):
        vals = np.add.outer(vals, pw).ravel()
        wts = np.multiply.outer(wts, w).ravel()
        vals, inv = np.unique(vals, return_inverse=True)
        wts = np.bincount(inv.ravel(), weights=wts)
    if k == 1:
        return float(np.sum(wts / (vals + a)))
    vals = vals.astype(float)
    parts = [float(np.sum(wts / (vals + (float(p) + a)))) for p in pw]
    return float(np.sum(np.asarray(parts) * w))


_TS_TMAX = 3.5


def _tanh_sinh(f, L: float, opts: EvalOptions):
    """Integrate f over [0, L], f taking the node distance y from 0.

    Step h halves each level; stops when two levels differ by at most
    ``opts.abs_tol`` (after at least three levels) or when the node
    count would exceed ``opts.quad_points``.
    """

    def contrib(tt):
        s = 0.5 * math.pi * np.sinh(tt)
        y = L / (1.0 + np.exp(-2.0 * s))
        w = 0.25 * math.pi * L * np.cosh(tt) / np.cosh(s) ** 2
        return float(np.sum(w * f(y)))

    h = 1.0
    J = int(_TS_TMAX)
    acc = contrib(np.arange(-J, J + 1) * h)
    est = h * acc
    nodes = 2 * J + 1
    diff = math.inf
    level = 0
    while True:
        h *= 0.5
        J = int(_TS_TMAX / h)
        if 2 * J + 1 > opts.quad_points:
            return est, diff, nodes, False
        j = np.arange(-J, J + 1)
        acc += contrib(j[j % 2 != 0] * h)
        nodes = 2 * J + 1
        new = h * acc
        diff = abs(new - est)
        est = new
        level += 1
        if level >= 3 and diff <= opts.abs_tol:
            return est, diff, nodes, True


def _q_integral(m: int, k: int, a: float, opts: EvalOptions):
    """int_0^1 q^{a-1} Theta_m(q)^k dq for 0 <= k < 2m.

    [0, 1/2]: q = u^{1/a} when a < 1 absorbs the q^{a-1} singularity.
    [1/2, 1): q = 1 - v^p with p = 2m/(2m-k) cancels the
    (1-q)^{-k/(2m)} growth of Theta^k.
    """
    p2m = 2 * m

    def theta_pow(log_q):
        if k == 0:
            return np.zeros_like(log_q)
        with np.errstate(divide="ignore"):
            log_x = np.log(-log_q)
        return k * log_theta(m, log_x)

    def left(y):
        y = np.maximum(y, 1e-300)
        if a < 1.0:
            log_q = np.log(y) / a
            return np.exp(theta_pow(log_q)) / a
        log_q = np.log(y)
        return np.exp((a - 1.0) * log_q + theta_pow(log_q))

    p = p2m / (p2m - k)

    def right(v):
        log_v = np.log(v)
        w = np.exp(p * log_v)
        log_q = np.log1p(-w)
        small = w < 1e-5
        log_x = np.empty_like(w)
        log_x[small] = p * log_v[small] + 0.5 * w[small]
        log_x[~small] = np.log(-log_q[~small])
        lt = 0.0 if k == 0 else k * log_theta(m, log_x)
        return np.exp(math.log(p) + (p - 1.0) * log_v + (a - 1.0) * log_q + lt)

    L1 = 0.5 ** a if a < 1.0 else 0.5
    L2 = 0.5 ** (1.0 / p)
    v1, e1, n1, ok1 = _tanh_sinh(left, L1, opts)
    v2, e2, n2, ok2 = _tanh_sinh(right, L2, opts)
    return CertifiedValue(v1 + v2, e1 + e2, n1 + n2, rigorous=False,
                          converged=ok1 and ok2)


def integral_s(params: PowerParams, opts: EvalOptions = EvalOptions()) -> CertifiedValue:
    """S_{m,k}(a) as int_0^1 q^{a-1} Theta_m(q)^k dq by tanh-sinh quadrature.

    The returned ``error_bound`` is the difference between the last two
    refinement levels, a heuristic estimate (``rigorous`` is False).
    """
    params.require_convergent()
    return _q_integral(params.m, params.k, params.a, opts)
