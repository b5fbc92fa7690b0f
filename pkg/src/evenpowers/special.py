"""Scalar special functions: coth, the kernel psi, generalized theta and
the generalized cotangent series U_{2m}.

All routines work in binary64.  Truncated sums return a
:class:`~evenpowers.core.CertifiedValue` whose ``error_bound`` is a
rigorous majorant of the neglected tail.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy.special import zeta

from .core import (
    CertifiedValue,
    DomainError,
    EvalOptions,
    TruncationError,
    UnsupportedOrderError,
)

DEFAULT_OPTIONS = EvalOptions()

_CHUNK = 1 << 20


def coth(x: float) -> float:
    """Hyperbolic cotangent for x > 0.

    Evaluated as (1 + e) / (1 - e) with e = exp(-2x) and the denominator
    taken from ``expm1``.  No intermediate exceeds 2, so there is no
    overflow cutoff, and the small-x cancellation of 1 - e is avoided.
    """
    if not x > 0:
        raise DomainError(f"coth requires x > 0, got {x!r}")
    e = math.exp(-2.0 * x)
    return (1.0 + e) / -math.expm1(-2.0 * x)


def psi_kernel(x: float) -> float:
    """Psi(x) = (sin x + sinh x) / (cosh x - cos x) for x > 0.

    Numerator and denominator are multiplied by 2 e^{-x}; with e = e^{-x}
    this gives

        (2 e sin x + (1 - e)(1 + e)) / ((1 - e)^2 + 4 e sin^2(x/2)),

    where every piece is bounded (no overflow for large x) and the
    denominator is a sum of nonnegative terms (no cancellation near the
    pole at 0, where Psi(x) ~ 2/x).
    """
    if not x > 0:
        raise DomainError(f"psi_kernel requires x > 0, got {x!r}")
    e = math.exp(-x)
    one_minus_e = -math.expm1(-x)
    s = math.sin(0.5 * x)
    num = 2.0 * e * math.sin(x) + one_minus_e * (1.0 + e)
    den = one_minus_e * one_minus_e + 4.0 * e * s * s
    return num / den


def _theta_tail(m: int, x: float, one_minus_q: float, T: int) -> float:
    # 2 q^{(T+1)^{2m}} / (1 - q): geometric majorant, exponent gaps >= 1
    return 2.0 * math.exp(-x * float(T + 1) ** (2 * m)) / one_minus_q


def _theta_partial(m: int, x: float, T: int) -> float:
    total = 0.0
    for start in range(1, T + 1, _CHUNK):
        t = np.arange(start, min(T, start + _CHUNK - 1) + 1, dtype=float)
        total += float(np.sum(np.exp(-x * t ** (2 * m))))
    return 1.0 + 2.0 * total


def theta(m: int, q: float, opts: EvalOptions = DEFAULT_OPTIONS) -> CertifiedValue:
    """Generalized theta function Theta_m(q) = sum over t in Z of q^{t^{2m}}.

    The truncation point T is the smallest one whose tail majorant
    2 q^{(T+1)^{2m}} / (1 - q) is at most ``opts.abs_tol``.

    Raises
    ------
    DomainError
        If q is outside [0, 1) or m < 1.
    TruncationError
        If T would exceed ``opts.max_terms``; ``partial`` holds the sum at
        ``max_terms`` with its (too large) tail bound.
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m!r}")
    if not 0.0 <= q < 1.0:
        raise DomainError(f"theta requires 0 <= q < 1, got {q!r}")
    if q == 0.0:
        return CertifiedValue(1.0, 0.0, 0)
    x = -math.log(q)
    one_minus_q = 1.0 - q
    need = math.log(2.0 / (opts.abs_tol * one_minus_q)) / x
    T = max(0, math.ceil(need ** (1.0 / (2 * m))) - 1) if need > 0 else 0
    T = min(T, opts.max_terms + 1)
    while T > 0 and _theta_tail(m, x, one_minus_q, T - 1) <= opts.abs_tol:
        T -= 1
    while T <= opts.max_terms and _theta_tail(m, x, one_minus_q, T) > opts.abs_tol:
        T += 1
    if T > opts.max_terms:
        T = opts.max_terms
        partial = CertifiedValue(_theta_partial(m, x, T),
                                 _theta_tail(m, x, one_minus_q, T), T,
                                 converged=False)
        raise TruncationError(
            f"theta(m={m}, q={q}) needs more than {T} terms", partial)
    return CertifiedValue(_theta_partial(m, x, T),
                          _theta_tail(m, x, one_minus_q, T), T)


def theta_asymptotic_switch(m: int) -> float:
    """Below this value of x = -log q, :func:`log_theta` uses the
    leading Poisson term instead of the direct sum."""
    return float(64 * m) ** (-2 * m)


def log_theta(m: int, log_x) -> np.ndarray:
    """log Theta_m(e^{-x}) for an array of log x, at full binary64 accuracy.

    For x at or above :func:`theta_asymptotic_switch` the direct sum is
    used, truncated where the tail is below 1e-17 relative.  Below it the
    Poisson dual terms are O(exp(-c (64 m)^{2m/(2m-1)})) and the value is
    2 Gamma(1 + 1/(2m)) x^{-1/(2m)}.  Working from log x lets callers reach
    x far below the smallest normal double.
    """
    log_x = np.asarray(log_x, dtype=float)
    out = np.empty_like(log_x)
    p = 2 * m
    small = log_x < math.log(theta_asymptotic_switch(m))
    out[small] = math.log(2.0 * math.gamma(1.0 + 1.0 / p)) - log_x[small] / p
    big = ~small
    if np.any(big):
        x = np.exp(log_x[big])
        one_minus_q = -np.expm1(-x)
        need = np.log(2e17 / one_minus_q) / x
        T = int(math.ceil(float(np.max(need)) ** (1.0 / p)))
        T = max(T, 1)
        t = np.arange(1, T + 1, dtype=float) ** p
        s = np.exp(-np.multiply.outer(x, t)).sum(axis=1)
        out[big] = np.log1p(2.0 * s)
    return out


def _u_tail(m: int, T: int) -> float:
    # 2 * integral_T^inf t^{-2m} dt; drops z so it holds for every z
    return 2.0 / ((2 * m - 1) * float(T) ** (2 * m - 1))


def _with_pole(z: float, p: int, rest: float) -> float:
    # z^{-p} + rest rounded once; near the pole z^{-p} dominates and two
    # separate roundings would cost an ulp of a very large number
    try:
        return float(Fraction(1) / Fraction(z) ** p + Fraction(rest))
    except OverflowError:
        return math.inf


def _u_partial(m: int, z: float, T: int) -> float:
    zp = z ** (2 * m)
    chunks = []
    for start in range(1, T + 1, _CHUNK):
        t = np.arange(start, min(T, start + _CHUNK - 1) + 1, dtype=float)
        chunks.append(float(np.sum(1.0 / (t ** (2 * m) + zp))))
    return _with_pole(z, 2 * m, 2.0 * math.fsum(chunks))


def u_direct(m: int, z: float, opts: EvalOptions = DEFAULT_OPTIONS) -> CertifiedValue:
    """Generalized cotangent series U_{2m}(z) = sum_t 1/(t^{2m} + z^{2m}).

    Direct summation over |t| <= T with tail bound 2/((2m-1) T^{2m-1}).

    Raises
    ------
    DomainError
        If z <= 0 or m < 1.
    TruncationError
        If the tolerance needs more than ``opts.max_terms`` terms.
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m!r}")
    if not z > 0:
        raise DomainError(f"u_direct requires z > 0, got {z!r}")
    p1 = 2 * m - 1
    T = math.ceil((2.0 / (p1 * opts.abs_tol)) ** (1.0 / p1))
    T = max(1, min(T, opts.max_terms + 1))
    while T > 1 and _u_tail(m, T - 1) <= opts.abs_tol:
        T -= 1
    while T <= opts.max_terms and _u_tail(m, T) > opts.abs_tol:
        T += 1
    if T > opts.max_terms:
        T = opts.max_terms
        partial = CertifiedValue(_u_partial(m, z, T), _u_tail(m, T), T,
                                 converged=False)
        raise TruncationError(
            f"u_direct(m={m}) needs more than {T} terms for tol {opts.abs_tol}",
            partial)
    return CertifiedValue(_u_partial(m, z, T), _u_tail(m, T), T)


def u_closed(m: int, z: float) -> float:
    """Closed forms of U_{2m}(z) for m = 1 and m = 2.

    U_2(z) = (pi/z) coth(pi z);
    U_4(z) = pi / (sqrt(2) z^3) * Psi(sqrt(2) pi z).

    For z < 0.1 the same functions are evaluated from their Laurent
    expansion about the pole, whose coefficients are zeta values; this
    keeps the result within an ulp where U is of order z^{-2m}.
    """
    if m not in (1, 2):
        raise UnsupportedOrderError(
            f"closed form only for m in {{1, 2}}, got m={m}; use u_direct")
    if not z > 0:
        raise DomainError(f"u_closed requires z > 0, got {z!r}")
    if z < _LAURENT_RADIUS:
        return _u_laurent(m, z)
    if m == 1:
        return math.pi / z * coth(math.pi * z)
    r2 = math.sqrt(2.0)
    return math.pi / (r2 * z ** 3) * psi_kernel(r2 * math.pi * z)


_LAURENT_RADIUS = 0.1


def _u_laurent(m: int, z: float) -> float:
    # expansion of the closed forms about the pole, |z| < 1:
    # U_{2m}(z) = z^{-2m} + 2 sum_j (-1)^j zeta(2m(j+1)) z^{2mj}
    p = 2 * m
    w = z ** p
    terms = []
    j, zj = 0, 1.0
    while True:
        term = float(zeta(p * (j + 1))) * zj
        terms.append(term if j % 2 == 0 else -term)
        if term < 1e-18:
            break
        j += 1
        zj *= w
    return _with_pole(z, p, 2.0 * math.fsum(terms))


def u_value(m: int, z: float, abs_tol: float = 1e-12) -> float:
    """U_{2m}(z) by closed form when available, otherwise direct summation."""
    if m in (1, 2):
        return u_closed(m, z)
    return u_direct(m, z, EvalOptions(abs_tol=abs_tol)).value
