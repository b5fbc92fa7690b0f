"""Exact representation counts r_{m,k}(n) = #{x in Z^k : sum x_i^{2m} = n}.

Two independent routes: sparse power-series convolution of the theta
coefficients, and depth-first lattice enumeration.  A third route
(:func:`ball_count`) counts the points of the l^{2m} ball directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
import threading
from collections import OrderedDict

import numpy as np

from .core import CountOverflowError, DomainError, PowerParams

_INT64_MAX = np.iinfo(np.int64).max


def iroot(n: int, r: int) -> int:
    """floor(n ** (1/r)) for integers n >= 0, r >= 1, computed exactly.

    Integer Newton iteration from a float seed, followed by an exactness
    fix-up so that perfect powers are never off by one.
    """
    if n < 0 or r < 1:
        raise DomainError("iroot needs n >= 0 and r >= 1")
    if n < 2 or r == 1:
        return n
    if r == 2:
        return math.isqrt(n)
    if n.bit_length() < 1000:
        x = int(n ** (1.0 / r)) + 1
    else:
        x = 1 << (n.bit_length() // r + 1)
    while x ** r <= n:
        x *= 2
    # Newton decreases monotonically from any start above the root
    while True:
        y = ((r - 1) * x + n // x ** (r - 1)) // r
        if y >= x:
            break
        x = y
    while x ** r > n:
        x -= 1
    while (x + 1) ** r <= n:
        x += 1
    return x


@dataclass(frozen=True, eq=False)
class RepCoefficients:
    """r_{m,k}(0..limit) as an exact integer array.

    ``counts`` is int64 when the a-priori bound (2T+1)^k fits, otherwise an
    object array of Python ints.
    """

    params: PowerParams
    limit: int
    counts: np.ndarray

    def __getitem__(self, n):
        return self.counts[n]

    def __len__(self):
        return self.limit + 1

    def cumulative(self) -> np.ndarray:
        return np.cumsum(self.counts)

    def tolist(self) -> list[int]:
        return [int(c) for c in self.counts]


def _count_dtype(m: int, k: int, limit: int, dtype):
    T = iroot(limit, 2 * m)
    bound = (2 * T + 1) ** k
    if dtype is None:
        return np.int64 if bound <= _INT64_MAX else object
    if np.dtype(dtype) == np.dtype(object):
        return object
    if bound > np.iinfo(dtype).max:
        raise CountOverflowError(
            f"counts for m={m}, k={k} up to n={limit} may reach {bound}, "
            f"which exceeds {np.dtype(dtype).name}")
    return dtype


def base_coefficients(m: int, limit: int, dtype=None) -> RepCoefficients:
    """Coefficients of Theta_m(q): 1 at n=0, 2 at each n = t^{2m}, t >= 1."""
    if limit < 0:
        raise DomainError("limit must be >= 0")
    dt = _count_dtype(m, 1, limit, dtype)
    b = np.zeros(limit + 1, dtype=dt)
    b[0] = 1
    for t in range(1, iroot(limit, 2 * m) + 1):
        b[t ** (2 * m)] = 2
    return RepCoefficients(PowerParams(m, 1), limit, b)


_CACHE_SIZE = 3
_cache: OrderedDict = OrderedDict()
_cache_lock = threading.Lock()


def _convolve(m: int, k: int, limit: int, dtype) -> np.ndarray:
    # a truncated product's prefix is the product truncated earlier, so the
    # largest array computed for (m, k) serves every smaller limit
    key = (m, k, None if dtype is None else np.dtype(dtype).str)
    with _cache_lock:
        hit = _cache.get(key)
        if hit is not None and len(hit) > limit:
            _cache.move_to_end(key)
            return hit[: limit + 1]
    dt = _count_dtype(m, k, limit, dtype)
    b = base_coefficients(m, limit, dt).counts
    shifts = [t ** (2 * m) for t in range(1, iroot(limit, 2 * m) + 1)]
    r = b
    for _ in range(k - 1):
        nxt = r.copy()
        for s in shifts:
            nxt[s:] += 2 * r[: limit + 1 - s]
        r = nxt
    r.setflags(write=False)
    with _cache_lock:
        _cache[key] = r
        _cache.move_to_end(key)
        while len(_cache) > _CACHE_SIZE:
            _cache.popitem(last=False)
    return r


def r_convolution(params: PowerParams, limit: int, dtype=None) -> RepCoefficients:
    """r_{m,k}(0..limit) as the coefficients of Theta_m(q)^k.

    Each of the k-1 passes multiplies by the sparse theta series, costing
    O(limit * limit^{1/(2m)}).

    Raises
    ------
    CountOverflowError
        If an explicit ``dtype`` is too narrow for the counts.
    """
    if limit < 0:
        raise DomainError("limit must be >= 0")
    counts = _convolve(params.m, params.k, int(limit), dtype)
    return RepCoefficients(PowerParams(params.m, params.k), int(limit), counts)


def r_bruteforce(params: PowerParams, n: int) -> int:
    """Count x in Z^k with sum x_i^{2m} = n by depth-first enumeration."""
    if n < 0:
        raise DomainError("n must be >= 0")
    p = 2 * params.m

    def last(rem):
        if rem == 0:
            return 1
        t = iroot(rem, p)
        return 2 if t ** p == rem else 0

    def walk(j, rem):
        if j == 1:
            return last(rem)
        total = 0
        for x in range(-iroot(rem, p), iroot(rem, p) + 1):
            total += walk(j - 1, rem - abs(x) ** p)
        return total

    return walk(params.k, n)


def r_orthant(params: PowerParams, n: int) -> int:
    """Same count as :func:`r_bruteforce`, enumerating only x_i >= 0 and
    weighting each point by 2^(number of nonzero coordinates)."""
    p = 2 * params.m

    def walk(j, rem):
        if j == 0:
            return 1 if rem == 0 else 0
        total = 0
        for x in range(0, iroot(rem, p) + 1):
            total += (2 if x else 1) * walk(j - 1, rem - x ** p)
        return total

    return walk(params.k, n)


def ball_count(params: PowerParams, N: int) -> int:
    """#{x in Z^k : sum x_i^{2m} <= N}, by filtering the box [-T, T]^k."""
    T = iroot(N, 2 * params.m)
    powers = np.arange(-T, T + 1, dtype=np.int64) ** (2 * params.m)
    acc = powers
    for _ in range(params.k - 1):
        acc = np.add.outer(acc, powers)
    return int(np.count_nonzero(acc <= N))


def cumulative_growth_exponent(params: PowerParams, N: int) -> float:
    """Estimate the growth exponent k/(2m) of A(n) = sum_{j<=n} r(j).

    A(n) is a step function whose jumps dominate a log-log fit over
    [N/2, N] when few lattice shells fall in that range (k = 1 is the worst
    case), so the fit is done on the smoothed count sum_{j<=n} A(j), whose
    exponent is one larger, and 1 is subtracted.
    """
    if N < 6:
        raise DomainError("need N >= 6 for at least 3 sample points")
    A = r_convolution(params, N).cumulative()
    smoothed = np.cumsum(A.astype(float))
    n = np.arange(N // 2, N + 1)
    if len(n) < 3:
        raise DomainError("degenerate fit: fewer than 3 points")
    slope, _ = np.polyfit(np.log(n), np.log(smoothed[n]), 1)
    return float(slope) - 1.0
