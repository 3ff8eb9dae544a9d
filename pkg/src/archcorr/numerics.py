"""Special functions and deterministic quadrature.

Everything here is pure: no module state, no caching, safe to call from
several threads at once.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, NumericError

MAX_BESSEL_ORDER = 200
MAX_BESSEL_ARG = 1e6
SERIES_SWITCH = 12.0
SINC_SERIES_CUTOFF = 1e-6
MAX_QUADRATURE_ORDER = 4096


# ---------------------------------------------------------------------------
# Bessel functions of the first kind
# ---------------------------------------------------------------------------

def _bessel_series(k: int, x: float) -> float:
    """Ascending power series, accurate for |x| <= SERIES_SWITCH."""
    if x == 0.0:
        return 1.0 if k == 0 else 0.0
    half = 0.5 * x
    # first term (x/2)^k / k!, built in log space so k = 200 does not overflow
    log_first = k * math.log(abs(half)) - math.lgamma(k + 1)
    term = math.exp(log_first)
    if half < 0 and k % 2:
        term = -term
    total = term
    q = -half * half
    m = 0
    while True:
        m += 1
        term *= q / (m * (m + k))
        total += term
        if abs(term) < 1e-17 * abs(total) or (total == 0.0 and term == 0.0):
            break
        if m > 500:
            break
    return total


def _miller_start(kmax: int, x: float) -> int:
    top = max(kmax, int(x))
    start = top + 30 + int(math.sqrt(60.0 * (top + 1)))
    return start + (start % 2)


def _series_all(kmax: int, ax: np.ndarray) -> np.ndarray:
    """Vectorised ascending series for 0 < ax < SERIES_SWITCH."""
    half = 0.5 * ax
    q = -half * half
    logh = np.log(half)
    out = np.empty((kmax + 1, ax.size))
    for k in range(kmax + 1):
        term = np.exp(k * logh - math.lgamma(k + 1))
        total = term.copy()
        for m in range(1, 80):
            term = term * (q / (m * (m + k)))
            total += term
            if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
                break
        out[k] = total
    return out


def _miller_all(kmax: int, ax: np.ndarray) -> np.ndarray:
    """Backward recurrence for ax >= SERIES_SWITCH."""
    start = _miller_start(kmax, float(ax.max()))
    inv = 2.0 / ax
    nxt = np.zeros_like(ax)          # J_{k+1}
    cur = np.full_like(ax, 1e-30)     # J_k, unnormalised
    norm = np.zeros_like(ax)
    vals = np.zeros((kmax + 1, ax.size))
    for k in range(start, 0, -1):
        nxt, cur = cur, k * inv * cur - nxt
        if k - 1 <= kmax:
            vals[k - 1] = cur
        if k - 1 > 0 and (k - 1) % 2 == 0:
            norm += cur
        big = np.abs(cur) > 1e250
        if np.any(big):
            scale = np.where(big, 1e-250, 1.0)
            cur *= scale
            nxt *= scale
            norm *= scale
            vals *= scale
    return vals / (2.0 * norm + cur)


def bessel_j_all(kmax: int, x: np.ndarray | float) -> np.ndarray:
    """J_0..J_kmax at every point of ``x``.

    Returns an array of shape ``(kmax + 1,) + np.shape(x)``. Arguments below
    the series switch use the power series; the rest use Miller's backward
    recurrence normalised by J_0 + 2 * sum_k J_2k = 1.
    """
    if not 0 <= kmax <= MAX_BESSEL_ORDER:
        raise DomainError(f"Bessel order {kmax} outside [0, {MAX_BESSEL_ORDER}]")
    xa = np.asarray(x, dtype=float)
    flat = xa.ravel()
    if flat.size and not np.all(np.isfinite(flat)):
        raise DomainError("non-finite Bessel argument")
    if flat.size and np.max(np.abs(flat)) > MAX_BESSEL_ARG:
        raise DomainError(f"Bessel argument exceeds {MAX_BESSEL_ARG:g}")

    ax = np.abs(flat)
    out = np.zeros((kmax + 1, flat.size))
    out[0, ax == 0.0] = 1.0
    small = (ax > 0.0) & (ax < SERIES_SWITCH)
    large = ax >= SERIES_SWITCH
    if np.any(small):
        out[:, small] = _series_all(kmax, ax[small])
    if np.any(large):
        out[:, large] = _miller_all(kmax, ax[large])
    neg = flat < 0
    if np.any(neg):
        odd = np.arange(kmax + 1) % 2 == 1
        out[np.ix_(odd, neg)] *= -1.0
    return out.reshape((kmax + 1,) + xa.shape)


def bessel_j(k: int, x: float) -> float:
    """Bessel function of the first kind J_k(x) for integer k >= 0.

    Uses the ascending series for |x| < 12 and Miller's backward recurrence
    beyond that. Absolute error is below 1e-12 for |x| <= 100.

    Raises:
        DomainError: if ``k`` is outside [0, 200] or ``|x| > 1e6``.
    """
    if not isinstance(k, (int, np.integer)) or not 0 <= k <= MAX_BESSEL_ORDER:
        raise DomainError(f"Bessel order {k!r} outside [0, {MAX_BESSEL_ORDER}]")
    x = float(x)
    if not math.isfinite(x) or abs(x) > MAX_BESSEL_ARG:
        raise DomainError(f"Bessel argument {x!r} out of range")
    if abs(x) < SERIES_SWITCH:
        return _bessel_series(int(k), x)
    return float(bessel_j_all(int(k), x)[int(k)])


# ---------------------------------------------------------------------------
# Normalised sinc
# ---------------------------------------------------------------------------

def sinc_normalized(x):
    """sin(pi x) / (pi x), with the removable singularity filled by its series.

    Accepts scalars or arrays; returns the same kind.
    """
    xa = np.asarray(x, dtype=float)
    px = np.pi * xa
    small = np.abs(xa) < SINC_SERIES_CUTOFF
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = np.sin(px) / px
    p2 = px * px
    series = 1.0 - p2 / 6.0 + p2 * p2 / 120.0
    out = np.where(small, series, direct)
    if np.ndim(out) == 0:
        return float(out)
    return out


# ---------------------------------------------------------------------------
# Gauss-Legendre quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on [-1, 1]."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def scaled(self, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights mapped affinely onto [a, b]."""
        half = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        return mid + half * self.nodes, half * self.weights


def _legendre_with_derivative(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p0 = np.ones_like(x)
    p1 = x.copy()
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


def gauss_legendre(order: int) -> QuadratureRule:
    """Gauss-Legendre rule with ``order`` nodes, found by Newton iteration.

    Initial guesses are Tricomi's asymptotic roots; Newton converges in a
    handful of steps to full double precision. The lower half of the nodes
    is mirrored from the upper half so the rule is exactly symmetric.
    Rules are cached; the returned arrays are read-only.
    """
    if not isinstance(order, (int, np.integer)) or not 1 <= order <= MAX_QUADRATURE_ORDER:
        raise DomainError(f"quadrature order {order!r} outside [1, {MAX_QUADRATURE_ORDER}]")
    return _gauss_legendre(int(order))


@lru_cache(maxsize=32)
def _gauss_legendre(n: int) -> QuadratureRule:
    if n == 1:
        return _frozen_rule(1, np.array([0.0]), np.array([2.0]))
    i = np.arange(1, n // 2 + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5)) * (1.0 - (n - 1) / (8.0 * n**3))
    for _ in range(100):
        p, dp = _legendre_with_derivative(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    p, dp = _legendre_with_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    # x is descending (largest root first)
    upper_x, upper_w = x[::-1], w[::-1]
    if n % 2:
        _, dp0 = _legendre_with_derivative(n, np.array([0.0]))
        mid_w = 2.0 / (dp0 * dp0)
        nodes = np.concatenate([-x, [0.0], upper_x])
        weights = np.concatenate([w, mid_w, upper_w])
    else:
        nodes = np.concatenate([-x, upper_x])
        weights = np.concatenate([w, upper_w])
    return _frozen_rule(n, nodes, weights)


def _frozen_rule(n: int, nodes: np.ndarray, weights: np.ndarray) -> QuadratureRule:
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(n, nodes, weights)


def integrate_2d(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    theta_range: tuple[float, float],
    phi_range: tuple[float, float],
    rule: QuadratureRule,
) -> complex:
    """Tensor-product Gauss-Legendre estimate of a double integral.

    ``f`` is called once with broadcastable ``theta`` (column) and ``phi``
    (row) node arrays and must return a complex or real array of shape
    ``(order, order)``. The sum runs over phi inside, theta outside, with
    numpy's pairwise summation, so the result is bit-stable for a given
    order regardless of threading.

    Raises:
        NumericError: if any sample of ``f`` is not finite.
    """
    for lo, hi in (theta_range, phi_range):
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError("integration ranges must be finite")
    t, wt = rule.scaled(*theta_range)
    p, wp = rule.scaled(*phi_range)
    values = np.asarray(f(t[:, None], p[None, :]))
    values = np.broadcast_to(values, (t.size, p.size))
    bad = ~np.isfinite(values)
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        raise NumericError(
            f"non-finite integrand at theta={t[i]!r}, phi={p[j]!r}: {values[i, j]!r}"
        )
    inner = np.sum(values * wp[None, :], axis=1)
    return complex(np.sum(inner * wt))


def integrate_1d(
    f: Callable[[np.ndarray], np.ndarray],
    interval: tuple[float, float],
    rule: QuadratureRule,
) -> np.ndarray:
    """Gauss-Legendre estimate along the last axis of ``f(nodes)``."""
    x, w = rule.scaled(*interval)
    values = np.asarray(f(x))
    if not np.all(np.isfinite(values)):
        raise NumericError("non-finite integrand in 1-D quadrature")
    return np.sum(values * w, axis=-1)
