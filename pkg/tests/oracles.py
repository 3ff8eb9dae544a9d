"""Independent reference computations used only by the tests."""

import math

import mpmath
import numpy as np


def bisect_root(f, lo, hi, tol=1e-15):
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


def besselj_mp(k, x):
    return float(mpmath.besselj(k, x))


def midpoint_2d(f, n):
    """Composite midpoint rule on [0, pi]^2 with n x n cells, chunked over theta."""
    h = math.pi / n
    phi = (np.arange(n) + 0.5) * h
    total = 0.0 + 0.0j
    for start in range(0, n, 256):
        theta = (np.arange(start, min(n, start + 256)) + 0.5) * h
        total += np.sum(f(theta[:, None], phi[None, :]))
    return total * h * h


def distance(p, q):
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(p, q)))
