"""Brute-force quadrature of the half-space correlation integral.

Nothing here calls into :mod:`archcorr.correlation_closed` except
:func:`validate`, which exists to compare the two.

Sign convention: the ULA oracle integrates exp(+j * phase_delta_ula(m, n)),
the phase of element n relative to element m. The URA oracle integrates
exp(-j k (Delta_i - Delta_j)). On a shared arc the two integrands coincide,
and in both cases the imaginary part is odd under swapping the pair.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .correlation_closed import CorrelationMatrix, closed_entry
from .errors import DomainError, NumericError
from .geometry import ArchedUlaGeometry, ArchedUraGeometry
from .numerics import bessel_j_all, gauss_legendre, integrate_1d, integrate_2d
from .wavefield import phase_delta_ula, ura_abc, wavenumber

HALF_SPACE = ((0.0, math.pi), (0.0, math.pi))
EXHAUSTIVE_PAIR_LIMIT = 256

CONVENTION = (
    "ULA: integrand exp(+j*phase(j relative to i)); "
    "URA: integrand exp(-j*k*(Delta_i - Delta_j)); "
    "Im changes sign when the pair is swapped"
)


@dataclass(frozen=True)
class OracleSettings:
    """Quadrature order per axis, convergence tolerance and doubling budget."""

    order: int = 256
    tolerance: float = 1e-10
    max_doublings: int = 3

    def __post_init__(self):
        if self.order < 1:
            raise DomainError(f"quadrature order must be positive, got {self.order!r}")
        if not self.tolerance >= 1e-14:
            raise DomainError(f"oracle tolerance must be >= 1e-14, got {self.tolerance!r}")
        if self.max_doublings < 0:
            raise DomainError("max_doublings must be non-negative")

    def orders(self) -> list[int]:
        return [self.order * 2**i for i in range(self.max_doublings + 1)]


def scattering_density(theta, phi=None):
    """Half-space isotropic angular density sin(theta) / (2 pi)."""
    return np.sin(theta) / (2.0 * math.pi)


def _converged(estimate, settings: OracleSettings, what: str):
    """Run ``estimate(order)`` with doubling orders until two agree."""
    prev = None
    for order in settings.orders():
        value = estimate(order)
        if prev is not None and np.max(np.abs(value - prev)) < settings.tolerance:
            return value, order
        prev_order, prev = order, value
    if settings.max_doublings == 0:
        return prev, prev_order
    raise NumericError(
        f"{what}: no convergence to {settings.tolerance:g} by order {prev_order}; "
        f"last estimates {prev!r} and {value!r}"
    )


def _ula_integral(g: ArchedUlaGeometry, m: int, n: int, settings: OracleSettings):
    def integrand(theta, phi):
        return scattering_density(theta) * np.exp(1j * phase_delta_ula(g, m, n, theta, phi))

    def estimate(order):
        return integrate_2d(integrand, *HALF_SPACE, gauss_legendre(order))

    return _converged(estimate, settings, f"ULA oracle ({m}, {n})")


def _ura_integral(g: ArchedUraGeometry, i: int, j: int, settings: OracleSettings):
    k = wavenumber(g.wavelength)

    def integrand(theta, phi):
        a, b, c = ura_abc(g, i, j, theta)
        return scattering_density(theta) * np.exp(-1j * k * (a * np.cos(phi) + b * np.sin(phi) + c))

    def estimate(order):
        return integrate_2d(integrand, *HALF_SPACE, gauss_legendre(order))

    return _converged(estimate, settings, f"URA oracle ({i}, {j})")


def oracle_entry_ula(g: ArchedUlaGeometry, m: int, n: int,
                     settings: OracleSettings = OracleSettings()) -> complex:
    """Half-space double integral of the ULA correlation, converged by doubling."""
    return complex(_ula_integral(g, m, n, settings)[0])


def oracle_entry_ura(g: ArchedUraGeometry, i: int, j: int,
                     settings: OracleSettings = OracleSettings()) -> complex:
    """Half-space double integral of the URA correlation for flat indices i, j."""
    return complex(_ura_integral(g, i, j, settings)[0])


def oracle_entry(g, i: int, j: int, settings: OracleSettings = OracleSettings()) -> tuple[complex, int]:
    """Oracle value and the quadrature order that converged, for either geometry."""
    if isinstance(g, ArchedUraGeometry):
        value, order = _ura_integral(g, i, j, settings)
    else:
        value, order = _ula_integral(g, i, j, settings)
    return complex(value), order


def oracle_matrix(g, settings: OracleSettings = OracleSettings(), threads: int = 1) -> CorrelationMatrix:
    """Full Hermitian matrix of oracle entries. Cost grows as size^2 / 2."""
    size = g.size
    pairs = [(i, j) for i in range(size) for j in range(i + 1, size)]
    out = np.eye(size, dtype=complex)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        values = list(pool.map(lambda p: oracle_entry(g, *p, settings)[0], pairs))
    for (i, j), v in zip(pairs, values):
        out[i, j] = v
        out[j, i] = v.conjugate()
    return CorrelationMatrix(out, "oracle")


# ---------------------------------------------------------------------------
# odd-order Jacobi-Anger residual
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OddTermSeries:
    """Imaginary part of the ULA oracle rebuilt from odd Bessel orders."""

    value: float
    terms: np.ndarray = field(repr=False)
    k_max: int
    converged: bool
    quadrature_order: int


def odd_term_series_ula(g: ArchedUlaGeometry, m: int, n: int, k_max: int = 61,
                        settings: OracleSettings = OracleSettings()) -> OddTermSeries:
    """Sum of the odd azimuthal orders of the ULA correlation integral.

    Integrating exp(-j z sin(phi)) over phi in [0, pi] gives
    pi J_0(z) - 4j sum_{k odd} J_k(z) / k, with z = b sin(theta) sin(c).
    The even part is the sinc; the odd part contributes

        value = sum_{k odd <= k_max} (2 / (k pi)) I_k,
        I_k   = int_0^pi sin(t) cos(b cos(t) cos(c)) J_k(b sin(t) sin(c)) dt,

    so that sinc + j * value reproduces the oracle entry. Each I_k is real
    because the sine part of exp(j b cos(t) cos(c)) is odd about t = pi/2.

    ``converged`` is False when the last term still exceeds the tolerance.
    """
    if k_max < 1 or k_max % 2 == 0 or k_max > 199:
        raise DomainError(f"k_max must be an odd integer in [1, 199], got {k_max!r}")
    m = g.check_index(m)
    n = g.check_index(n)
    b = wavenumber(g.wavelength) * float(g.chord(n - m))
    c = float(g.mid_angle(n, m))
    orders = np.arange(1, k_max + 1, 2)

    def integrand(t):
        jk = bessel_j_all(k_max, b * np.sin(t) * math.sin(c))[orders]
        return np.sin(t) * np.cos(b * np.cos(t) * math.cos(c)) * jk

    def estimate(order):
        return integrate_1d(integrand, (0.0, math.pi), gauss_legendre(order))

    integrals, q_order = _converged(estimate, settings, f"odd-term series ({m}, {n})")
    terms = 2.0 * integrals / (orders * math.pi)
    return OddTermSeries(
        value=float(np.sum(terms)),
        terms=terms,
        k_max=k_max,
        converged=bool(abs(terms[-1]) <= settings.tolerance),
        quadrature_order=q_order,
    )


# ---------------------------------------------------------------------------
# closed form vs oracle
# ---------------------------------------------------------------------------

@dataclass
class PairResult:
    i: int
    j: int
    closed: float
    oracle_re: float
    oracle_im: float
    quadrature_order: int

    @property
    def real_error(self) -> float:
        return abs(self.closed - self.oracle_re)


@dataclass
class ValidationReport:
    geometry: dict
    pairs: list[PairResult]
    seed: int
    convention: str = CONVENTION

    @property
    def max_abs_real_error(self) -> float:
        return max((p.real_error for p in self.pairs), default=0.0)

    @property
    def max_abs_imag_part(self) -> float:
        return max((abs(p.oracle_im) for p in self.pairs), default=0.0)

    @property
    def quadrature_order(self) -> int:
        return max((p.quadrature_order for p in self.pairs), default=0)

    def to_dict(self) -> dict:
        return {
            "geometry": self.geometry,
            "pairs": len(self.pairs),
            "max_abs_real_error": self.max_abs_real_error,
            "max_abs_imag_part": self.max_abs_imag_part,
            "quadrature_order": self.quadrature_order,
            "seed": self.seed,
            "convention": self.convention,
            "per_pair": [
                {"i": p.i, "j": p.j, "closed": p.closed, "oracle_re": p.oracle_re,
                 "oracle_im": p.oracle_im, "real_error": p.real_error,
                 "quadrature_order": p.quadrature_order}
                for p in self.pairs
            ],
        }


def describe_geometry(g) -> dict:
    kind = "ura" if isinstance(g, ArchedUraGeometry) else "ula"
    return {"type": kind, **asdict(g)}


def _triangle_pair(index: int, size: int) -> tuple[int, int]:
    # row-major enumeration of (i, j) with i <= j
    i = 0
    row = size
    while index >= row:
        index -= row
        i += 1
        row -= 1
    return i, i + index


def sample_pairs(size: int, samples: int, seed: int = 0) -> list[tuple[int, int]]:
    """Every unordered pair (diagonal included) when there are at most 256 of
    them, otherwise ``samples`` distinct pairs drawn uniformly with ``seed``."""
    total = size * (size + 1) // 2
    if total <= EXHAUSTIVE_PAIR_LIMIT:
        return [(i, j) for i in range(size) for j in range(i, size)]
    if samples < 1:
        raise DomainError("sample count must be at least 1")
    rng = np.random.default_rng(seed)
    picks = np.sort(rng.choice(total, size=min(samples, total), replace=False))
    return [_triangle_pair(int(k), size) for k in picks]


def validate(g, samples: int = 64, settings: OracleSettings = OracleSettings(),
             seed: int = 0, pairs: list[tuple[int, int]] | None = None,
             threads: int = 1) -> ValidationReport:
    """Compare the closed form with the oracle on a set of element pairs.

    Raises:
        NumericError: if an oracle entry fails to converge; the message names
            the pair.
    """
    if pairs is None:
        pairs = sample_pairs(g.size, samples, seed)

    def one(pair):
        i, j = pair
        try:
            value, order = oracle_entry(g, i, j, settings)
        except NumericError as exc:
            raise NumericError(f"pair ({i}, {j}): {exc}") from exc
        return PairResult(i, j, closed_entry(g, i, j), value.real, value.imag, order)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(one, pairs))
    return ValidationReport(describe_geometry(g), results, seed)
