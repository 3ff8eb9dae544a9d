"""Eigenvalue spectra and degrees-of-freedom metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlation_closed import CorrelationMatrix
from .errors import DomainError, NumericError, PSDViolation

PSD_TOLERANCE = 1e-8
DEFAULT_THRESHOLDS = (1e-1, 1e-2, 1e-3)


@dataclass(frozen=True)
class EigenSpectrum:
    """Eigenvalues in non-increasing order."""

    values: np.ndarray

    @property
    def dim(self) -> int:
        return self.values.size

    @property
    def max(self) -> float:
        return float(self.values[0])

    @property
    def min(self) -> float:
        return float(self.values[-1])


def eigen_spectrum(r: CorrelationMatrix | np.ndarray) -> EigenSpectrum:
    """Eigenvalues of the Hermitian part (R + R^H) / 2, largest first."""
    a = r.values if isinstance(r, CorrelationMatrix) else np.asarray(r)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"need a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NumericError("correlation matrix has non-finite entries")
    sym = 0.5 * (a + a.conj().T)
    values = np.linalg.eigvalsh(sym)[::-1].copy()
    return EigenSpectrum(values)


def check_psd(s: EigenSpectrum, rel_tol: float = PSD_TOLERANCE) -> None:
    """Raise PSDViolation when min eigenvalue < -rel_tol * max eigenvalue."""
    if s.min < -rel_tol * abs(s.max):
        raise PSDViolation(
            f"min eigenvalue {s.min:.3e} below -{rel_tol:g} x max {s.max:.3e}"
        )


def dof_threshold(s: EigenSpectrum, tau: float) -> int:
    """Number of eigenvalues at or above ``tau`` times the largest."""
    if s.dim == 0:
        raise DomainError("empty spectrum")
    if not 0.0 < tau < 1.0:
        raise DomainError(f"threshold must lie in (0, 1), got {tau!r}")
    return int(np.count_nonzero(s.values >= tau * s.max))


def effective_rank(s: EigenSpectrum) -> float:
    """exp of the Shannon entropy of the eigenvalues normalised to unit sum.

    Small negative eigenvalues (within the PSD tolerance) are clipped to 0.
    """
    check_psd(s)
    p = np.clip(s.values, 0.0, None)
    total = p.sum()
    if total <= 0.0:
        raise DomainError("all-zero spectrum has no effective rank")
    p = p[p > 0] / total
    return float(math.exp(-np.sum(p * np.log(p))))


def asymptotic_dof_ula(arc_length: float, wavelength: float) -> float:
    """2 L / lambda."""
    return 2.0 * arc_length / wavelength


def asymptotic_dof_ura(arc_length: float, wavelength: float) -> float:
    """pi L^2 / lambda^2 for an L x L aperture."""
    return math.pi * arc_length**2 / wavelength**2


@dataclass(frozen=True)
class DofReport:
    threshold_counts: dict[float, int]
    effective_rank: float
    asymptote: float
    beta: float
    dim: int
    max_eigenvalue: float
    min_eigenvalue: float

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "dim": self.dim,
            "threshold_counts": {repr(t): c for t, c in self.threshold_counts.items()},
            "effective_rank": self.effective_rank,
            "asymptote": self.asymptote,
            "max_eigenvalue": self.max_eigenvalue,
            "min_eigenvalue": self.min_eigenvalue,
        }


def dof_report(s: EigenSpectrum, thresholds=DEFAULT_THRESHOLDS, *,
               asymptote: float, beta: float) -> DofReport:
    counts = {float(t): dof_threshold(s, t) for t in thresholds}
    return DofReport(counts, effective_rank(s), asymptote, beta, s.dim, s.max, s.min)
