"""Closed-form correlation entries and dense matrices for arched arrays.

Both closed forms reduce to a normalised sinc of twice the element
separation measured in wavelengths:

    rho = sinc(2 |p_i - p_j| / lambda),   sinc(x) = sin(pi x) / (pi x)

For the ULA the separation is the chord 2R sin(delta_alpha / 2); for the URA
it is sqrt(D^2 + E^2), combining the row offset with the arc chord.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResourceError
from .geometry import ArchedUlaGeometry, ArchedUraGeometry
from .numerics import sinc_normalized
from .wavefield import ura_de

MAX_URA_ELEMENTS = 16384

KINDS = ("closed_ula", "closed_ura", "oracle")


@dataclass(frozen=True)
class CorrelationMatrix:
    """Dense correlation matrix plus a tag saying where it came from."""

    values: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown matrix kind {self.kind!r}")
        if self.values.ndim != 2 or self.values.shape[0] != self.values.shape[1]:
            raise ValueError(f"correlation matrix must be square, got {self.values.shape}")

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)


def corr_ula_entry(g: ArchedUlaGeometry, m: int, n: int) -> float:
    """Correlation between ULA elements ``m`` and ``n``.

    sinc((4R / lambda) sin((alpha_n - alpha_m) / 2)), written through the
    chord so the planar limit sinc(2 d |n - m| / lambda) needs no special case.
    """
    m = g.check_index(m)
    n = g.check_index(n)
    return float(_sinc_of_distance(g.chord(n - m), g.wavelength))


def corr_ula_matrix(g: ArchedUlaGeometry) -> CorrelationMatrix:
    """N x N real symmetric Toeplitz matrix of ULA correlations."""
    offsets = np.arange(g.n_elements)
    first_row = _sinc_of_distance(g.chord(offsets), g.wavelength)
    idx = np.abs(offsets[:, None] - offsets[None, :])
    return CorrelationMatrix(first_row[idx], "closed_ula")


def _sinc_of_distance(dist, wavelength: float):
    # sin(k s) / (k s); the shared path keeps 1-row URAs bit-identical to ULAs
    return sinc_normalized(2.0 * np.abs(dist) / wavelength)


def corr_ura_entry(g: ArchedUraGeometry, i: int, j: int) -> float:
    """Correlation between flat URA elements ``i`` and ``j``."""
    d, e = ura_de(g, i, j)
    return _sinc_of_distance(math.hypot(d, e), g.wavelength)


def corr_ura_matrix(g: ArchedUraGeometry) -> CorrelationMatrix:
    """(M N) x (M N) real symmetric matrix, row-major element order.

    The matrix is block-Toeplitz: block (m, m') is a Toeplitz matrix that
    depends only on |m - m'|, so only M distinct N x N blocks are evaluated.

    Raises:
        ResourceError: if M * N exceeds ``MAX_URA_ELEMENTS``.
    """
    if g.size > MAX_URA_ELEMENTS:
        raise ResourceError(f"URA with {g.size} elements exceeds the {MAX_URA_ELEMENTS} guard")
    n_arc = g.per_arc
    offsets = np.arange(n_arc)
    arc_chord = np.abs(g.chord(offsets))
    row_gap = np.arange(g.rows) * g.row_spacing
    table = _sinc_of_distance(np.hypot(row_gap[:, None], arc_chord[None, :]), g.wavelength)
    toe = np.abs(offsets[:, None] - offsets[None, :])
    blocks = table[:, toe]  # (rows, N, N)

    out = np.empty((g.rows, n_arc, g.rows, n_arc))
    for m in range(g.rows):
        for mp in range(m, g.rows):
            out[m, :, mp, :] = blocks[mp - m]
            out[mp, :, m, :] = blocks[mp - m]
    return CorrelationMatrix(out.reshape(g.size, g.size), "closed_ura")


def closed_entry(g, i: int, j: int) -> float:
    """Closed-form entry for either geometry."""
    if isinstance(g, ArchedUraGeometry):
        return corr_ura_entry(g, i, j)
    return corr_ula_entry(g, i, j)


def closed_matrix(g) -> CorrelationMatrix:
    """Closed-form matrix for either geometry."""
    if isinstance(g, ArchedUraGeometry):
        return corr_ura_matrix(g)
    return corr_ula_matrix(g)
