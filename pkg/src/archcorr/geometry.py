"""Arched ULA / URA element layouts.

The arc lies in the YZ-plane and starts at (0, 0, R sin(beta)); element n
sits at central angle alpha_n = n * 2 * beta / (N - 1) for n = 0..N-1. URA
rows are copies of that arc shifted along X by ``row_spacing``.

All indices are zero-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

PLANAR_THRESHOLD = 1e-9
PLANAR = math.inf


def bend_radius(arc_length: float, bend_angle: float) -> float:
    """Curvature radius L / (2 beta); ``PLANAR`` (infinity) when beta < 1e-9."""
    if not arc_length > 0:
        raise DomainError(f"arc length must be positive, got {arc_length!r}")
    if not 0.0 <= bend_angle <= math.pi / 2:
        raise DomainError(f"bend angle {bend_angle!r} outside [0, pi/2]")
    if bend_angle < PLANAR_THRESHOLD:
        return PLANAR
    return arc_length / (2.0 * bend_angle)


def _check_common(arc_length: float, bend_angle: float, wavelength: float) -> None:
    if not (math.isfinite(arc_length) and arc_length > 0):
        raise DomainError(f"arc length must be positive, got {arc_length!r}")
    if not (math.isfinite(bend_angle) and 0.0 <= bend_angle <= math.pi / 2):
        raise DomainError(f"bend angle {bend_angle!r} outside [0, pi/2]")
    if not (math.isfinite(wavelength) and wavelength > 0):
        raise DomainError(f"wavelength must be positive, got {wavelength!r}")


class _Arc:
    """Shared arc arithmetic for both geometries.

    The differences R(cos(beta - a) - cos(beta)) and 2R sin(da / 2) are
    rewritten as products so they stay accurate as R grows without bound.
    """

    n_elements: int
    arc_length: float
    bend_angle: float

    @property
    def planar(self) -> bool:
        return self.bend_angle < PLANAR_THRESHOLD

    @property
    def radius(self) -> float:
        return bend_radius(self.arc_length, self.bend_angle)

    @property
    def element_spacing(self) -> float:
        """Arc-length spacing between neighbours, L / (N - 1)."""
        return self.arc_length / (self.n_elements - 1)

    @property
    def central_angles(self) -> np.ndarray:
        """Central angle of every element, in [0, 2 beta]."""
        return 2.0 * self.bend_angle * np.arange(self.n_elements) / (self.n_elements - 1)

    def _step_angle(self) -> float:
        # half the central angle between neighbours
        return self.bend_angle / (self.n_elements - 1)

    def chord(self, dn):
        """Signed chord between elements ``dn`` positions apart on the arc.

        Equals 2R sin((alpha_n - alpha_m) / 2) with ``dn = n - m``; in the
        planar limit this is the straight-line offset ``dn * d``.
        """
        dn = np.asarray(dn, dtype=float)
        if self.planar:
            return dn * self.element_spacing
        beta = self.bend_angle
        return (self.arc_length / beta) * np.sin(dn * self._step_angle())

    def mid_angle(self, n, m):
        """beta - (alpha_n + alpha_m) / 2, zero in the planar limit."""
        n = np.asarray(n, dtype=float)
        m = np.asarray(m, dtype=float)
        return self.bend_angle - (n + m) * self._step_angle()

    def arc_yz(self) -> tuple[np.ndarray, np.ndarray]:
        n = np.arange(self.n_elements, dtype=float)
        if self.planar:
            z = self.arc_length / 2.0 - n * self.element_spacing
            return np.zeros_like(z), z
        # y = R(cos(beta - a) - cos beta) = 2R sin(beta - a/2) sin(a/2)
        # z = R sin(beta - a)
        r = self.radius
        half = n * self._step_angle()
        y = 2.0 * r * np.sin(self.bend_angle - half) * np.sin(half)
        z = r * np.sin(self.bend_angle - 2.0 * half)
        return y, z


@dataclass(frozen=True)
class ArchedUlaGeometry(_Arc):
    """N elements evenly spaced along an arc of length L bent by angle beta."""

    n_elements: int
    arc_length: float
    bend_angle: float
    wavelength: float

    def __post_init__(self):
        if int(self.n_elements) != self.n_elements or self.n_elements < 2:
            raise DomainError(f"ULA needs at least 2 elements, got {self.n_elements!r}")
        _check_common(self.arc_length, self.bend_angle, self.wavelength)

    @property
    def size(self) -> int:
        return self.n_elements

    def check_index(self, n: int) -> int:
        if not 0 <= n < self.n_elements:
            raise IndexError(f"element index {n} outside [0, {self.n_elements})")
        return int(n)


@dataclass(frozen=True)
class ArchedUraGeometry(_Arc):
    """``rows`` copies of an arched arc, stacked along X.

    Elements are ordered row-major: flat index ``m * per_arc + n``.
    """

    rows: int
    per_arc: int
    row_spacing: float
    arc_length: float
    bend_angle: float
    wavelength: float

    def __post_init__(self):
        if int(self.rows) != self.rows or self.rows < 1:
            raise DomainError(f"URA needs at least one row, got {self.rows!r}")
        if int(self.per_arc) != self.per_arc or self.per_arc < 2:
            raise DomainError(f"URA arcs need at least 2 elements, got {self.per_arc!r}")
        if not (math.isfinite(self.row_spacing) and self.row_spacing > 0):
            raise DomainError(f"row spacing must be positive, got {self.row_spacing!r}")
        _check_common(self.arc_length, self.bend_angle, self.wavelength)

    @property
    def n_elements(self) -> int:  # type: ignore[override]
        return self.per_arc

    @property
    def size(self) -> int:
        return self.rows * self.per_arc

    def split(self, flat: int) -> tuple[int, int]:
        """Flat row-major index -> (row, position on arc)."""
        if not 0 <= flat < self.size:
            raise IndexError(f"element index {flat} outside [0, {self.size})")
        return divmod(int(flat), self.per_arc)

    def arc(self) -> ArchedUlaGeometry:
        """The single arc every row is a copy of."""
        return ArchedUlaGeometry(self.per_arc, self.arc_length, self.bend_angle, self.wavelength)


def ula_positions(g: ArchedUlaGeometry) -> np.ndarray:
    """Element coordinates, shape (N, 3), x = 0 for every element."""
    y, z = g.arc_yz()
    return np.column_stack([np.zeros_like(y), y, z])


def ura_positions(g: ArchedUraGeometry) -> np.ndarray:
    """Element coordinates, shape (M * N, 3), row-major, row m at x = m * d_x."""
    y, z = g.arc_yz()
    x = np.repeat(np.arange(g.rows) * g.row_spacing, g.per_arc)
    return np.column_stack([x, np.tile(y, g.rows), np.tile(z, g.rows)])
