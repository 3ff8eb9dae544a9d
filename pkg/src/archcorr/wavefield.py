"""Distances, phase differences and steering vectors under plane-wave incidence.

Angles follow the usual spherical convention: ``theta`` is the zenith angle
from +Z, ``phi`` the azimuth from +X towards +Y. Every function taking
``theta``/``phi`` broadcasts over numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import ArchedUlaGeometry, ArchedUraGeometry, ula_positions, ura_positions


@dataclass(frozen=True)
class Direction:
    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError(f"zenith angle {self.theta!r} outside [0, pi]")
        if not 0.0 <= self.phi <= math.pi:
            raise DomainError(f"azimuth {self.phi!r} outside [0, pi]")

    def unit(self) -> np.ndarray:
        return unit_vector(self.theta, self.phi)


@dataclass(frozen=True)
class UserLocation:
    r: float
    direction: Direction

    def __post_init__(self):
        if not self.r > 0:
            raise DomainError(f"user distance must be positive, got {self.r!r}")

    def point(self) -> np.ndarray:
        return self.r * self.direction.unit()


def unit_vector(theta, phi) -> np.ndarray:
    """Propagation direction(s), stacked on the last axis."""
    st = np.sin(theta)
    return np.stack(np.broadcast_arrays(st * np.cos(phi), st * np.sin(phi), np.cos(theta)), axis=-1)


def wavenumber(wavelength: float) -> float:
    return 2.0 * math.pi / wavelength


# ---------------------------------------------------------------------------
# arched ULA
# ---------------------------------------------------------------------------

def exact_distance_ula(g: ArchedUlaGeometry, user: UserLocation, n: int) -> float:
    """Euclidean distance from the user to element ``n``."""
    n = g.check_index(n)
    return float(np.linalg.norm(user.point() - ula_positions(g)[n]))


def farfield_distance_ula(g: ArchedUlaGeometry, user: UserLocation, n: int) -> float:
    """First-order distance r - u . p_n, linear in the element position."""
    n = g.check_index(n)
    return float(user.r - user.direction.unit() @ ula_positions(g)[n])


def phase_delta_ula(g: ArchedUlaGeometry, m: int, n: int, theta, phi):
    """Phase of element ``n`` relative to element ``m`` (radians).

    Evaluated as b [sin(theta) sin(phi) sin(c) - cos(theta) cos(c)] with
    b = 2 pi chord / lambda and c the mid-angle of the pair, which is the
    same quantity as the difference of the two far-field phases but free of
    cancellation when the radius is large.
    """
    m = g.check_index(m)
    n = g.check_index(n)
    b = wavenumber(g.wavelength) * g.chord(n - m)
    c = g.mid_angle(n, m)
    return b * (np.sin(theta) * np.sin(phi) * np.sin(c) - np.cos(theta) * np.cos(c))


def steering_ula(g: ArchedUlaGeometry, theta: float, phi: float) -> np.ndarray:
    """Unit-norm steering vector, entry n = exp(j k u . p_n) / sqrt(N)."""
    k = wavenumber(g.wavelength)
    phase = k * (ula_positions(g) @ unit_vector(theta, phi))
    return np.exp(1j * phase) / math.sqrt(g.size)


# ---------------------------------------------------------------------------
# arched URA
# ---------------------------------------------------------------------------

def farfield_delta_ura(g: ArchedUraGeometry, flat: int, theta, phi):
    """Path-length advance of element ``flat`` over the origin, u . p."""
    g.split(flat)
    return unit_vector(theta, phi) @ ura_positions(g)[flat]


def ura_abc(g: ArchedUraGeometry, i: int, j: int, theta):
    """Coefficients with Delta_i - Delta_j = A cos(phi) + B sin(phi) + C.

    ``i`` and ``j`` are flat row-major indices. A carries the row offset,
    B and C the arc offset; all three scale with sin/cos of ``theta``.
    """
    m, n = g.split(i)
    mp, np_ = g.split(j)
    chord = g.chord(n - np_)
    c = g.mid_angle(n, np_)
    st = np.sin(theta)
    a = (m - mp) * g.row_spacing * st
    b = chord * np.sin(c) * st
    cc = -chord * np.cos(c) * np.cos(theta)
    return a, b, cc


def ura_de(g: ArchedUraGeometry, i: int, j: int) -> tuple[float, float]:
    """Theta-free coefficients (D, E) with D >= 0 and D^2 + E^2 = |p_i - p_j|^2."""
    m, n = g.split(i)
    mp, np_ = g.split(j)
    chord = float(g.chord(n - np_))
    c = float(g.mid_angle(n, np_))
    d = math.hypot((m - mp) * g.row_spacing, chord * math.sin(c))
    e = chord * math.cos(c)
    return d, e


def steering_ura(g: ArchedUraGeometry, theta: float, phi: float) -> np.ndarray:
    """Unit-norm steering vector over all M*N elements, row-major."""
    k = wavenumber(g.wavelength)
    phase = k * (ura_positions(g) @ unit_vector(theta, phi))
    return np.exp(1j * phase) / math.sqrt(g.size)
