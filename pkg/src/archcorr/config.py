"""Experiment configuration: one JSON document per experiment.

Keys are flat so every scalar can be overridden by a ``--<key>`` flag.
Angles may be written as numbers or as simple multiples of pi, e.g.
``"pi/2"`` or ``"3*pi/8"``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

from .correlation_oracle import OracleSettings
from .errors import DomainError
from .geometry import ArchedUlaGeometry, ArchedUraGeometry
from .spectrum import DEFAULT_THRESHOLDS, asymptotic_dof_ula, asymptotic_dof_ura

SPEED_OF_LIGHT = 299_792_458.0

_PI_EXPR = re.compile(
    r"^\s*(?:(?P<num>[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*\*?\s*)?pi"
    r"\s*(?:/\s*(?P<den>[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?))?\s*$"
)


class ConfigError(ValueError):
    """The experiment configuration is malformed or inconsistent."""


def parse_angle(value) -> float:
    """Number, numeric string, or ``[k*]pi[/d]`` string -> radians."""
    if isinstance(value, bool):
        raise ConfigError(f"not an angle: {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        match = _PI_EXPR.match(value)
        if match:
            num = float(match["num"]) if match["num"] else 1.0
            den = float(match["den"]) if match["den"] else 1.0
            return num * math.pi / den
        try:
            return float(value)
        except ValueError:
            pass
    raise ConfigError(f"not an angle: {value!r}")


@dataclass
class ExperimentConfig:
    array_type: str = "ula"
    n_elements: int | None = None
    rows: int | None = None
    per_arc: int | None = None
    arc_length_m: float = 0.0
    bend_angle_rad: list[float] = field(default_factory=lambda: [0.0])
    wavelength_m: float | None = None
    frequency_hz: float | None = None
    row_spacing_m: float | None = None
    oracle_order: int = 256
    oracle_tolerance: float = 1e-10
    oracle_max_doublings: int = 3
    dof_thresholds: list[float] = field(default_factory=lambda: list(DEFAULT_THRESHOLDS))
    matrix_source: str = "closed"
    validation_bound: float = 1e-8
    validation_samples: int = 64
    validation_pairs: str = "auto"
    output_dir: str = "out"
    seed: int = 0

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**data)
        try:
            cfg.normalize()
        except TypeError as exc:
            raise ConfigError(f"bad value type in config: {exc}") from exc
        return cfg

    def normalize(self) -> None:
        """Coerce types and check cross-field consistency."""
        if self.array_type not in ("ula", "ura"):
            raise ConfigError(f"array_type must be 'ula' or 'ura', got {self.array_type!r}")
        betas = self.bend_angle_rad
        if not isinstance(betas, list):
            betas = [betas]
        if not betas:
            raise ConfigError("bend_angle_rad list is empty")
        self.bend_angle_rad = [parse_angle(b) for b in betas]
        for b in self.bend_angle_rad:
            if not 0.0 <= b <= math.pi / 2:
                raise ConfigError(f"bend angle {b!r} outside [0, pi/2]")
        if (self.wavelength_m is None) == (self.frequency_hz is None):
            raise ConfigError("give exactly one of wavelength_m / frequency_hz")
        if self.frequency_hz is not None and not self.frequency_hz > 0:
            raise ConfigError("frequency_hz must be positive")
        if self.wavelength_m is not None and not self.wavelength_m > 0:
            raise ConfigError("wavelength_m must be positive")
        if not self.arc_length_m > 0:
            raise ConfigError("arc_length_m must be positive")
        if self.array_type == "ula":
            if not isinstance(self.n_elements, int) or self.n_elements < 2:
                raise ConfigError("ULA needs integer n_elements >= 2")
        else:
            for key in ("rows", "per_arc"):
                if not isinstance(getattr(self, key), int):
                    raise ConfigError(f"URA needs integer {key}")
            if self.row_spacing_m is not None and not self.row_spacing_m > 0:
                raise ConfigError("row_spacing_m must be positive")
        thresholds = [float(t) for t in self.dof_thresholds]
        if not thresholds or not all(0.0 < t < 1.0 for t in thresholds):
            raise ConfigError("dof_thresholds must be a non-empty list in (0, 1)")
        self.dof_thresholds = thresholds
        if self.matrix_source not in ("closed", "oracle"):
            raise ConfigError("matrix_source must be 'closed' or 'oracle'")
        if self.validation_pairs not in ("auto", "diagonal"):
            raise ConfigError("validation_pairs must be 'auto' or 'diagonal'")
        if not self.validation_bound > 0:
            raise ConfigError("validation_bound must be positive")
        try:
            self.oracle()
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def wavelength(self) -> float:
        if self.wavelength_m is not None:
            return float(self.wavelength_m)
        return SPEED_OF_LIGHT / float(self.frequency_hz)

    @property
    def row_spacing(self) -> float:
        if self.row_spacing_m is not None:
            return float(self.row_spacing_m)
        # rows spread over the arc length, as in the square-aperture setup
        return self.arc_length_m / (self.rows - 1) if self.rows > 1 else self.arc_length_m

    def oracle(self) -> OracleSettings:
        return OracleSettings(self.oracle_order, self.oracle_tolerance, self.oracle_max_doublings)

    def geometry(self, beta: float):
        try:
            if self.array_type == "ula":
                return ArchedUlaGeometry(self.n_elements, self.arc_length_m, beta, self.wavelength)
            return ArchedUraGeometry(self.rows, self.per_arc, self.row_spacing,
                                     self.arc_length_m, beta, self.wavelength)
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc

    def asymptote(self) -> float:
        if self.array_type == "ula":
            return asymptotic_dof_ula(self.arc_length_m, self.wavelength)
        return asymptotic_dof_ura(self.arc_length_m, self.wavelength)

    def single_beta(self) -> float:
        if len(self.bend_angle_rad) != 1:
            raise ConfigError(
                "this command takes one bend angle; use 'sweep' or --bend_angle_rad"
            )
        return self.bend_angle_rad[0]

    def to_dict(self) -> dict:
        return asdict(self)


def bundled_config_names() -> list[str]:
    files = resources.files("archcorr") / "configs"
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))


def load_config(path: str | Path) -> dict:
    """Read a config file, falling back to a bundled config of that name."""
    p = Path(path)
    if p.is_file():
        text = p.read_text()
    else:
        name = p.name[:-5] if p.name.endswith(".json") else p.name
        bundled = resources.files("archcorr") / "configs" / f"{name}.json"
        if not bundled.is_file():
            raise ConfigError(f"config not found: {path}")
        text = bundled.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return data
