"""Spatial correlation and degrees of freedom of arched antenna arrays."""

from .correlation_closed import (
    CorrelationMatrix,
    corr_ula_entry,
    corr_ula_matrix,
    corr_ura_entry,
    corr_ura_matrix,
)
from .correlation_oracle import (
    OracleSettings,
    ValidationReport,
    odd_term_series_ula,
    oracle_entry_ula,
    oracle_entry_ura,
    validate,
)
from .errors import DomainError, NumericError, PSDViolation, ResourceError
from .geometry import ArchedUlaGeometry, ArchedUraGeometry, bend_radius, ula_positions, ura_positions
from .spectrum import (
    DofReport,
    EigenSpectrum,
    asymptotic_dof_ula,
    asymptotic_dof_ura,
    dof_threshold,
    effective_rank,
    eigen_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "ArchedUlaGeometry",
    "ArchedUraGeometry",
    "CorrelationMatrix",
    "DofReport",
    "DomainError",
    "EigenSpectrum",
    "NumericError",
    "OracleSettings",
    "PSDViolation",
    "ResourceError",
    "ValidationReport",
    "asymptotic_dof_ula",
    "asymptotic_dof_ura",
    "bend_radius",
    "corr_ula_entry",
    "corr_ula_matrix",
    "corr_ura_entry",
    "corr_ura_matrix",
    "dof_threshold",
    "effective_rank",
    "eigen_spectrum",
    "odd_term_series_ula",
    "oracle_entry_ula",
    "oracle_entry_ura",
    "ula_positions",
    "ura_positions",
    "validate",
]
