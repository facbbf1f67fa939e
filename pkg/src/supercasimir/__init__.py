"""Thermal Casimir pressures and forces in normal and superconducting cavities."""

from .errors import (
    CancellationRefusal,
    CasimirError,
    ConfigError,
    DomainError,
    ExpansionValidityError,
    GeometryError,
    NonConvergenceError,
    PerturbativeValidityError,
)
from .materials import (
    Kind,
    MaterialModel,
    PlateState,
    Prescription,
    fresnel_imaginary,
    london_depth,
    permittivity_imaginary,
    preset,
    te_zero_reflection,
    tm_zero_reflection,
)
from .lifshitz import (
    CavityConfig,
    PressureBreakdown,
    matsubara,
    p0_te_expansion,
    p0_te_numeric,
    p0_tm,
    p1,
    pressure,
)
from .pfa import ForceBreakdown, SphereGeometry, f0_te_ps, f0_tm_ps, f_ps
from .deltas import (
    DeltaRequest,
    DeltaResult,
    DerivedScales,
    Geometry,
    Method,
    Setup,
    delta_force_ps,
    delta_fpp_perturbative,
    delta_fps_perturbative,
    delta_pressure,
)

__version__ = "0.1.0"
