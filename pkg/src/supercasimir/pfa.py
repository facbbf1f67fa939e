"""Sphere-plate Casimir force in the proximity force approximation.

``F = 2 pi R E_pp(a)``; per Matsubara term, after the azimuthal integration
and ``y = 2 a q``::

    F_l = k_B T R / (4 a^2) * int_{y_l}^{inf} -y sum_alpha log(1 - r1 r2 e^{-y}) dy

with the l = 0 term weighted by one half, as in the pressure.
"""

from dataclasses import dataclass, field

from .constants import EV_PER_NM_TO_N, K_B, ZETA3
from .errors import ConfigError, GeometryError, NonConvergenceError
from .lifshitz import matsubara_sum, zero_te_integral, zero_tm_integral
from .materials import tm_zero_reflection

__all__ = ["SphereGeometry", "ForceBreakdown", "f_ps", "f0_tm_ps", "f0_te_ps", "sphere_force"]

MAX_GAP_OVER_RADIUS = 0.05


@dataclass(frozen=True)
class SphereGeometry:
    """Sphere of radius ``radius`` (um) at minimum distance ``gap`` (nm) from a plate."""

    radius: float
    gap: float

    def __post_init__(self):
        if not self.radius > 0 or not self.gap > 0:
            raise GeometryError("radius and gap must be positive")
        if self.gap / self.radius_nm >= MAX_GAP_OVER_RADIUS:
            raise GeometryError(
                f"a/R = {self.gap / self.radius_nm:.3g} >= {MAX_GAP_OVER_RADIUS}: "
                "PFA not credible")

    @property
    def radius_nm(self):
        return self.radius * 1e3


@dataclass(frozen=True)
class ForceBreakdown:
    """Zero-mode / nonzero-mode split of the sphere-plate force, in N."""

    f0_te: float
    f0_tm: float
    f1: float
    total: float = field(init=False)
    l_used: int = 0
    max_quad_error: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "total", self.f0_te + self.f0_tm + self.f1)


def _force_prefactor(geometry, temperature):
    """k_B T R / (4 a^2) in N."""
    return K_B * temperature * geometry.radius_nm / (4.0 * geometry.gap ** 2) * EV_PER_NM_TO_N


def f0_tm_ps(geometry, temperature, numeric=False, *, rel_tol=1e-10, zero_mode_weight=0.5):
    """TM zero-mode force ``k_B T R zeta(3) / (8 a^2)`` in N."""
    if not temperature > 0:
        raise ConfigError("temperature must be > 0")
    integral = zero_tm_integral(rel_tol, kind="force")[0] if numeric else ZETA3
    return zero_mode_weight * _force_prefactor(geometry, temperature) * integral


def f0_te_ps(geometry, temperature, omega_eff, omega_eff2=None, *, rel_tol=1e-10,
             zero_mode_weight=0.5):
    """TE zero-mode force in N for plasma-form zero-frequency reflection.

    ``omega_eff`` follows the same convention as
    :func:`supercasimir.lifshitz.p0_te_numeric`; 0 on either plate gives 0.
    """
    if not temperature > 0:
        raise ConfigError("temperature must be > 0")
    if omega_eff2 is None:
        omega_eff2 = omega_eff
    integral, _ = zero_te_integral(geometry.gap, omega_eff, omega_eff2, rel_tol, kind="force")
    return zero_mode_weight * _force_prefactor(geometry, temperature) * integral


def f_ps(geometry, config, *, zero_mode_weight=0.5):
    """Full PFA sphere-plate force.

    ``config`` describes the materials, temperature, recipe and tolerances;
    its gap must equal ``geometry.gap``.
    """
    if config.gap != geometry.gap:
        raise ConfigError(f"config gap {config.gap} nm != geometry gap {geometry.gap} nm")
    pref = _force_prefactor(geometry, config.temperature)
    w1, w2 = config.zero_mode_omegas()
    te_int, te_err = zero_te_integral(geometry.gap, w1, w2, config.quad_rel_tol, kind="force")
    f0te = zero_mode_weight * pref * te_int
    tm_product = tm_zero_reflection(config.state1) * tm_zero_reflection(config.state2)
    f0tm = f0_tm_ps(geometry, config.temperature,
                    zero_mode_weight=zero_mode_weight) if tm_product else 0.0
    try:
        value, l_used, err = matsubara_sum(config, "force")
    except NonConvergenceError as exc:
        exc.partial_sum *= pref
        exc.bound *= pref
        raise
    return ForceBreakdown(f0te, f0tm, pref * value, l_used=l_used,
                          max_quad_error=pref * err + zero_mode_weight * pref * te_err)


def sphere_force(radius, config, **kwargs):
    """:func:`f_ps` with the geometry built from ``config.gap``."""
    return f_ps(SphereGeometry(radius, config.gap), config, **kwargs)
