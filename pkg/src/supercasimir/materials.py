"""Dielectric models, London penetration depth and reflection coefficients.

All frequencies are energies (hbar * xi, eV); wavevectors are in 1/nm.
"""

import enum
from dataclasses import dataclass, replace

import numpy as np

from .constants import HBAR_C
from .errors import ConfigError, DomainError

__all__ = [
    "Kind",
    "Prescription",
    "MaterialModel",
    "PlateState",
    "PRESETS",
    "preset",
    "permittivity_imaginary",
    "london_depth",
    "fresnel_imaginary",
    "zero_mode_omega",
    "te_zero_reflection",
    "tm_zero_reflection",
]

#: relaxation energy used when a preset does not say otherwise (eV)
DEFAULT_GAMMA = 0.035


class Kind(enum.Enum):
    PLASMA = "plasma"
    DRUDE = "drude"
    SUPERCONDUCTOR = "superconductor"


class Prescription(enum.Enum):
    """How the TE reflection coefficient is continued to zero frequency."""

    DRUDE = "drude"
    PLASMA = "plasma"


@dataclass(frozen=True)
class MaterialModel:
    """Local dielectric description of a metal plate.

    Parameters
    ----------
    kind : Kind
    omega_p : float
        Plasma energy hbar * Omega_P in eV. Zero is accepted and describes an
        empty half-space (epsilon = 1), useful as a null reference.
    gamma : float
        Relaxation energy hbar * gamma in eV; used by the Drude form, which
        also describes a superconductor at every nonzero Matsubara frequency.
    t_c : float or None
        Critical temperature in K, superconductors only.
    name : str
    """

    kind: Kind
    omega_p: float
    gamma: float = 0.0
    t_c: float | None = None
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.kind, Kind):
            object.__setattr__(self, "kind", Kind(self.kind))
        if not (self.omega_p >= 0 and np.isfinite(self.omega_p)):
            raise ConfigError(f"omega_p must be finite and >= 0, got {self.omega_p}")
        if not self.gamma >= 0:
            raise ConfigError(f"gamma must be >= 0, got {self.gamma}")
        if self.kind is Kind.SUPERCONDUCTOR:
            if self.t_c is None or not self.t_c > 0:
                raise ConfigError("a superconductor needs t_c > 0")
        elif self.t_c is not None:
            raise ConfigError("t_c is only meaningful for superconductors")

    @property
    def skin_depth(self):
        """delta = hbar c / (hbar Omega_P) in nm."""
        return HBAR_C / self.omega_p

    def with_omega_p(self, omega_p):
        return replace(self, omega_p=omega_p)

    def with_gamma(self, gamma):
        return replace(self, gamma=gamma)


PRESETS = {
    "nb": MaterialModel(Kind.SUPERCONDUCTOR, 8.7, DEFAULT_GAMMA, t_c=9.2, name="Nb"),
    "au": MaterialModel(Kind.DRUDE, 9.0, DEFAULT_GAMMA, name="Au"),
    "au-plasma": MaterialModel(Kind.PLASMA, 9.0, name="Au-plasma"),
    # Omega_P far above every relevant frequency: a perfect reflector in practice.
    "ideal": MaterialModel(Kind.PLASMA, 1e4, name="ideal"),
}


def preset(name):
    """Look up a built-in material by (case-insensitive) name."""
    try:
        return PRESETS[name.lower()]
    except KeyError:
        known = ", ".join(m.name for m in PRESETS.values())
        raise ConfigError(f"unknown material {name!r}; known: {known}") from None


@dataclass(frozen=True)
class PlateState:
    """A material at a temperature.

    ``force_normal`` keeps a superconductor in its normal state below T_c,
    which is how the normal-metal reference of a superconducting run is built.
    """

    material: MaterialModel
    temperature: float
    force_normal: bool = False

    @property
    def superconducting(self):
        m = self.material
        return (m.kind is Kind.SUPERCONDUCTOR and not self.force_normal
                and self.temperature < m.t_c)


def eps_minus_one_times_xi2(model, xi):
    """(epsilon(i xi) - 1) * xi**2 in eV**2, finite also as xi -> 0."""
    xi = np.asarray(xi, dtype=float)
    wp2 = model.omega_p ** 2
    if model.kind is Kind.PLASMA:
        return np.full_like(xi, wp2)
    return wp2 * xi / (xi + model.gamma)


def permittivity_imaginary(model, xi, temperature=None):
    """Permittivity epsilon(i xi) at a nonzero imaginary frequency.

    Plasma: ``1 + Op^2 / xi^2``. Drude, and superconductors at nonzero
    Matsubara frequencies: ``1 + Op^2 / (xi (xi + gamma))``. ``temperature``
    is accepted for interface stability; the built-in models ignore it.
    """
    xi_arr = np.asarray(xi, dtype=float)
    if np.any(xi_arr <= 0):
        raise DomainError(
            "permittivity_imaginary needs xi > 0; the zero mode goes through "
            "te_zero_reflection / tm_zero_reflection")
    eps = 1.0 + eps_minus_one_times_xi2(model, xi_arr) / xi_arr ** 2
    return float(eps) if np.ndim(xi) == 0 else eps


def london_depth(model, temperature):
    """London penetration depth lambda_L(T) in nm.

    Two-fluid law ``n_s / n = 1 - (T / T_c)^4`` on top of
    ``lambda_L(0) = hbar c / hbar Omega_P``.
    """
    if model.kind is not Kind.SUPERCONDUCTOR:
        raise DomainError(f"{model.name or model.kind.value} is not a superconductor")
    if temperature < 0:
        raise DomainError("temperature must be >= 0")
    if temperature >= model.t_c:
        raise DomainError(
            f"lambda_L diverges at T >= T_c ({temperature} K >= {model.t_c} K); "
            "treat the plate as normal")
    superfluid = 1.0 - (temperature / model.t_c) ** 4
    return HBAR_C / model.omega_p / np.sqrt(superfluid)


def fresnel_imaginary(epsilon, xi, k_perp):
    """Fresnel coefficients (r_TE, r_TM) of a local half-space at i xi.

    With ``q = sqrt(k^2 + xi^2/(hbar c)^2)`` and
    ``k_m = sqrt(k^2 + eps xi^2/(hbar c)^2)``:
    ``r_TE = (k_m - q)/(k_m + q)``, ``r_TM = (eps q - k_m)/(eps q + k_m)``.
    The numerators are evaluated in a cancellation-free form.
    """
    epsilon = np.asarray(epsilon, dtype=float)
    xi = np.asarray(xi, dtype=float)
    k_perp = np.asarray(k_perp, dtype=float)
    if np.any(epsilon < 1) or np.any(xi < 0) or np.any(k_perp < 0):
        raise DomainError("need epsilon >= 1, xi >= 0, k_perp >= 0")
    if np.any((xi == 0) & (k_perp == 0)):
        raise DomainError("xi and k_perp cannot both vanish")
    kappa2 = (xi / HBAR_C) ** 2
    q = np.sqrt(k_perp ** 2 + kappa2)
    km = np.sqrt(k_perp ** 2 + epsilon * kappa2)
    em1 = epsilon - 1.0
    r_te = em1 * kappa2 / (km + q) ** 2
    r_tm = em1 * ((epsilon + 1.0) * q ** 2 - kappa2) / (epsilon * q + km) ** 2
    if r_te.ndim == 0:
        return float(r_te), float(r_tm)
    return r_te, r_tm


def zero_mode_omega(plate, prescription):
    """Effective plasma energy that sets the TE zero-mode reflection (eV).

    Zero stands for a vanishing coefficient (normal metal, Drude recipe).
    Under the Drude recipe a superconductor reflects like a plasma with
    ``hbar Omega = hbar c / lambda_L(T)``; under the plasma recipe every plate
    uses its own Omega_P whatever its state.
    """
    prescription = Prescription(prescription)
    if prescription is Prescription.PLASMA:
        return plate.material.omega_p
    if plate.superconducting:
        return HBAR_C / london_depth(plate.material, plate.temperature)
    return 0.0


def plasma_zero_te(omega, k_perp):
    """``(sqrt(W^2 + k^2) - k) / (sqrt(W^2 + k^2) + k)`` with W = omega / hbar c."""
    k_perp = np.asarray(k_perp, dtype=float)
    w = omega / HBAR_C
    if np.isinf(w):
        return np.ones_like(k_perp)[()]
    s = np.sqrt(w * w + k_perp ** 2)
    # (s - k)/(s + k) = W^2/(s + k)^2, exact 1 at k = 0 and exact 0 at W = 0
    with np.errstate(invalid="ignore", divide="ignore"):
        r = np.where(s + k_perp > 0, w * w / (s + k_perp) ** 2, 0.0)
    return r[()]


def te_zero_reflection(plate, prescription, k_perp):
    """TE reflection coefficient at zero frequency."""
    if np.any(np.asarray(k_perp) < 0):
        raise DomainError("k_perp must be >= 0")
    return plasma_zero_te(zero_mode_omega(plate, prescription), k_perp)


def tm_zero_reflection(plate):
    """TM reflection at zero frequency: a metal screens static electric fields.

    Returns 0 only for the ``omega_p = 0`` empty half-space.
    """
    return 1.0 if plate.material.omega_p > 0 else 0.0
