"""Plane-parallel Casimir pressure from the Lifshitz formula.

The pressure is split into the TE and TM zero modes and the sum over the
nonzero Matsubara frequencies. Every transverse-momentum integral is written
in the scaled variable ``y = 2 a q`` (after the azimuthal integration), so a
Matsubara term reads::

    P_l = k_B T / (8 pi a^3) * int_{y_l}^{inf} y^2 sum_alpha x_alpha / (1 - x_alpha) dy

with ``x_alpha = r1 r2 exp(-y)`` and ``y_l = 2 a xi_l / (hbar c)``. Positive
pressure means attraction.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .constants import EV_PER_NM3_TO_PA, HBAR_C, K_B, Y_MAX, ZETA3
from .errors import ConfigError, ExpansionValidityError, NonConvergenceError
from .materials import (
    MaterialModel,
    PlateState,
    Prescription,
    eps_minus_one_times_xi2,
    tm_zero_reflection,
    zero_mode_omega,
)
from .quadrature import integrate_batch

__all__ = [
    "CavityConfig",
    "PressureBreakdown",
    "matsubara",
    "characteristic_energy",
    "p0_tm",
    "p0_te_numeric",
    "p0_te_expansion",
    "p1",
    "pressure",
]

MIN_GAP_NM = 10.0
EXPANSION_MAX_RATIO = 0.2


@dataclass(frozen=True)
class CavityConfig:
    """One evaluation point of the plane-parallel cavity.

    The two plates are given as materials; their state (normal or
    superconducting) follows from ``temperature`` unless ``force_normal``
    pins every plate to the normal state.
    """

    gap: float
    temperature: float
    plate1: MaterialModel
    plate2: MaterialModel
    prescription: Prescription = Prescription.DRUDE
    quad_rel_tol: float = 1e-10
    sum_rel_tol: float = 1e-12
    l_max_cap: int = 1_000_000
    force_normal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "prescription", Prescription(self.prescription))
        if not self.gap > 0:
            raise ConfigError(f"gap must be > 0 nm, got {self.gap}")
        if self.gap < MIN_GAP_NM:
            raise ConfigError(
                f"gap {self.gap} nm is below {MIN_GAP_NM} nm where local optics is not credible")
        if not self.temperature > 0:
            raise ConfigError(f"temperature must be > 0 K, got {self.temperature}")
        for name in ("quad_rel_tol", "sum_rel_tol"):
            tol = getattr(self, name)
            if not 0 < tol <= 1e-4:
                raise ConfigError(f"{name} must lie in (0, 1e-4], got {tol}")
        if int(self.l_max_cap) < 1:
            raise ConfigError("l_max_cap must be >= 1")

    @property
    def state1(self):
        return PlateState(self.plate1, self.temperature, self.force_normal)

    @property
    def state2(self):
        return PlateState(self.plate2, self.temperature, self.force_normal)

    def zero_mode_omegas(self):
        """Effective TE zero-mode plasma energies of both plates (eV)."""
        return (zero_mode_omega(self.state1, self.prescription),
                zero_mode_omega(self.state2, self.prescription))

    def replace(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class PressureBreakdown:
    """Zero-mode / nonzero-mode split of the pressure, all in Pa."""

    p0_te: float
    p0_tm: float
    p1: float
    total: float = field(init=False)
    l_used: int = 0
    max_quad_error: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "total", self.p0_te + self.p0_tm + self.p1)


def matsubara(temperature, l):
    """Matsubara energy ``hbar xi_l = 2 pi k_B T l`` in eV."""
    if not temperature > 0:
        raise ConfigError("temperature must be > 0")
    if np.any(np.asarray(l) < 0):
        raise ConfigError("l must be >= 0")
    return 2.0 * np.pi * K_B * temperature * l


def characteristic_energy(gap):
    """Cavity energy ``hbar omega_c = hbar c / (2 a)`` in eV (diagnostic only)."""
    return HBAR_C / (2.0 * gap)


def _pressure_prefactor(gap, temperature):
    """k_B T / (8 pi a^3) in Pa."""
    return K_B * temperature / (8.0 * np.pi * gap ** 3) * EV_PER_NM3_TO_PA


# ---------------------------------------------------------------------------
# scaled integrands

def _plasma_r(w, y):
    """Zero-frequency plasma-form TE coefficient and 1 - r at scaled W = w."""
    if np.isinf(w):
        return np.ones_like(y), np.zeros_like(y)
    s = np.sqrt(w * w + y * y)
    return w * w / (s + y) ** 2, 2.0 * y / (s + y)


def _zero_te_x(y, w1, w2):
    """``x = r1 r2 e^{-y}`` and ``1 - x`` for the TE zero mode, both accurate."""
    r1, om1 = _plasma_r(w1, y)
    r2, om2 = _plasma_r(w2, y)
    rr = r1 * r2
    one_minus_rr = om1 + r1 * om2
    x = rr * np.exp(-y)
    return x, one_minus_rr - rr * np.expm1(-y)


def _pressure_kernel(x, one_minus_x, y):
    with np.errstate(invalid="ignore", divide="ignore"):
        out = y * y * x / one_minus_x
    return np.where(x > 0, out, 0.0)


def _force_kernel(x, one_minus_x, y):
    # -log(1 - x) via log1p keeps precision where x is tiny
    return np.where(x > 0, -y * np.log1p(-x), 0.0)


def zero_te_integral(gap, omega1, omega2, rel_tol=1e-10, kind="pressure"):
    """Dimensionless l = 0 TE integral and its error estimate.

    ``kind='pressure'`` gives ``int y^2 x/(1-x)``; ``'force'`` gives
    ``int -y log(1-x)``. Returns exactly 0 when either coefficient vanishes.
    """
    if omega1 < 0 or omega2 < 0:
        raise ConfigError("omega_eff must be >= 0")
    if omega1 == 0 or omega2 == 0:
        return 0.0, 0.0
    w1 = 2.0 * gap * omega1 / HBAR_C
    w2 = 2.0 * gap * omega2 / HBAR_C
    kernel = _pressure_kernel if kind == "pressure" else _force_kernel

    def f(y, rows):
        x, omx = _zero_te_x(y, w1, w2)
        return kernel(x, omx, y)

    val, err = integrate_batch(f, [0.0], [Y_MAX], rel_tol=rel_tol, n_init=8)
    return float(val[0]), float(err[0])


def zero_tm_integral(rel_tol=1e-10, kind="pressure"):
    """Numeric l = 0 TM integral with r = 1 (oracle for the zeta(3) forms)."""
    if kind == "pressure":
        def f(y, rows):
            return y * y / np.expm1(y)
    else:
        def f(y, rows):
            return -y * np.log(-np.expm1(-y))
    val, err = integrate_batch(f, [0.0], [Y_MAX], rel_tol=rel_tol, n_init=8)
    return float(val[0]), float(err[0])


def _nonzero_kernel_factory(y_l, em1_1, em1_2, kind):
    """Vectorised integrand over Matsubara rows for l >= 1."""
    kernel = _pressure_kernel if kind == "pressure" else _force_kernel
    yl2 = y_l ** 2

    def f(y, rows):
        yl2_r = yl2[rows][:, None]
        total = np.zeros_like(y)
        e = np.exp(-y)
        r_te = np.ones_like(y)
        r_tm = np.ones_like(y)
        for em1 in (em1_1, em1_2):
            em1_r = em1[rows][:, None]
            w2 = em1_r * yl2_r
            ym = np.sqrt(y * y + w2)
            r_te = r_te * (w2 / (ym + y) ** 2)
            eps = 1.0 + em1_r
            r_tm = r_tm * (em1_r * ((eps + 1.0) * y * y - yl2_r) / (eps * y + ym) ** 2)
        for rr in (r_te, r_tm):
            x = rr * e
            omx = (1.0 - rr) - rr * np.expm1(-y)
            total += kernel(x, omx, y)
        return total

    return f


def matsubara_sum(config, kind="pressure"):
    """Sum of the dimensionless l >= 1 integrals.

    Terms are generated in ascending-l blocks; the sum stops once three
    consecutive terms fall below ``sum_rel_tol`` times the running total.
    The reported value is the exactly rounded (``math.fsum``) sum of the
    accepted terms, so it does not depend on the block size.

    Returns
    -------
    value : float
    l_used : int
        Highest Matsubara index included.
    error : float
        Sum of the quadrature error estimates.
    """
    a, t = config.gap, config.temperature
    terms, errs = [], []
    running = 0.0
    quiet = 0
    l_next = 1
    block = 128
    cap = int(config.l_max_cap)
    while True:
        if l_next > cap:
            last = terms[-1] if terms else 0.0
            raise NonConvergenceError(
                f"Matsubara sum not converged after l = {cap}",
                partial_sum=math.fsum(terms), bound=abs(last), l_reached=cap)
        ls = np.arange(l_next, min(l_next + block, cap + 1), dtype=float)
        xi = 2.0 * np.pi * K_B * t * ls
        y_l = 2.0 * a * xi / HBAR_C
        em1_1 = eps_minus_one_times_xi2(config.plate1, xi) / xi ** 2
        em1_2 = eps_minus_one_times_xi2(config.plate2, xi) / xi ** 2
        f = _nonzero_kernel_factory(y_l, em1_1, em1_2, kind)
        vals, verr = integrate_batch(f, y_l, np.full_like(y_l, Y_MAX),
                                     rel_tol=config.quad_rel_tol)
        for i, v in enumerate(vals):
            v = float(v)
            terms.append(v)
            errs.append(float(verr[i]))
            running += v
            if abs(v) <= config.sum_rel_tol * abs(running):
                quiet += 1
                if quiet == 3:
                    return math.fsum(terms), int(ls[i]), math.fsum(errs)
            else:
                quiet = 0
        l_next = int(ls[-1]) + 1
        block = min(block * 2, 8192)


# ---------------------------------------------------------------------------
# public pressure terms

def p0_tm(gap, temperature, numeric=False, *, rel_tol=1e-10, zero_mode_weight=0.5):
    """TM zero-mode pressure ``k_B T zeta(3) / (8 pi a^3)`` in Pa.

    With ``numeric=True`` the r = 1 integral is evaluated by quadrature
    instead of through zeta(3).
    """
    if not gap > 0 or not temperature > 0:
        raise ConfigError("gap and temperature must be > 0")
    integral = zero_tm_integral(rel_tol)[0] if numeric else 2.0 * ZETA3
    return zero_mode_weight * _pressure_prefactor(gap, temperature) * integral


def p0_te_numeric(gap, temperature, omega_eff, omega_eff2=None, *, rel_tol=1e-10,
                  zero_mode_weight=0.5):
    """TE zero-mode pressure in Pa for plasma-form zero-frequency reflection.

    Parameters
    ----------
    omega_eff : float
        Effective plasma energy (eV) of plate 1: hbar Omega_P under the plasma
        recipe, hbar c / lambda_L(T) for a superconductor under the Drude
        recipe, 0 for a normal metal under the Drude recipe. ``inf`` gives
        a perfect reflector.
    omega_eff2 : float, optional
        Same for plate 2; defaults to ``omega_eff``.
    """
    if not gap > 0 or not temperature > 0:
        raise ConfigError("gap and temperature must be > 0")
    if omega_eff2 is None:
        omega_eff2 = omega_eff
    integral, _ = zero_te_integral(gap, omega_eff, omega_eff2, rel_tol)
    return zero_mode_weight * _pressure_prefactor(gap, temperature) * integral


def p0_te_expansion(gap, temperature, delta_eff):
    """Small skin-depth expansion of the TE zero mode in Pa.

    ``k_B T zeta(3)/(8 pi a^3) (1 - 6 d/a + 24 d^2/a^2)`` with ``d = delta_eff``
    in nm. Refuses ``d/a >= 0.2``; use :func:`p0_te_numeric` there.
    """
    ratio = delta_eff / gap
    if ratio < 0:
        raise ConfigError("delta_eff must be >= 0")
    if ratio >= EXPANSION_MAX_RATIO:
        raise ExpansionValidityError(
            f"delta/a = {ratio:.3g} >= {EXPANSION_MAX_RATIO}: expansion not valid, "
            "use p0_te_numeric")
    return p0_tm(gap, temperature) * (1.0 - 6.0 * ratio + 24.0 * ratio ** 2)


def p1(config):
    """Nonzero Matsubara contribution.

    Returns
    -------
    value : float
        Pressure in Pa.
    l_used : int
    max_quad_error : float
        Accumulated quadrature error estimate in Pa.
    """
    pref = _pressure_prefactor(config.gap, config.temperature)
    try:
        value, l_used, err = matsubara_sum(config, "pressure")
    except NonConvergenceError as exc:
        exc.partial_sum *= pref
        exc.bound *= pref
        raise
    return pref * value, l_used, pref * err


def pressure(config, *, zero_mode_weight=0.5):
    """Full Casimir pressure with its three-term breakdown."""
    w1, w2 = config.zero_mode_omegas()
    pref = _pressure_prefactor(config.gap, config.temperature)
    te_int, te_err = zero_te_integral(config.gap, w1, w2, config.quad_rel_tol)
    p0te = zero_mode_weight * pref * te_int
    tm_product = tm_zero_reflection(config.state1) * tm_zero_reflection(config.state2)
    p0tm = p0_tm(config.gap, config.temperature,
                 zero_mode_weight=zero_mode_weight) if tm_product else 0.0
    nonzero, l_used, err = p1(config)
    return PressureBreakdown(p0te, p0tm, nonzero, l_used=l_used,
                             max_quad_error=err + zero_mode_weight * pref * te_err)
