"""Changes of Casimir pressure and force between two temperatures.

The superconducting plate enters only through the TE zero mode, so every
delta splits into

* ``te_zero_change``: the TE zero-mode change in the superconducting state
  minus the same change with the plates held normal, and
* the normal-metal change, taken from low-temperature closed forms
  (``perturbative_dFpp`` / ``perturbative_dFps`` and, for the Drude recipe,
  the ``tm_explicit`` term linear in T2 - T1).

``Method.NUMERIC`` instead differences two full Lifshitz evaluations.
"""

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .constants import EV_PER_NM3_TO_PA, EV_PER_NM2_TO_N_PER_M, HBAR_C, K_B, ZETA3
from .errors import CancellationRefusal, ConfigError, PerturbativeValidityError
from .lifshitz import CavityConfig, p0_te_numeric, p0_tm, pressure
from .materials import DEFAULT_GAMMA, Kind, MaterialModel, PlateState, Prescription, zero_mode_omega
from .pfa import SphereGeometry, f0_te_ps, f0_tm_ps, f_ps

__all__ = [
    "Geometry",
    "Setup",
    "Method",
    "DeltaRequest",
    "DeltaResult",
    "DerivedScales",
    "delta_fpp_perturbative",
    "delta_fps_perturbative",
    "delta_pressure",
    "delta_force_ps",
    "evaluate",
]

#: common plasma energy used for Nb and Au in the delta computations (eV)
COMMON_OMEGA_P = 9.0
NB_T_C = 9.2
#: default T2 as a fraction of T_c
T2_FRACTION = 0.99

MAX_THERMAL_RATIO = 0.05
MAX_SKIN_RATIO = 0.25
#: direct differencing is refused below this relative size of the delta ...
CANCELLATION_FLOOR = 1e-10
#: ... or below this multiple of the quadrature tolerance, whichever is larger
CANCELLATION_TOL_FACTOR = 100.0
#: digits lost to cancellation above which a numeric delta is flagged
FLAG_DIGITS = 3.0


class Geometry(enum.Enum):
    PARALLEL = "parallel"
    SPHERE = "sphere"


class Setup(enum.Enum):
    NBNB = "nbnb"
    NBAU = "nbau"


class Method(enum.Enum):
    CLOSED = "closed"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class DerivedScales:
    """Thermal and skin-depth scales of a gap.

    ``t_eff`` (K) solves ``k_B T_eff = hbar c / (2 a)``; ``delta_skin`` (nm) is
    ``hbar c / hbar Omega_P``.
    """

    gap: float
    omega_p: float = COMMON_OMEGA_P

    @property
    def t_eff(self):
        return HBAR_C / (2.0 * self.gap * K_B)

    @property
    def delta_skin(self):
        return HBAR_C / self.omega_p

    @property
    def skin_ratio(self):
        return self.delta_skin / self.gap


@dataclass(frozen=True)
class DeltaRequest:
    """A temperature-change query.

    ``t2`` defaults to ``0.99 * t_c``. Both metals share ``omega_p`` and
    ``gamma``; Nb is the superconductor with critical temperature ``t_c``.
    ``force_normal`` evaluates the same request with the plates held in the
    normal state (a reference, not a physical Nb cavity).
    """

    gap: float
    t1: float
    t2: float | None = None
    geometry: Geometry = Geometry.PARALLEL
    radius: float | None = None
    setup: Setup = Setup.NBNB
    prescription: Prescription = Prescription.DRUDE
    method: Method = Method.CLOSED
    omega_p: float = COMMON_OMEGA_P
    gamma: float = DEFAULT_GAMMA
    t_c: float = NB_T_C
    force_normal: bool = False
    quad_rel_tol: float = 1e-10
    sum_rel_tol: float = 1e-12

    def __post_init__(self):
        for name, typ in (("geometry", Geometry), ("setup", Setup),
                          ("prescription", Prescription), ("method", Method)):
            object.__setattr__(self, name, typ(getattr(self, name)))
        if self.t2 is None:
            object.__setattr__(self, "t2", T2_FRACTION * self.t_c)
        if not self.gap > 0:
            raise ConfigError("gap must be > 0")
        if not self.t1 > 0:
            raise ConfigError("t1 must be > 0")
        if self.t1 > self.t2:
            raise ConfigError(f"need t1 <= t2, got t1 = {self.t1} K, t2 = {self.t2} K")
        if self.t2 > self.t_c:
            raise ConfigError(f"t2 = {self.t2} K exceeds T_c = {self.t_c} K")
        if self.geometry is Geometry.SPHERE:
            if self.radius is None:
                raise ConfigError("sphere geometry needs a radius")
            SphereGeometry(self.radius, self.gap)

    def materials(self):
        nb = MaterialModel(Kind.SUPERCONDUCTOR, self.omega_p, self.gamma, t_c=self.t_c, name="Nb")
        if self.setup is Setup.NBNB:
            return nb, nb
        return nb, MaterialModel(Kind.DRUDE, self.omega_p, self.gamma, name="Au")

    def cavity(self, temperature):
        m1, m2 = self.materials()
        return CavityConfig(self.gap, temperature, m1, m2, self.prescription,
                            quad_rel_tol=self.quad_rel_tol, sum_rel_tol=self.sum_rel_tol,
                            force_normal=self.force_normal)

    @property
    def scales(self):
        return DerivedScales(self.gap, self.omega_p)

    def replace(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class DeltaResult:
    """Signed change ``X(T2) - X(T1)``; Pa for plates, N for the sphere."""

    value: float
    units: str
    breakdown: dict = field(default_factory=dict)
    cancellation_flag: bool = False
    digits_lost: float | None = None


# ---------------------------------------------------------------------------
# closed forms

def _check_perturbative(gap, t2, omega_p):
    thermal = K_B * t2 * gap / HBAR_C
    if thermal >= MAX_THERMAL_RATIO:
        raise PerturbativeValidityError(
            f"k_B T2 a / hbar c = {thermal:.3g} >= {MAX_THERMAL_RATIO}: not a low-temperature point")
    skin = HBAR_C / omega_p / gap
    if skin >= MAX_SKIN_RATIO:
        raise PerturbativeValidityError(f"delta/a = {skin:.3g} >= {MAX_SKIN_RATIO}")
    return skin


def delta_fpp_perturbative(gap, t1, t2, omega_p=COMMON_OMEGA_P):
    """Low-temperature change of the normal-metal plasma free-energy force, Pa.

    Returns ``-D1 * D2`` with ``D1 = pi^2 k_B^4 (T2^4 - T1^4) / (45 (hbar c)^3)``
    and ``D2 = 1 + (90 zeta(3) / pi^3) (delta/a) T_eff / (T1 + T2)
    (1 + T1 T2 / (T1^2 + T2^2))``. The pressure change is minus this.
    """
    d_over_a = _check_perturbative(gap, t2, omega_p)
    t_eff = DerivedScales(gap, omega_p).t_eff
    kt1, kt2 = K_B * t1, K_B * t2
    d1 = np.pi ** 2 * (kt2 ** 4 - kt1 ** 4) / (45.0 * HBAR_C ** 3) * EV_PER_NM3_TO_PA
    d2 = 1.0 + (90.0 * ZETA3 / np.pi ** 3) * d_over_a * t_eff / (t1 + t2) * (
        1.0 + t1 * t2 / (t1 ** 2 + t2 ** 2))
    return -d1 * d2


def fps_leading(t1, t2):
    """``zeta(3) k_B^3 (T2 - T1)(T1^2 + T2^2) / (hbar c)^2`` in N/m."""
    return (ZETA3 * K_B ** 3 * (t2 - t1) * (t1 ** 2 + t2 ** 2) / HBAR_C ** 2
            * EV_PER_NM2_TO_N_PER_M)


def delta_fps_perturbative(gap, radius, t1, t2, omega_p=COMMON_OMEGA_P):
    """Low-temperature plasma change of the sphere-plate force in N.

    ``R * D1 * D2`` with ``D1`` from :func:`fps_leading` and
    ``D2 = (1 + T1 T2/(T1^2 + T2^2))(1 + 2 d/a)
    - pi^3/(45 zeta(3)) (T1 + T2)/T_eff (1 + 4 d/a)``.
    ``radius`` is in um.
    """
    d_over_a = _check_perturbative(gap, t2, omega_p)
    t_eff = DerivedScales(gap, omega_p).t_eff
    d2 = ((1.0 + t1 * t2 / (t1 ** 2 + t2 ** 2)) * (1.0 + 2.0 * d_over_a)
          - np.pi ** 3 / (45.0 * ZETA3) * (t1 + t2) / t_eff * (1.0 + 4.0 * d_over_a))
    return radius * 1e-6 * fps_leading(t1, t2) * d2


def _tm_explicit_pp(req):
    """Drude explicit-T term of the plate delta, Pa."""
    x = _check_perturbative(req.gap, req.t2, req.omega_p)
    return -(p0_tm(req.gap, req.t2) - p0_tm(req.gap, req.t1)) * (1.0 - 6.0 * x + 24.0 * x * x)


def _tm_explicit_ps(req):
    """Drude explicit-T term of the sphere delta, N."""
    x = _check_perturbative(req.gap, req.t2, req.omega_p)
    geo = SphereGeometry(req.radius, req.gap)
    return -(f0_tm_ps(geo, req.t2) - f0_tm_ps(geo, req.t1)) * (1.0 - 4.0 * x + 12.0 * x * x)


def _zero_te_change(req, term):
    """TE zero-mode change in the actual state minus that of the normal state.

    ``term(T, omega1, omega2)`` evaluates the TE zero mode for given
    effective plasma energies.
    """
    m1, m2 = req.materials()

    def change(force_normal):
        vals = []
        for t in (req.t2, req.t1):
            w1 = zero_mode_omega(PlateState(m1, t, force_normal), req.prescription)
            w2 = zero_mode_omega(PlateState(m2, t, force_normal), req.prescription)
            vals.append(term(t, w1, w2))
        return vals[0] - vals[1]

    return change(req.force_normal) - change(True)


def _closed_form(req):
    if req.geometry is Geometry.PARALLEL:
        def te(t, w1, w2):
            return p0_te_numeric(req.gap, t, w1, w2, rel_tol=req.quad_rel_tol)

        parts = {"te_zero_change": _zero_te_change(req, te),
                 "perturbative_dFpp": -delta_fpp_perturbative(req.gap, req.t1, req.t2, req.omega_p)}
        if req.prescription is Prescription.DRUDE:
            parts["tm_explicit"] = _tm_explicit_pp(req)
        units = "Pa"
    else:
        geo = SphereGeometry(req.radius, req.gap)

        def te(t, w1, w2):
            return f0_te_ps(geo, t, w1, w2, rel_tol=req.quad_rel_tol)

        parts = {"te_zero_change": _zero_te_change(req, te),
                 "perturbative_dFps": delta_fps_perturbative(
                     req.gap, req.radius, req.t1, req.t2, req.omega_p)}
        if req.prescription is Prescription.DRUDE:
            parts["tm_explicit"] = _tm_explicit_ps(req)
        units = "N"
    return DeltaResult(math.fsum(parts.values()), units, parts)


# ---------------------------------------------------------------------------
# direct differencing

def cancellation_floor(quad_rel_tol):
    return max(CANCELLATION_FLOOR, CANCELLATION_TOL_FACTOR * quad_rel_tol)


def _numeric(req):
    if req.geometry is Geometry.PARALLEL:
        def evaluate_at(t):
            b = pressure(req.cavity(t))
            return b, (b.p0_te, b.p0_tm, b.p1)
        units = "Pa"
    else:
        geo = SphereGeometry(req.radius, req.gap)

        def evaluate_at(t):
            b = f_ps(geo, req.cavity(t))
            return b, (b.f0_te, b.f0_tm, b.f1)
        units = "N"

    try:
        predicted = _closed_form(req).value
    except PerturbativeValidityError:
        predicted = None
    low, low_parts = evaluate_at(req.t1)
    floor = cancellation_floor(req.quad_rel_tol)
    if predicted is not None and abs(predicted) < floor * abs(low.total):
        raise CancellationRefusal(
            f"expected |delta|/total = {abs(predicted) / abs(low.total):.2e} is below the "
            f"resolvable floor {floor:.0e}; use the closed form")
    high, high_parts = evaluate_at(req.t2)
    names = ("zero_te", "zero_tm", "nonzero")
    parts = {n: h - l for n, h, l in zip(names, high_parts, low_parts)}
    value = math.fsum(parts.values())
    digits = math.log10(abs(low.total) / abs(value)) if value else math.inf
    return DeltaResult(value, units, parts, cancellation_flag=digits >= FLAG_DIGITS,
                       digits_lost=digits)


def _dispatch(req):
    units = "Pa" if req.geometry is Geometry.PARALLEL else "N"
    if req.t1 == req.t2:
        return DeltaResult(0.0, units, {})
    if req.method is Method.CLOSED:
        return _closed_form(req)
    return _numeric(req)


def delta_pressure(request):
    """Pressure change ``P(T2) - P(T1)`` between parallel plates, Pa."""
    if request.geometry is not Geometry.PARALLEL:
        raise ConfigError("delta_pressure needs the parallel-plate geometry")
    return _dispatch(request)


def delta_force_ps(request):
    """Sphere-plate force change ``F(T2) - F(T1)``, N."""
    if request.geometry is not Geometry.SPHERE:
        raise ConfigError("delta_force_ps needs the sphere-plate geometry")
    return _dispatch(request)


def evaluate(request):
    """Route a request to :func:`delta_pressure` or :func:`delta_force_ps`."""
    return _dispatch(request)
