"""Acceptance checks shared by ``supercasimir validate`` and the test suite.

Each check computes a measured value, compares it with an expected value at
a fixed tolerance and reports pass/fail. Reference values are either
independent closed forms (ideal-mirror limits, zeta(3) integrals) or fixed
reference numbers with the tolerance they are expected to meet.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import EV_PER_NM3_TO_PA, EV_PER_NM_TO_N, HBAR_C
from .deltas import DeltaRequest, Geometry, Method, Setup, evaluate
from .figures import figure_spec, run_sweep
from .lifshitz import CavityConfig, matsubara, p0_te_expansion, p0_te_numeric, p0_tm, pressure
from .materials import Kind, MaterialModel, PlateState, Prescription, preset, te_zero_reflection
from .pfa import SphereGeometry, f_ps, sphere_force

__all__ = ["CheckResult", "Criterion", "CRITERIA", "run", "format_table"]


@dataclass
class CheckResult:
    measured: object
    expected: object
    tolerance: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class Criterion:
    id: str
    title: str
    check: object

    def run(self):
        return self.check()


def _rel(x, ref):
    return abs(x / ref - 1.0)


def plasma_rte0():
    plate = PlateState(MaterialModel(Kind.PLASMA, 9.0), 300.0)
    r = float(te_zero_reflection(plate, Prescription.PLASMA, 1.0 / (2 * 200.0)))
    return CheckResult(r, 0.90, "abs 0.005", abs(r - 0.90) <= 0.005)


def matsubara_scale():
    xi1 = matsubara(300.0, 1)
    return CheckResult(xi1, "[0.155, 0.165] eV", "range", 0.155 <= xi1 <= 0.165)


def zeta_tm():
    rng = np.random.default_rng(3)
    worst = 0.0
    for a, t in zip(rng.uniform(100, 5000, 10), rng.uniform(1, 300, 10)):
        worst = max(worst, _rel(p0_tm(a, t, numeric=True), p0_tm(a, t)))
    return CheckResult(worst, 0.0, "rel 1e-8 (worst of 10)", worst <= 1e-8)


def te_expansion():
    a, t = 1000.0, 300.0
    devs = {}
    ok = True
    for x in (0.01, 0.05, 0.1, 0.15):
        omega = HBAR_C / (x * a)
        num = p0_te_numeric(a, t, omega)
        dev = _rel(num, p0_te_expansion(a, t, x * a))
        devs[x] = dev
        ok &= dev <= 5 * x ** 3
    shown = ", ".join(f"{x}: {d:.3g} (limit {5 * x ** 3:.3g})" for x, d in devs.items())
    return CheckResult(devs, "rel dev <= 5 (d/a)^3", "per point", ok, shown)


def ideal_mirror():
    ideal = preset("ideal")
    cfg = CavityConfig(500.0, 1.0, ideal, ideal, Prescription.PLASMA)
    p = pressure(cfg).total
    p_ref = np.pi ** 2 * HBAR_C / (240 * 500.0 ** 4) * EV_PER_NM3_TO_PA
    f = sphere_force(200.0, cfg).total
    f_ref = np.pi ** 3 * HBAR_C * 200e3 / (360 * 500.0 ** 3) * EV_PER_NM_TO_N
    ok = _rel(p, p_ref) <= 5e-3 and _rel(f, f_ref) <= 5e-3
    return CheckResult((p, f), (p_ref, f_ref), "rel 0.5%", ok,
                       f"P {p:.4e} vs {p_ref:.4e} Pa; F {f:.4e} vs {f_ref:.4e} N")


def plasma_dp():
    v = evaluate(DeltaRequest(gap=100.0, t1=5.0, t2=9.2, prescription="plasma")).value
    return CheckResult(v, 1.4e-9, "rel 20%", _rel(v, 1.4e-9) <= 0.2)


def _sphere(**kw):
    return DeltaRequest(gap=150.0, t1=5.0, geometry=Geometry.SPHERE, radius=200.0, **kw)


def plasma_dfps():
    v = evaluate(_sphere(prescription="plasma")).value
    return CheckResult(v, 5.3e-19, "rel 20%", _rel(v, 5.3e-19) <= 0.2)


def drude_nbnb_dfps():
    v = evaluate(_sphere(setup="nbnb")).value
    return CheckResult(v, -0.8e-13, "rel 25%", _rel(v, -0.8e-13) <= 0.25)


def large_separation_ratio():
    au = preset("au")
    p_dr = pressure(CavityConfig(50_000.0, 300.0, au, au, "drude")).total
    p_pl = pressure(CavityConfig(50_000.0, 300.0, au, au, "plasma")).total
    ratio = p_pl / p_dr
    return CheckResult(ratio, 2.0, "rel 5%", _rel(ratio, 2.0) <= 0.05)


def drude_numeric_crosscheck():
    devs = {}
    for a in (150.0, 300.0, 500.0):
        req = DeltaRequest(gap=a, t1=5.0, setup="nbau")
        closed = evaluate(req).value
        numeric = evaluate(req.replace(method=Method.NUMERIC)).value
        devs[a] = numeric / closed - 1.0
    ok = all(abs(d) <= 0.05 for d in devs.values())
    shown = ", ".join(f"a={a:g} nm: {d:+.3f}" for a, d in devs.items())
    return CheckResult(devs, 0.0, "rel 5% each", ok, shown)


def magnitude_gap():
    ratios = {}
    for geometry in (Geometry.PARALLEL, Geometry.SPHERE):
        kw = dict(gap=150.0, t1=5.0, geometry=geometry,
                  radius=200.0 if geometry is Geometry.SPHERE else None)
        plasma = evaluate(DeltaRequest(prescription="plasma", **kw)).value
        for setup in (Setup.NBNB, Setup.NBAU):
            drude = evaluate(DeltaRequest(setup=setup, **kw)).value
            ratios[(geometry.value, setup.value)] = abs(drude / plasma)
    ok = all(r >= 1e5 for (g, s), r in ratios.items() if s == "nbnb")
    shown = ", ".join(f"{g}/{s}: {r:.3g}" for (g, s), r in ratios.items())
    return CheckResult(ratios, ">= 1e5 (Nb-Nb)", "ratio", ok, shown)


def figure_properties():
    problems = []
    for fig in (1, 2, 3, 4):
        report = run_sweep(figure_spec(fig))
        x, nbnb, nbau = report.column(0), report.column(1), report.column(2)
        if not (np.all(nbnb < 0) and np.all(nbau < 0)):
            problems.append(f"fig{fig}: non-negative Drude delta")
        bad = x[np.abs(nbnb) < np.abs(nbau)]
        if bad.size:
            problems.append(f"fig{fig}: |NbNb| < |NbAu| at {bad.size} rows "
                            f"({bad.min():g}..{bad.max():g})")
        if fig in (2, 4):
            for name, col in (("NbNb", nbnb), ("NbAu", nbau)):
                if not np.all(np.diff(np.abs(col)) < 0):
                    problems.append(f"fig{fig}: |{name}| not decreasing in a")
    return CheckResult(len(problems), 0, "no violations", not problems,
                       "; ".join(problems) or "all rows satisfy sign, ordering, monotonicity")


def pfa_derivative():
    rng = np.random.default_rng(13)
    choices = [("au", "drude"), ("au", "plasma"), ("nb", "drude"), ("nb", "plasma")]
    worst = 0.0
    for _ in range(5):
        a = float(rng.uniform(150, 800))
        t = float(rng.uniform(4, 300))
        name, presc = choices[rng.integers(len(choices))]
        m = preset(name)
        cfg = CavityConfig(a, t, m, m, presc)
        h = a * 1e-4
        f_hi = sphere_force(200.0, cfg.replace(gap=a + h)).total
        f_lo = sphere_force(200.0, cfg.replace(gap=a - h)).total
        dfda = (f_hi - f_lo) / (2 * h)  # N / nm
        target = 2 * np.pi * 200e3 * pressure(cfg).total / EV_PER_NM3_TO_PA * EV_PER_NM_TO_N
        worst = max(worst, abs(dfda + target) / target)
    return CheckResult(worst, 0.0, "rel 1e-4 (worst of 5)", worst < 1e-4)


def plasma_neutrality():
    same = True
    nb, au = preset("nb"), preset("au")
    for m2 in (nb, au):
        cfg = CavityConfig(150.0, 5.0, nb, m2, Prescription.PLASMA)
        normal = cfg.replace(force_normal=True)
        same &= pressure(cfg) == pressure(normal)
        geo = SphereGeometry(200.0, 150.0)
        same &= f_ps(geo, cfg) == f_ps(geo, normal)
    return CheckResult(same, True, "bitwise", bool(same))


def _figure_value(fig, column, expected, tol):
    def check():
        report = run_sweep(figure_spec(fig))
        row = next(r for r in report.rows if math.isclose(r[0], 5.0))
        v = row[column]
        return CheckResult(v, expected, f"rel {tol:.0%}", _rel(v, expected) <= tol)
    return check


CRITERIA = [
    Criterion("plasma-rte0", "1. plasma TE zero reflection at a = 200 nm", plasma_rte0),
    Criterion("matsubara-scale", "2. first Matsubara energy at 300 K", matsubara_scale),
    Criterion("zeta-tm", "3. TM zero mode quadrature vs zeta(3)", zeta_tm),
    Criterion("te-expansion", "4. TE zero mode vs small-skin-depth expansion", te_expansion),
    Criterion("ideal-mirror", "5. ideal-mirror pressure and PFA force", ideal_mirror),
    Criterion("plasma-dp", "6. plasma dP, 100 nm, 5 -> 9.2 K", plasma_dp),
    Criterion("plasma-dfps", "7. plasma dF sphere-plate", plasma_dfps),
    Criterion("drude-nbnb-dfps", "8. Drude Nb-Nb dF sphere-plate", drude_nbnb_dfps),
    Criterion("large-sep-ratio", "9. plasma/Drude ratio at 50 um, 300 K", large_separation_ratio),
    Criterion("drude-numeric", "10. Drude Nb-Au closed form vs differencing",
              drude_numeric_crosscheck),
    Criterion("magnitude-gap", "11. |dDrude| / |dplasma| >= 1e5", magnitude_gap),
    Criterion("figure-properties", "12. figure sign / ordering / monotonicity",
              figure_properties),
    Criterion("pfa-derivative", "13. dF/da = -2 pi R P", pfa_derivative),
    Criterion("plasma-neutrality", "14. plasma recipe blind to superconductivity",
              plasma_neutrality),
    Criterion("fig1-nbau-value", "Fig-1 Nb-Au value at T1 = 5 K (mPa)",
              _figure_value(1, 2, -0.52, 0.05)),
    Criterion("fig3-nbau-value", "Fig-3 Nb-Au value at T1 = 5 K (1e-10 N/m)",
              _figure_value(3, 2, -2.6, 0.05)),
]


def run(only=None):
    """Run the selected criteria; returns a list of ``(criterion, result)``."""
    selected = [c for c in CRITERIA if not only or c.id in only]
    unknown = set(only or ()) - {c.id for c in CRITERIA}
    if unknown:
        raise KeyError(f"unknown criteria: {', '.join(sorted(unknown))}")
    return [(c, c.run()) for c in selected]


def _short(v):
    if isinstance(v, float):
        return f"{v:.4g}"
    if isinstance(v, tuple):
        return "(" + ", ".join(_short(x) for x in v) + ")"
    if isinstance(v, dict):
        return f"{len(v)} values"
    return str(v)


def format_table(outcomes):
    lines = []
    for c, r in outcomes:
        status = "PASS" if r.passed else "FAIL"
        line = (f"{status}  {c.id:<18} measured={_short(r.measured)} "
                f"expected={_short(r.expected)} tol={r.tolerance}")
        if r.detail:
            line += f"  [{r.detail}]"
        lines.append(line)
    return "\n".join(lines)
