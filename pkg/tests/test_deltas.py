import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supercasimir.constants import K_B, ZETA3
from supercasimir.deltas import (
    DeltaRequest,
    DerivedScales,
    Geometry,
    Method,
    Setup,
    delta_force_ps,
    delta_fpp_perturbative,
    delta_pressure,
    evaluate,
    fps_leading,
)
from supercasimir.errors import CancellationRefusal, ConfigError, PerturbativeValidityError
from supercasimir.lifshitz import p0_tm
from supercasimir.materials import Prescription


def sphere(**kw):
    return DeltaRequest(gap=150.0, t1=5.0, geometry=Geometry.SPHERE, radius=200.0, **kw)


def test_plasma_plate_example():
    v = delta_pressure(DeltaRequest(gap=100.0, t1=5.0, t2=9.2, prescription="plasma")).value
    assert v == pytest.approx(1.4e-9, rel=0.2)


def test_plasma_sphere_example():
    assert evaluate(sphere(prescription="plasma")).value == pytest.approx(5.3e-19, rel=0.2)


def test_drude_nbnb_sphere_example():
    assert delta_force_ps(sphere(setup="nbnb")).value == pytest.approx(-0.8e-13, rel=0.25)


def test_fig1_and_fig3_nbau_values():
    plate = evaluate(DeltaRequest(gap=150.0, t1=5.0, setup="nbau")).value
    assert plate * 1e3 == pytest.approx(-0.52, rel=0.05)
    ball = evaluate(sphere(setup="nbau")).value
    assert ball / 2e-4 / 1e-10 == pytest.approx(-2.6, rel=0.05)


def test_derived_scales():
    s = DerivedScales(150.0, 9.0)
    assert s.delta_skin == pytest.approx(21.925, rel=1e-4)
    assert s.skin_ratio == pytest.approx(s.delta_skin / 150.0)


def test_fps_leading_formula():
    # zeta(3) (k T)^3 terms, checked at T1 = 0 against the closed form in eV/nm^2
    from supercasimir.constants import EV_PER_NM2_TO_N_PER_M, HBAR_C
    got = fps_leading(0.0, 8.0)
    ref = ZETA3 * (K_B * 8.0) ** 3 / HBAR_C ** 2 * EV_PER_NM2_TO_N_PER_M
    assert got == pytest.approx(ref, rel=1e-14)


def test_plate_tm_explicit_term_is_tm_zero_mode_change():
    req = DeltaRequest(gap=150.0, t1=5.0, setup="nbau")
    x = 197.3269804 / 9.0 / 150.0
    dtm = p0_tm(150.0, req.t2) - p0_tm(150.0, 5.0)
    r = evaluate(req)
    assert r.breakdown["tm_explicit"] == pytest.approx(-dtm * (1 - 6 * x + 24 * x * x), rel=1e-6)


@settings(max_examples=20, deadline=None)
@given(st.floats(100.0, 600.0), st.floats(1.0, 8.0),
       st.sampled_from(["parallel", "sphere"]), st.sampled_from(["nbnb", "nbau"]))
def test_sign_law(gap, t1, geometry, setup):
    kw = dict(gap=gap, t1=t1, geometry=geometry, setup=setup,
              radius=200.0 if geometry == "sphere" else None)
    assert evaluate(DeltaRequest(prescription="drude", **kw)).value < 0
    assert evaluate(DeltaRequest(prescription="plasma", **kw)).value > 0


@pytest.mark.parametrize("geometry", ["parallel", "sphere"])
def test_ordering_at_reference_point(geometry):
    kw = dict(gap=150.0, t1=5.0, geometry=geometry,
              radius=200.0 if geometry == "sphere" else None)
    nbnb = evaluate(DeltaRequest(setup="nbnb", **kw)).value
    nbau = evaluate(DeltaRequest(setup="nbau", **kw)).value
    plasma = evaluate(DeltaRequest(prescription="plasma", **kw)).value
    assert nbnb < nbau < 0 < plasma
    assert abs(nbnb / plasma) >= 1e5


@pytest.mark.parametrize("setup", ["nbnb", "nbau"])
@pytest.mark.parametrize("geometry", ["parallel", "sphere"])
def test_plasma_blind_to_superconductivity(setup, geometry):
    req = DeltaRequest(gap=150.0, t1=5.0, geometry=geometry, setup=setup, prescription="plasma",
                       radius=200.0 if geometry == "sphere" else None)
    a = evaluate(req)
    b = evaluate(req.replace(force_normal=True))
    assert a.value == b.value
    assert a.breakdown["te_zero_change"] == 0.0


def test_nbau_drude_te_change_vanishes():
    # the normal Au plate has no TE zero mode under the Drude recipe
    r = evaluate(DeltaRequest(gap=150.0, t1=5.0, setup="nbau"))
    assert r.breakdown["te_zero_change"] == 0.0
    r = evaluate(DeltaRequest(gap=150.0, t1=5.0, setup="nbnb"))
    assert r.breakdown["te_zero_change"] < 0


def test_breakdown_sums_to_value():
    for req in (DeltaRequest(gap=200.0, t1=3.0), sphere(setup="nbau")):
        r = evaluate(req)
        assert r.value == math.fsum(r.breakdown.values())


def test_equal_temperatures_give_zero():
    r = evaluate(DeltaRequest(gap=150.0, t1=5.0, t2=5.0))
    assert r.value == 0.0


@pytest.mark.parametrize("kw", [dict(t1=6.0, t2=5.0), dict(t1=5.0, t2=9.5), dict(t1=0.0),
                                dict(t1=5.0, geometry="sphere"), dict(gap=-1.0)])
def test_request_validation(kw):
    args = dict(gap=150.0, t1=5.0)
    args.update(kw)
    with pytest.raises(ConfigError):
        DeltaRequest(**args)


def test_wrong_geometry_entry_points():
    with pytest.raises(ConfigError):
        delta_pressure(sphere())
    with pytest.raises(ConfigError):
        delta_force_ps(DeltaRequest(gap=150.0, t1=5.0))


def test_perturbative_guard():
    with pytest.raises(PerturbativeValidityError):
        delta_fpp_perturbative(50.0, 5.0, 9.0)
    with pytest.raises(PerturbativeValidityError):
        evaluate(DeltaRequest(gap=20000.0, t1=5.0))


def test_numeric_refuses_unresolvable_plasma_delta():
    req = DeltaRequest(gap=100.0, t1=5.0, t2=9.2, prescription="plasma", method="numeric")
    with pytest.raises(CancellationRefusal):
        evaluate(req)


def test_numeric_breakdown_and_flag():
    r = evaluate(DeltaRequest(gap=500.0, t1=5.0, setup="nbnb", method=Method.NUMERIC))
    assert set(r.breakdown) == {"zero_te", "zero_tm", "nonzero"}
    assert r.value == math.fsum(r.breakdown.values())
    assert r.digits_lost > 0
    assert r.cancellation_flag == (r.digits_lost >= 3)


@pytest.mark.parametrize("setup", ["nbnb", "nbau"])
def test_numeric_agrees_with_closed_form_for_weak_damping(setup):
    # With gamma far below the first Matsubara energy the nonzero-mode Drude
    # and plasma responses coincide and only the zero mode changes with T.
    req = DeltaRequest(gap=500.0, t1=5.0, setup=setup, gamma=1e-6)
    closed = evaluate(req).value
    numeric = evaluate(req.replace(method="numeric")).value
    assert numeric == pytest.approx(closed, rel=0.01)


def test_enum_coercion():
    req = DeltaRequest(gap=150.0, t1=5.0, setup="nbau", prescription="plasma")
    assert req.setup is Setup.NBAU and req.prescription is Prescription.PLASMA
    assert req.t2 == pytest.approx(0.99 * 9.2)
