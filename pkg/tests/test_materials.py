import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supercasimir.constants import HBAR_C
from supercasimir.errors import ConfigError, DomainError
from supercasimir.materials import (
    Kind,
    MaterialModel,
    PlateState,
    Prescription,
    fresnel_imaginary,
    london_depth,
    permittivity_imaginary,
    plasma_zero_te,
    preset,
    te_zero_reflection,
    tm_zero_reflection,
    zero_mode_omega,
)

energies = st.floats(1e-4, 10.0)
momenta = st.floats(1e-6, 1.0)


def test_presets_case_insensitive():
    assert preset("Nb") is preset("nb")
    assert preset("AU").kind is Kind.DRUDE
    with pytest.raises(ConfigError):
        preset("unobtainium")


def test_model_validation():
    with pytest.raises(ConfigError):
        MaterialModel(Kind.DRUDE, -1.0)
    with pytest.raises(ConfigError):
        MaterialModel(Kind.SUPERCONDUCTOR, 9.0, 0.035)
    with pytest.raises(ConfigError):
        MaterialModel(Kind.DRUDE, 9.0, 0.035, t_c=9.2)


def test_permittivity_forms():
    plasma = MaterialModel(Kind.PLASMA, 9.0)
    drude = MaterialModel(Kind.DRUDE, 9.0, 0.035)
    assert permittivity_imaginary(plasma, 0.5) == pytest.approx(1 + 81 / 0.25)
    assert permittivity_imaginary(drude, 0.5) == pytest.approx(1 + 81 / (0.5 * 0.535))
    with pytest.raises(DomainError):
        permittivity_imaginary(drude, 0.0)


def test_london_depth():
    nb = MaterialModel(Kind.SUPERCONDUCTOR, 9.0, 0.035, t_c=9.2)
    assert london_depth(nb, 0.0) == pytest.approx(HBAR_C / 9.0)
    # n_s/n = 1 - t^4 at t = 2^(-1/4) is 1/2
    assert london_depth(nb, 9.2 * 2 ** -0.25) == pytest.approx(HBAR_C / 9.0 * np.sqrt(2))
    with pytest.raises(DomainError):
        london_depth(nb, 9.2)
    with pytest.raises(DomainError):
        london_depth(preset("au"), 1.0)


@given(st.floats(0.0, 9.19), st.floats(0.0, 9.19))
def test_london_depth_increases_with_temperature(t1, t2):
    nb = preset("nb")
    lo, hi = sorted((t1, t2))
    assert london_depth(nb, lo) <= london_depth(nb, hi)


def _naive_fresnel(eps, xi, k):
    q = np.sqrt(k ** 2 + (xi / HBAR_C) ** 2)
    km = np.sqrt(k ** 2 + eps * (xi / HBAR_C) ** 2)
    return (km - q) / (km + q), (eps * q - km) / (eps * q + km)


@given(st.floats(1.0, 1e6), energies, momenta)
def test_fresnel_matches_textbook_form(eps, xi, k):
    stable = fresnel_imaginary(eps, xi, k)
    naive = _naive_fresnel(eps, xi, k)
    # the naive form carries an absolute rounding error of a few ulp
    np.testing.assert_allclose(stable, naive, rtol=1e-9, atol=1e-12)


@given(st.floats(1.0, 1e8), energies, momenta)
def test_fresnel_bounded(eps, xi, k):
    r_te, r_tm = fresnel_imaginary(eps, xi, k)
    assert 0.0 <= r_te <= 1.0
    assert -1.0 <= r_tm <= 1.0


def test_fresnel_domain():
    with pytest.raises(DomainError):
        fresnel_imaginary(0.5, 0.1, 0.1)
    with pytest.raises(DomainError):
        fresnel_imaginary(2.0, 0.0, 0.0)


def test_plasma_zero_te_example():
    # W = 9 eV / hbar c, k = 1/(2a) at a = 200 nm
    r = plasma_zero_te(9.0, 1.0 / 400.0)
    w = 9.0 / HBAR_C
    k = 1.0 / 400.0
    s = np.sqrt(w * w + k * k)
    assert r == pytest.approx((s - k) / (s + k), rel=1e-14)
    assert abs(r - 0.90) <= 0.005


@given(energies, momenta, momenta)
def test_plasma_zero_te_decreases_with_k(omega, k1, k2):
    lo, hi = sorted((k1, k2))
    assert plasma_zero_te(omega, lo) >= plasma_zero_te(omega, hi)


def test_plasma_zero_te_limits():
    assert plasma_zero_te(9.0, 0.0) == 1.0
    assert plasma_zero_te(0.0, 0.1) == 0.0
    assert plasma_zero_te(np.inf, 0.1) == 1.0


def test_zero_mode_omega_by_state():
    nb, au = preset("nb"), preset("au")
    assert zero_mode_omega(PlateState(au, 4.0), Prescription.DRUDE) == 0.0
    assert zero_mode_omega(PlateState(au, 4.0), Prescription.PLASMA) == au.omega_p
    sc = zero_mode_omega(PlateState(nb, 4.0), Prescription.DRUDE)
    assert sc == pytest.approx(HBAR_C / london_depth(nb, 4.0))
    assert zero_mode_omega(PlateState(nb, 4.0, force_normal=True), Prescription.DRUDE) == 0.0
    assert zero_mode_omega(PlateState(nb, 10.0), Prescription.DRUDE) == 0.0
    for t in (4.0, 10.0):
        assert zero_mode_omega(PlateState(nb, t), Prescription.PLASMA) == nb.omega_p


def test_te_zero_reflection_drude_normal_vanishes():
    assert te_zero_reflection(PlateState(preset("au"), 300.0), "drude", 0.01) == 0.0
    with pytest.raises(DomainError):
        te_zero_reflection(PlateState(preset("au"), 300.0), "drude", -1.0)


def test_tm_zero_reflection():
    assert tm_zero_reflection(PlateState(preset("au"), 300.0)) == 1.0
    assert tm_zero_reflection(PlateState(MaterialModel(Kind.PLASMA, 0.0), 300.0)) == 0.0


@settings(max_examples=50)
@given(st.floats(0.01, 9.19))
def test_superconductor_te_coefficient_below_plasma(t):
    # lambda_L(T) >= lambda_L(0) so the Drude-recipe coefficient never exceeds plasma
    nb = preset("nb")
    k = np.linspace(1e-4, 0.05, 20)
    r_dr = te_zero_reflection(PlateState(nb, t), "drude", k)
    r_pl = te_zero_reflection(PlateState(nb, t), "plasma", k)
    assert np.all(r_dr <= r_pl + 1e-15)
