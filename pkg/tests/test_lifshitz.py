import numpy as np
from scipy import integrate
import pytest

from casimirspec.core.constants import C_LIGHT, HBAR, K_B
from casimirspec.core.errors import (
    ConfigError,
    DomainError,
    InputDataError,
    NumericalError,
    PfaApplicabilityWarning,
)
from casimirspec.domains.dielectric.materials import ConstantPermittivity, preset
from casimirspec.domains.dielectric.models import DielectricModel, DrudeParams, LorentzOscillator
from casimirspec.domains.lifshitz import (
    ForceCurve,
    MatsubaraSettings,
    SphereGeometry,
    force_curve,
    free_energy_per_area,
    fresnel,
    matsubara_frequency,
    pfa_gradient,
    pressure,
)
from casimirspec.domains.lifshitz.io import read_curve, write_curve
from casimirspec.domains.lifshitz.matsubara import dilog, energy_closed_form, trilog


def test_fresnel_normal_incidence():
    xi = 1e15
    pair = fresnel(4.0, xi, 0.0)
    assert pair.r_te == pytest.approx(-1.0 / 3.0)
    assert pair.r_tm == pytest.approx(1.0 / 3.0)
    assert pair.kappa0 == pytest.approx(xi / C_LIGHT)


def test_fresnel_oblique_closed_form():
    xi = 1e15
    pair = fresnel(4.0, xi, xi / C_LIGHT)
    s2, s5 = np.sqrt(2.0), np.sqrt(5.0)
    assert pair.r_te == pytest.approx((s2 - s5) / (s2 + s5), rel=1e-12)
    assert pair.r_tm == pytest.approx((4 * s2 - s5) / (4 * s2 + s5), rel=1e-12)
    assert pair.r_tm == pytest.approx(0.4334, abs=1e-4)


def test_fresnel_vacuum_and_domain():
    pair = fresnel(1.0, 1e14, 1e7)
    assert pair.r_te == 0.0 and pair.r_tm == 0.0
    with pytest.raises(DomainError):
        fresnel(0.9, 1e14, 1e7)
    with pytest.raises(DomainError):
        fresnel(2.0, 0.0, 1e7)
    with pytest.raises(DomainError):
        fresnel(2.0, 1e14, -1.0)


def test_fresnel_sign_bounds():
    rng = np.random.default_rng(0)
    for _ in range(200):
        eps = 1.0 + 10 ** rng.uniform(-3, 6)
        pair = fresnel(eps, 10 ** rng.uniform(12, 17), 10 ** rng.uniform(4, 9))
        assert -1.0 <= pair.r_te <= 0.0 <= pair.r_tm <= 1.0


def test_matsubara_frequency():
    assert float(matsubara_frequency(300.0, 1)) == pytest.approx(2 * np.pi * K_B * 300.0 / HBAR, rel=1e-12)
    assert float(matsubara_frequency(300.0, 1)) == pytest.approx(2.4678e14, rel=1e-4)
    assert float(matsubara_frequency(600.0, 1)) == 2 * float(matsubara_frequency(300.0, 1))
    assert float(matsubara_frequency(300.0, 0)) == 0.0


def test_ideal_metal_oracle():
    metal = ConstantPermittivity(1e10)
    settings = MatsubaraSettings(temperature=1.0)
    d = 100e-9
    p = pressure(d, metal, metal, settings)
    e = free_energy_per_area(d, metal, metal, settings)
    p_ideal = -np.pi**2 * HBAR * C_LIGHT / (240 * d**4)
    e_ideal = -np.pi**2 * HBAR * C_LIGHT / (720 * d**3)
    assert p_ideal == pytest.approx(-13.00, abs=0.01)
    assert p == pytest.approx(p_ideal, rel=0.02)
    assert e == pytest.approx(e_ideal, rel=0.02)


@pytest.mark.parametrize("d", [60e-9, 100e-9, 1e-6])
def test_energy_pressure_consistency(gold, d):
    h = 1e-3 * d
    f_plus = free_energy_per_area(d + h, gold, gold)
    f_minus = free_energy_per_area(d - h, gold, gold)
    derivative = -(f_plus - f_minus) / (2 * h)
    assert derivative == pytest.approx(pressure(d, gold, gold), rel=5e-3)


def test_vacuum_gives_zero_pressure(gold, fast_settings):
    assert pressure(100e-9, ConstantPermittivity(1.0), gold, fast_settings) == 0.0


def test_pressure_is_symmetric(gold, fast_settings):
    other = DielectricModel(DrudeParams(5e15, 1e14), (LorentzOscillator(3e15, 4e15, 5e14),))
    a = pressure(200e-9, gold, other, fast_settings)
    b = pressure(200e-9, other, gold, fast_settings)
    assert a == pytest.approx(b, rel=1e-12)


def test_pressure_rejects_bad_separation(gold):
    with pytest.raises(DomainError):
        pressure(0.0, gold, gold)


def test_gold_curve_attractive_and_decaying(gold, fast_settings):
    d = np.linspace(40e-9, 5e-6, 24)
    curve = force_curve(d, gold, gold, fast_settings)
    assert curve.kind == "pressure"
    assert np.all(curve.values < 0)
    assert np.all(np.diff(np.abs(curve.values)) < 0)


def test_dielectric_is_weaker_than_metal(gold, fast_settings):
    dielectric = DielectricModel(None, (LorentzOscillator(2e16, 1.5e16, 1e15),))
    d = 300e-9
    weak = pressure(d, gold, dielectric, fast_settings)
    assert weak < 0
    assert abs(weak) < abs(pressure(d, gold, preset("gold"), fast_settings))


def test_pfa_gradient_is_two_pi_r_times_pressure(gold, fast_settings):
    geom = SphereGeometry(37.69e-6)
    d = 200e-9
    g = pfa_gradient(d, geom, gold, gold, fast_settings)
    assert g == pytest.approx(2 * np.pi * geom.radius * pressure(d, gold, gold, fast_settings), rel=1e-12)


def test_pfa_warning_when_radius_not_large(gold, fast_settings):
    with pytest.warns(PfaApplicabilityWarning):
        pfa_gradient(1e-6, SphereGeometry(5e-6), gold, gold, fast_settings)


def test_gradient_curve_needs_geometry(gold, fast_settings):
    with pytest.raises(ConfigError):
        force_curve([1e-7, 2e-7], gold, gold, fast_settings, kind="gradient")
    curve = force_curve([1e-7, 2e-7], gold, gold, fast_settings, "gradient", SphereGeometry(40e-6))
    assert curve.radius == 40e-6


def test_force_curve_validation():
    with pytest.raises(InputDataError):
        ForceCurve(np.array([2e-7, 1e-7]), np.array([-1.0, -2.0]), "pressure", 300.0)
    with pytest.raises(InputDataError):
        ForceCurve(np.array([1e-7, 2e-7]), np.array([-1.0]), "pressure", 300.0)
    with pytest.raises(InputDataError):
        ForceCurve(np.array([1e-7]), np.array([-1.0]), "gradient", 300.0)


def test_restrict_curve():
    curve = ForceCurve(np.array([1e-7, 2e-7, 3e-7]), np.array([-3.0, -2.0, -1.0]), "pressure", 300.0)
    part = curve.restrict(2e-7)
    assert np.array_equal(part.separations, [1e-7, 2e-7])
    assert curve.restrict(3e-7).values.tolist() == curve.values.tolist()
    with pytest.raises(InputDataError):
        curve.restrict(5e-8)


def test_non_convergent_quadrature_reports_context(gold):
    settings = MatsubaraSettings(300.0, 1e-9, 1e-300)
    with pytest.raises(NumericalError) as info:
        pressure(100e-9, gold, gold, settings)
    assert info.value.d == 100e-9
    assert info.value.n is not None


def test_curve_io_round_trip(tmp_path, gold, fast_settings):
    curve = force_curve([1e-7, 2e-7, 4e-7], gold, gold, fast_settings, "gradient", SphereGeometry(40e-6))
    path = tmp_path / "curve.csv"
    write_curve(str(path), curve, {"version": "test"})
    back = read_curve(str(path))
    assert back.kind == "gradient"
    assert back.radius == 40e-6
    assert np.array_equal(back.values, curve.values)
    (tmp_path / "curve.json").unlink()
    with pytest.raises(InputDataError):
        read_curve(str(path))


def test_curve_io_keeps_uncertainty(tmp_path):
    curve = ForceCurve(np.array([1e-7, 2e-7]), np.array([-2.0, -0.5]), "gradient", 300.0, 40e-6,
                       np.array([0.1, 0.05]))
    path = tmp_path / "binned.csv"
    write_curve(str(path), curve)
    assert path.read_text(encoding="utf-8").splitlines()[0] == "d_m,value,sigma"
    back = read_curve(str(path))
    assert np.array_equal(back.uncertainty, curve.uncertainty)
    assert np.array_equal(back.values, curve.values)
    assert sorted(p.name for p in tmp_path.iterdir()) == ["binned.csv", "binned.json"]


def test_polylog_values():
    assert float(trilog(1.0)) == pytest.approx(1.2020569031595942, rel=1e-10)
    assert float(trilog(0.5)) == pytest.approx(0.5372131936080402, rel=1e-10)
    assert float(trilog(0.0)) == 0.0
    assert float(dilog(1.0)) == pytest.approx(np.pi**2 / 6, rel=1e-12)


@pytest.mark.parametrize("y0, x0", [(0.0, 1.0), (0.0, 0.6), (0.3, 0.95), (2.0, 0.5)])
def test_energy_closed_form_matches_quadrature(y0, x0):
    value, _ = integrate.quad(lambda y: y * np.log1p(-x0 * np.exp(-y)), y0, np.inf, limit=200)
    assert float(energy_closed_form(np.array([y0]), np.array([x0]))[0]) == pytest.approx(value, rel=1e-7)


def test_metal_free_energy_converges(gold):
    e = free_energy_per_area(100e-9, gold, gold)
    assert np.isfinite(e) and e < 0


def test_gold_weaker_than_ideal_metal(gold):
    p100 = pressure(100e-9, gold, gold)
    p_ideal = -np.pi**2 * HBAR * C_LIGHT / (240 * (100e-9) ** 4)
    assert p100 < 0
    assert abs(p100) < abs(p_ideal) < 13.01
    assert abs(p100) < 13.00
    assert abs(pressure(200e-9, gold, gold)) < abs(p100)


def test_pressure_stable_under_tighter_quadrature(gold):
    loose = pressure(100e-9, gold, gold, MatsubaraSettings(300.0, 1e-9, 1e-8))
    tight = pressure(100e-9, gold, gold, MatsubaraSettings(300.0, 1e-9, 5e-9))
    assert tight == pytest.approx(loose, rel=1e-6)


def test_single_separation_curve_matches_scalar(gold, fast_settings):
    curve = force_curve([150e-9], gold, gold, fast_settings)
    assert len(curve) == 1
    assert curve.values[0] == pytest.approx(pressure(150e-9, gold, gold, fast_settings), rel=1e-12)


def test_pressure_rerun_is_bit_identical(gold, fast_settings):
    assert pressure(120e-9, gold, gold, fast_settings) == pressure(120e-9, gold, gold, fast_settings)
