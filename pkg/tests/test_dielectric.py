import numpy as np
import pytest

from casimirspec.core.errors import ConfigError, DomainError, InputDataError
from casimirspec.domains.dielectric import (
    ConstantPermittivity,
    DielectricModel,
    DrudeParams,
    FrequencyGrid,
    LorentzOscillator,
    SpectrumSample,
    TabulatedOptics,
    default_grid,
    eval_imag,
    eval_real,
    ev_to_rad_s,
    kk_continuation,
    preset,
    rad_s_to_ev,
    resolve_material,
    spectrum_of,
    tabulate,
)
from casimirspec.core.constants import KK_HIGH_TAIL_EXPONENT
from casimirspec.domains.dielectric.io import read_numeric_csv, read_spectrum_csv, write_spectrum_csv
from casimirspec.domains.synth.sampling import SamplingRanges, sample_model


def drude(wp=1e16, gamma=1e14):
    return DielectricModel(DrudeParams(wp, gamma))


def test_eval_real_drude_closed_form():
    eps = eval_real(drude(), 1e16)
    # ε = 1 − ω_p²/(ω(ω + iγ))
    expected = 1.0 - 1e32 / (1e16 * (1e16 + 1j * 1e14))
    assert eps.imag == pytest.approx(0.0099990, rel=1e-4)
    assert eps.real == pytest.approx(expected.real, rel=1e-9)
    assert eps.imag == pytest.approx(expected.imag, rel=1e-12)


def test_eval_real_lorentz_peak():
    model = DielectricModel(None, (LorentzOscillator(1e15, 2e15, 1e14),))
    eps = eval_real(model, 2e15)
    # 共振处 ε = 1 + iΩ²/(γω)
    assert eps.real == pytest.approx(1.0)
    assert eps.imag == pytest.approx(1e30 / (1e14 * 2e15))


@pytest.mark.parametrize("omega", [0.0, -1.0, np.nan])
def test_eval_real_rejects_non_positive_frequency(omega):
    with pytest.raises(DomainError):
        eval_real(drude(), omega)


def test_eval_imag_closed_form_and_monotone():
    model = drude(1.37e16, 5.3e13)
    xi = np.logspace(12, 19, 50)
    eps = eval_imag(model, xi)
    assert np.allclose(eps, 1.0 + 1.37e16**2 / (xi * (xi + 5.3e13)), rtol=1e-14)
    assert np.all(np.diff(eps) < 0)
    assert np.all(eps > 1.0)
    with pytest.raises(DomainError):
        eval_imag(model, 0.0)


def test_empty_model_rejected():
    with pytest.raises(ConfigError):
        DielectricModel()


def test_random_models_are_passive_and_decreasing():
    rng = np.random.default_rng(3)
    grid = default_grid()
    xi = np.logspace(11, 19, 40)
    for _ in range(100):
        model = sample_model(rng, SamplingRanges.drude_lorentz())
        spectrum = spectrum_of(model, grid)
        assert np.all(spectrum.eps_imag >= 0)
        eps = eval_imag(model, xi)
        assert np.all(eps > 1.0)
        assert np.all(np.diff(eps) <= 0)


def test_default_grid():
    grid = default_grid()
    assert len(grid) == 80
    assert grid.omega_min == pytest.approx(1e11)
    assert grid.decades == pytest.approx(8.0)
    with pytest.raises(ConfigError):
        FrequencyGrid(np.array([1.0, 1.0]))


def test_spectrum_sample_validation(small_grid):
    n = len(small_grid)
    with pytest.raises(InputDataError):
        SpectrumSample(small_grid, np.zeros(n), -np.ones(n))
    with pytest.raises(InputDataError):
        SpectrumSample(small_grid, np.zeros(n - 1), np.zeros(n))


def test_spectrum_target_round_trip(small_grid):
    s = spectrum_of(drude(), small_grid)
    back = SpectrumSample.from_target(small_grid, s.as_target())
    assert np.array_equal(back.eps_real, s.eps_real)
    assert np.array_equal(back.eps_imag, s.eps_imag)


def test_kk_continuation_of_dense_drude_table():
    wp, gamma = 1.37e16, 5.3e13
    model = drude(wp, gamma)
    table = tabulate(model, np.logspace(9, 21, 4000))
    xi = default_grid().points
    got = kk_continuation(table, xi)
    expected = 1.0 + wp**2 / (xi * (xi + gamma))
    assert np.max(np.abs(got / expected - 1.0)) < 1e-3


def test_kk_continuation_of_lorentz_table_without_extrapolation():
    model = DielectricModel(None, (LorentzOscillator(5e15, 3e15, 2e14),))
    table = tabulate(model, np.logspace(12, 19, 3000))
    xi = np.logspace(13, 17, 9)
    assert np.allclose(kk_continuation(table, xi), eval_imag(model, xi), rtol=1e-3)


def test_kk_continuation_of_transparent_table_is_exactly_one():
    table = TabulatedOptics(np.logspace(12, 18, 50), np.zeros(50))
    xi = np.logspace(12, 19, 8)
    assert np.all(kk_continuation(table, xi) == 1.0)
    assert table.static_tm_reflection() == 0.0


def test_kk_continuation_high_frequency_limit_is_plasma_frequency():
    # ξ ≫ ω_max 时 ξ²(ε−1) → (2/π)∫ω·ε″ dω = ω_p²
    wp, gamma = 1.37e16, 5.3e13
    table = tabulate(drude(wp, gamma), np.logspace(11, 19, 800))
    xi = np.array([1e21, 1e22])
    excess = kk_continuation(table, xi) - 1.0
    assert xi[0]**2 * excess[0] == pytest.approx(wp**2, rel=1e-3)
    assert wp**2 == pytest.approx(1.8769e32, rel=1e-12)
    assert excess[0] / excess[1] == pytest.approx(100.0, rel=1e-3)


def test_tabulated_eps_imag_follows_both_extrapolations():
    params = DrudeParams(1.37e16, 5.3e13)
    w = np.logspace(12, 18, 200)
    table = TabulatedOptics(w, params.eps_imag_real_axis(w), params)
    inside = np.array([3e13, 2e15, 7e17])
    assert table.eps_imag_real_axis(inside) == pytest.approx(params.eps_imag_real_axis(inside), rel=1e-3)
    below = np.array([1e10, 5e11])
    assert np.array_equal(table.eps_imag_real_axis(below), params.eps_imag_real_axis(below))
    above = 1e19
    expected = table.eps_imag[-1] * (1e18 / above) ** KK_HIGH_TAIL_EXPONENT
    assert float(table.eps_imag_real_axis(above)) == pytest.approx(expected, rel=1e-12)

    bare = TabulatedOptics(w, table.eps_imag)
    assert float(bare.eps_imag_real_axis(1e10)) == 0.0
    with pytest.raises(DomainError):
        table.eps_imag_real_axis(np.array([1e14, 0.0]))


def test_kk_continuation_rejects_non_positive_xi():
    table = tabulate(drude(), np.logspace(12, 18, 50))
    with pytest.raises(DomainError):
        kk_continuation(table, np.array([1e14, 0.0]))


@pytest.mark.parametrize("freqs, values", [
    ([], []),
    ([1e14], [1.0]),
    ([2e14, 1e14], [1.0, 1.0]),
    ([1e14, 2e14], [1.0, -1.0]),
])
def test_tabulated_optics_validation(freqs, values):
    with pytest.raises(InputDataError):
        TabulatedOptics(np.array(freqs, dtype=float), np.array(values, dtype=float))


def test_unit_conversion():
    assert float(ev_to_rad_s(1.0)) == pytest.approx(1.519267e15, rel=1e-6)
    assert float(rad_s_to_ev(ev_to_rad_s(2.5))) == pytest.approx(2.5, rel=1e-15)


def test_presets_and_material_specs():
    gold = preset("gold")
    assert isinstance(gold, DielectricModel)
    assert len(gold.oscillators) == 5
    assert gold.drude.plasma_frequency == pytest.approx(np.sqrt(0.760) * float(ev_to_rad_s(9.03)))
    assert resolve_material("vacuum") == ConstantPermittivity(1.0)
    assert resolve_material({"constant": 1e10}).static_tm_reflection() == pytest.approx(1.0)
    ev_model = resolve_material({"drude": {"plasma_frequency": 9.0, "damping": 0.035}, "units": "eV"})
    assert ev_model.drude.plasma_frequency == pytest.approx(float(ev_to_rad_s(9.0)))
    with pytest.raises(ConfigError):
        preset("unobtainium")
    with pytest.raises(ConfigError):
        resolve_material({"colour": "gold"})
    with pytest.raises(DomainError):
        ConstantPermittivity(0.5)


def test_static_tm_reflection():
    assert drude().static_tm_reflection() == 1.0
    model = DielectricModel(None, (LorentzOscillator(2e15, 1e15, 1e14),))
    eps0 = 1.0 + 4.0
    assert model.static_permittivity() == pytest.approx(eps0)
    assert model.static_tm_reflection() == pytest.approx((eps0 - 1) / (eps0 + 1))


def test_tabulated_csv_material(tmp_path):
    path = tmp_path / "gold.csv"
    w = np.logspace(12, 18, 200)
    eps_imag = DrudeParams(1.37e16, 5.3e13).eps_imag_real_axis(w)
    np.savetxt(path, np.column_stack([w, eps_imag]), delimiter=",", header="omega_rad_s,eps_imag", comments="")
    material = resolve_material({"tabulated": str(path),
                                 "extrapolation": {"plasma_frequency": 1.37e16, "damping": 5.3e13}})
    assert isinstance(material, TabulatedOptics)
    assert material.static_tm_reflection() == 1.0


def test_spectrum_csv_round_trip(tmp_path, small_grid):
    s = spectrum_of(preset("platinum"), small_grid)
    path = tmp_path / "spectrum.csv"
    write_spectrum_csv(str(path), s)
    back = read_spectrum_csv(str(path))
    assert back.grid == small_grid
    assert np.array_equal(back.eps_real, s.eps_real)
    assert np.array_equal(back.eps_imag, s.eps_imag)


def test_malformed_spectrum_csv(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("omega_rad_s,eps_real,eps_imag\n1e14,abc,1\n")
    with pytest.raises(InputDataError):
        read_spectrum_csv(str(path))


def _write(tmp_path, text, name="table.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_read_numeric_csv_single_row_and_optional_column(tmp_path):
    one = read_numeric_csv(_write(tmp_path, "d_m,value\n1e-7,-2.5\n"), ["d_m", "value"])
    assert one.shape == (1, 2)
    assert one.tolist() == [[1e-7, -2.5]]
    wide = read_numeric_csv(_write(tmp_path, "d_m,value,sigma\n1e-7,-2.5,0.1\n2e-7,-1.0,0.2\n"),
                            ["d_m", "value"], optional=1)
    assert wide.shape == (2, 3)
    assert wide[:, 2].tolist() == [0.1, 0.2]


@pytest.mark.parametrize("text", [
    "",
    "d_m,value\n",
    "d,value\n1e-7,-1\n",
    "d_m,value,sigma\n1e-7,-1,0.1\n",
    "d_m,value\n1e-7,-1\n2e-7\n",
    "d_m,value\n1e-7,-1\n2e-7,-1,3\n",
    "d_m,value\n1e-7,abc\n",
    "d_m,value\n1e-7,nan\n",
    "d_m,value\n1e-7,inf\n",
])
def test_read_numeric_csv_rejects_bad_tables(tmp_path, text):
    with pytest.raises(InputDataError):
        read_numeric_csv(_write(tmp_path, text), ["d_m", "value"])


def test_read_numeric_csv_missing_file(tmp_path):
    with pytest.raises(InputDataError):
        read_numeric_csv(str(tmp_path / "absent.csv"), ["d_m", "value"])
