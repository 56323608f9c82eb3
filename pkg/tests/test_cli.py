import json
import os
import subprocess
import sys

import numpy as np
import pytest

from casimirspec import __version__
from casimirspec.app.app import run
from casimirspec.domains.lifshitz.io import read_curve

TINY_CONFIG = {
    "seed": 7,
    "dataset": {
        "n_samples": 30,
        "separations": {"d_min_m": 100e-9, "d_max_m": 1e-6, "n_points": 6},
        "grid": {"omega_min_rad_s": 1e13, "omega_max_rad_s": 1e17, "n_points": 10},
        "term_tolerance": 1e-6,
        "quadrature_tolerance": 1e-6,
    },
    "hyperparams": {"n_trees": 5, "n_ensembles": 1},
    "grid_search": {"grid": {"max_depth": [2, None]}, "folds": 2},
}


@pytest.fixture
def tiny_config(tmp_path):
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(TINY_CONFIG), encoding="utf-8")
    return str(path)


def _read_bytes(*paths):
    out = []
    for p in paths:
        with open(p, "rb") as f:
            out.append(f.read())
    return out


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        run(["--version"])
    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_vacuum_simulation_gives_zero_curve(tmp_path, tiny_config):
    out = tmp_path / "vacuum.csv"
    assert run(["--config", tiny_config, "simulate", "--material", "vacuum", "--out", str(out)]) == 0
    curve = read_curve(str(out))
    assert curve.separations.size == 6
    assert np.all(curve.values == 0.0)
    meta = json.loads((tmp_path / "vacuum.json").read_text(encoding="utf-8"))
    assert meta["provenance"]["subcommand"] == "simulate"


def test_malformed_separations_file_exits_with_input_error(tmp_path, tiny_config):
    seps = tmp_path / "seps.csv"
    seps.write_text("d_m\n1e-7\nabc\n", encoding="utf-8")
    out = tmp_path / "curve.csv"
    code = run(["--config", tiny_config, "simulate", "--separations-file", str(seps), "--out", str(out)])
    assert code == 3
    assert not out.exists()


def test_unknown_config_key_exits_with_config_error(tmp_path, tiny_config):
    assert run(["--config", tiny_config, "--set", "dataset.bogus=1", "generate",
                "--out", str(tmp_path / "ds")]) == 2
    assert not (tmp_path / "ds").exists()


def test_experiment_without_sidecar_exits_with_input_error(tmp_path, tiny_config):
    measured = tmp_path / "measured.csv"
    measured.write_text("d_m,gradient_N_per_m\n1e-7,-1.0\n2e-7,-0.5\n", encoding="utf-8")
    code = run(["--config", tiny_config, "experiment", "--measured", str(measured),
                "--out", str(tmp_path / "exp")])
    assert code == 3


def _pipeline(root, config):
    dataset = os.path.join(root, "dataset")
    model = os.path.join(root, "model", "forest.json")
    curve = os.path.join(root, "curve.csv")
    spectrum = os.path.join(root, "spectrum.csv")
    assert run(["--config", config, "generate", "--out", dataset]) == 0
    assert run(["--config", config, "train", "--dataset", dataset, "--out", model]) == 0
    assert run(["--config", config, "simulate", "--material", "gold", "--out", curve]) == 0
    assert run(["--config", config, "reconstruct", "--model", model, "--curve", curve, "--out", spectrum]) == 0
    files = [os.path.join(dataset, name) for name in sorted(os.listdir(dataset))]
    return files + [model, os.path.join(root, "model", "grid_scores.csv"), spectrum,
                    os.path.join(root, "spectrum.json")]


def test_generate_train_reconstruct_is_reproducible(tmp_path, tiny_config):
    first = _pipeline(str(tmp_path / "a"), tiny_config)
    second = _pipeline(str(tmp_path / "b"), tiny_config)
    assert [os.path.basename(p) for p in first] == [os.path.basename(p) for p in second]
    assert _read_bytes(*first) == _read_bytes(*second)

    with open(os.path.join(str(tmp_path / "a"), "spectrum.csv"), encoding="utf-8") as f:
        header = f.readline().strip()
    assert header == "omega_rad_s,eps_real,eps_imag"

    scores = (tmp_path / "a" / "model" / "grid_scores.csv").read_text(encoding="utf-8").splitlines()
    assert len(scores) == 3

    # 不同间距的曲线必须被拒绝
    seps = tmp_path / "seps.csv"
    seps.write_text("d_m\n1e-7\n3e-7\n5e-7\n", encoding="utf-8")
    other = tmp_path / "other.csv"
    assert run(["--config", tiny_config, "simulate", "--separations-file", str(seps), "--out", str(other)]) == 0
    code = run(["--config", tiny_config, "reconstruct", "--model", str(tmp_path / "a" / "model" / "forest.json"),
                "--curve", str(other), "--out", str(tmp_path / "bad.csv")])
    assert code == 3
    assert not (tmp_path / "bad.csv").exists()


def test_generation_is_independent_of_worker_count(tmp_path, tiny_config):
    a, b = tmp_path / "w1", tmp_path / "w2"
    assert run(["--config", tiny_config, "--workers", "1", "--set", "dataset.n_samples=6",
                "generate", "--out", str(a)]) == 0
    assert run(["--config", tiny_config, "--workers", "2", "--set", "dataset.n_samples=6",
                "generate", "--out", str(b)]) == 0
    for name in sorted(os.listdir(a)):
        assert _read_bytes(a / name) == _read_bytes(b / name)


REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def _fresh_python(*args):
    env = dict(os.environ, PYTHONPATH=REPO_ROOT)
    return subprocess.run([sys.executable, *args], cwd=REPO_ROOT, env=env,
                          capture_output=True, text=True, timeout=120)


@pytest.mark.parametrize("module", [
    "casimirspec.domains.lifshitz.matsubara",
    "casimirspec.utils.logging",
    "casimirspec.config.loader",
])
def test_modules_import_in_fresh_interpreter(module):
    # 子进程（包括 joblib 工作进程）从任意叶子模块开始导入都必须成功
    result = _fresh_python("-c", f"import {module}")
    assert result.returncode == 0, result.stderr


def test_module_entry_point():
    result = _fresh_python("-m", "casimirspec", "--version")
    assert result.returncode == 0, result.stderr
    assert __version__ in result.stdout


def test_module_entry_point_propagates_exit_code(tmp_path):
    result = _fresh_python("-m", "casimirspec", "--set", "dataset.bogus=1", "generate",
                           "--out", str(tmp_path / "ds"))
    assert result.returncode == 2
