"""Default configuration values."""

from typing import Any, Dict

DEFAULT_CONFIG: Dict[str, Any] = {
    "schema_version": 1,
    "seed": 42,
    "workers": 1,  # 0 或 null 表示使用全部物理核
    "paths": {
        "dataset_dir": "dataset",
        "model_file": "model/forest.json",
        "output_dir": "out",
        "curve_file": None,  # reconstruct 的输入曲线
        "spectrum_file": "spectrum.csv",  # reconstruct 的输出谱
    },
    "dataset": {
        "n_samples": 5000,
        "separations": {"d_min_m": 40e-9, "d_max_m": 5e-6, "n_points": 64},
        "grid": {"omega_min_rad_s": 1e11, "omega_max_rad_s": 1e19, "n_points": 80},
        "temperature_K": 300.0,
        "curve_kind": "pressure",
        "sphere_radius_m": None,  # curve_kind = "gradient" 时必填
        "term_tolerance": 1e-9,
        "quadrature_tolerance": 1e-8,
    },
    # 纯 Drude 研究的默认采样范围（频率为 log10(rad/s)）
    "sampling": {
        "p_drude": 1.0,
        "log10_plasma_frequency": [15.0, 16.5],
        "log10_damping": [13.0, 14.5],
        "n_oscillators": [0, 0],
        "log10_strength": [14.5, 16.5],
        "log10_resonance": [14.5, 17.0],
        "log10_oscillator_damping": [13.5, 15.5],
    },
    "sensing_surface": "gold_drude",  # 预设名或材料描述对象
    "hyperparams": {
        "n_trees": 200,
        "max_depth": None,
        "min_samples_leaf": 2,
        "max_features_fraction": 1.0 / 3.0,
        "bootstrap": True,
        "n_ensembles": 4,
    },
    "grid_search": {
        "enabled": True,
        "grid": {
            "n_trees": [100, 200, 400],
            "max_depth": [8, 16, None],
            "min_samples_leaf": [1, 2, 5],
            "max_features_fraction": [1.0 / 3.0, 1.0],
        },
        "folds": 3,
        "holdout_fraction": None,  # folds = 1 时必填
    },
    "split": {"validation_fraction": 0.2},
    "sweep": {
        "d_max_m": [0.5e-6, 1e-6, 2e-6, 5e-6],
        "d_min_m": 40e-9,
    },
    "experiment": {
        "measured_file": None,
        "n_bins": 32,
        "reference": None,  # 可选参考材料，用于报告重建误差
        # 模拟对照：无测量文件时由正向模型合成
        "control": {
            "material": "gold_drude",
            "d_min_m": 60e-9,
            "d_max_m": 400e-9,
            "n_points": 64,
            "oversample": 4,
            "radius_m": 37.69e-6,
            "temperature_K": 300.0,
            "noise": 0.0,
        },
    },
    "simulate": {
        "material": "gold_drude",
        "kind": "pressure",
        "radius_m": None,
        "separations_file": None,  # 单列 CSV `d_m`；为空时使用 dataset.separations
        "output_file": "curve.csv",
    },
    "realistic": {
        "material": "gold",
        "p_drude": 0.9,
        "n_oscillators": [0, 4],
    },
}

# 这些键的值由领域代码解析（材料描述、网格搜索表），加载器不检查其内部结构
OPAQUE_KEYS = frozenset({
    "sensing_surface",
    "simulate.material",
    "realistic.material",
    "experiment.reference",
    "experiment.control.material",
    "grid_search.grid",
})
