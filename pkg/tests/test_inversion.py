import numpy as np
import pytest

from casimirspec.core.errors import ConfigError, InputDataError, UndefinedScoreError
from casimirspec.domains.dielectric.grid import FrequencyGrid
from casimirspec.domains.lifshitz.curves import ForceCurve
from casimirspec.domains.synth.split import TrainingSet, ValidationSet, split
from casimirspec.domains.inversion import (
    Forest,
    Hyperparams,
    SignedLogTransform,
    Tree,
    fit_forest,
    fit_tree,
    grid_search,
    mean_baseline_r2,
    predict,
    r2_score,
    read_forest,
    write_forest,
    write_grid_scores,
)
from casimirspec.domains.inversion.search import expand_grid, make_folds

GRID2 = FrequencyGrid.logspace(1e14, 1e15, 2)
EXACT = Hyperparams(n_trees=1, n_ensembles=1, min_samples_leaf=1, max_features_fraction=1.0, bootstrap=False)


def make_train(features, targets, cls=TrainingSet, ids=None):
    features = np.asarray(features, dtype=np.float64)
    n_sep = features.shape[1]
    return cls(
        separations=np.linspace(1e-7, 1e-6, n_sep),
        grid=FrequencyGrid.logspace(1e14, 1e15, np.asarray(targets).shape[1] // 2),
        kind="pressure",
        temperature=300.0,
        sample_ids=np.arange(features.shape[0]) if ids is None else ids,
        features=features,
        targets=targets,
    )


def test_signed_log_transform():
    x = np.array([[-10.0, 0.0, 1e-3], [5.0, 0.0, 2e-3], [1e6, 0.0, 3e-3]])
    t = SignedLogTransform.fit(x)
    assert t.scales.tolist() == [10.0, 1.0, 2e-3]
    z = t.forward(x)
    assert z[0, 0] == pytest.approx(-np.log10(2.0))
    assert np.allclose(t.inverse(z), x, rtol=1e-12, atol=0)
    assert np.all(np.diff(t.forward(np.array([[-3.0, 0, 0], [-1.0, 0, 0], [2.0, 0, 0]]))[:, 0]) > 0)
    with pytest.raises(InputDataError):
        t.forward(np.zeros((1, 2)))
    assert SignedLogTransform.from_dict(t.to_dict()).scales.tolist() == t.scales.tolist()


def test_hyperparams_validation():
    assert Hyperparams().n_split_features(64) == 22
    assert Hyperparams(max_features_fraction=1.0).n_split_features(5) == 5
    for bad in ({"n_trees": 0}, {"max_depth": 0}, {"min_samples_leaf": 0},
                {"max_features_fraction": 0.0}, {"bootstrap": 1}, {"n_ensembles": 0}):
        with pytest.raises(ConfigError):
            Hyperparams(**bad)
    with pytest.raises(ConfigError):
        Hyperparams.from_dict({"n_estimators": 5})


def test_single_row_tree_is_a_leaf():
    tree = fit_tree([[1.0, 2.0]], [[3.0, 4.0]], EXACT, np.random.default_rng(0))
    assert len(tree) == 1 and tree.root.is_leaf
    assert tree.predict([[9.0, 9.0]]).tolist() == [[3.0, 4.0]]


def test_two_rows_split_with_min_leaf_one():
    tree = fit_tree([[0.0], [1.0]], [[0.0], [1.0]], EXACT, np.random.default_rng(0))
    assert tree.root.feature == 0
    assert tree.root.threshold == pytest.approx(0.5)
    assert tree.n_leaves == 2
    assert tree.predict([[0.2], [0.8]])[:, 0].tolist() == [0.0, 1.0]


def test_step_function_oracle():
    x = np.arange(100, dtype=np.float64)[:, None]
    y = (x >= 50).astype(np.float64)
    hyper = Hyperparams(n_trees=1, n_ensembles=1, max_depth=1, min_samples_leaf=1,
                        max_features_fraction=1.0, bootstrap=False)
    tree = fit_tree(x, y, hyper, np.random.default_rng(0))
    assert tree.root.threshold == pytest.approx(49.5)
    assert tree.depth() == 1
    assert tree.predict([[10.0], [90.0]])[:, 0].tolist() == [0.0, 1.0]


def test_constant_target_never_splits():
    tree = fit_tree(np.random.default_rng(1).random((20, 3)), np.ones((20, 2)), EXACT,
                    np.random.default_rng(0))
    assert len(tree) == 1


def test_max_depth_and_min_leaf_hold():
    rng = np.random.default_rng(4)
    x, y = rng.random((200, 3)), rng.random((200, 2))
    hyper = Hyperparams(max_depth=3, min_samples_leaf=7, max_features_fraction=1.0)
    tree = fit_tree(x, y, hyper, rng)
    assert tree.depth() <= 3
    leaves = tree.feature == -1
    assert np.all(tree.n_samples[leaves] >= 7)


def test_tree_rejects_bad_input():
    with pytest.raises(InputDataError):
        fit_tree(np.empty((0, 2)), np.empty((0, 2)), EXACT, np.random.default_rng(0))
    with pytest.raises(InputDataError):
        fit_tree([[np.nan]], [[1.0]], EXACT, np.random.default_rng(0))


def test_tree_dict_round_trip():
    rng = np.random.default_rng(2)
    tree = fit_tree(rng.random((30, 2)), rng.random((30, 2)), EXACT, rng)
    back = Tree.from_dict(tree.to_dict())
    queries = rng.random((10, 2))
    assert np.array_equal(back.predict(queries), tree.predict(queries))


def _random_train(n=40, n_sep=5, n_grid=3, seed=0):
    rng = np.random.default_rng(seed)
    features = -np.exp(rng.normal(size=(n, n_sep)))
    targets = np.exp(rng.normal(size=(n, 2 * n_grid)))
    return make_train(features, targets)


def test_forest_memorizes_training_rows():
    train = _random_train()
    forest = fit_forest(train, EXACT)
    assert np.allclose(forest.predict_targets(train.features), train.targets, rtol=1e-9)


def test_forest_is_deterministic_and_worker_independent():
    train = _random_train(seed=1)
    hyper = Hyperparams(n_trees=4, n_ensembles=2, min_samples_leaf=1)
    a = fit_forest(train, hyper, seed=9)
    b = fit_forest(train, hyper, seed=9, workers=2)
    assert np.array_equal(a.predict_targets(train.features), b.predict_targets(train.features))
    c = fit_forest(train, hyper, seed=10)
    assert not np.array_equal(a.predict_targets(train.features), c.predict_targets(train.features))


def test_forest_ignores_input_row_order():
    train = _random_train(seed=2)
    perm = np.random.default_rng(0).permutation(len(train))
    shuffled = make_train(train.features[perm], train.targets[perm], ids=train.sample_ids[perm])
    hyper = Hyperparams(n_trees=3, n_ensembles=1)
    a = fit_forest(train, hyper, seed=1)
    b = fit_forest(shuffled, hyper, seed=1)
    assert np.array_equal(a.predict_targets(train.features), b.predict_targets(train.features))


def test_fit_forest_accepts_only_training_sets():
    train = _random_train()
    val = make_train(train.features, train.targets, cls=ValidationSet)
    with pytest.raises(TypeError):
        fit_forest(val, EXACT)
    with pytest.raises(InputDataError):
        fit_forest(train.subset([0]), EXACT)


def test_forest_prediction_is_mean_over_trees():
    def leaf(values):
        return Tree(np.array([-1]), np.array([0.0]), np.array([-1]), np.array([-1]),
                    np.array([values], dtype=np.float64), np.array([1]))

    ones = SignedLogTransform(np.ones(4))
    forest = Forest(
        ensembles=((leaf([1.0, 1.0, 1.0, 1.0]),), (leaf([3.0, 1.0, 0.0, 2.0]),)),
        hyper=Hyperparams(n_trees=1, n_ensembles=2),
        feature_transform=SignedLogTransform(np.ones(2)),
        target_transform=ones,
        separations=np.array([1e-7, 2e-7]),
        grid=GRID2,
        kind="pressure",
    )
    expected = ones.inverse(np.array([[2.0, 1.0, 0.5, 1.5]]))
    assert np.allclose(forest.predict_targets([[-1.0, -0.5]]), expected)
    spectrum = predict(forest, ForceCurve(np.array([1e-7, 2e-7]), np.array([-1.0, -0.5]), "pressure", 300.0))
    assert spectrum.eps_real.tolist() == pytest.approx(expected[0, :2].tolist())


def test_predict_rejects_mismatched_separations():
    train = _random_train(n_sep=3)
    forest = fit_forest(train, EXACT)
    d = train.separations.copy()
    d[1] *= 1.01
    with pytest.raises(InputDataError, match="index 1"):
        predict(forest, ForceCurve(d, train.features[0], "pressure", 300.0))
    with pytest.raises(InputDataError, match="index 2"):
        predict(forest, ForceCurve(train.separations[:2], train.features[0, :2], "pressure", 300.0))
    with pytest.raises(InputDataError):
        predict(forest, ForceCurve(train.separations, train.features[0], "gradient", 300.0, 1e-5))


@pytest.mark.parametrize("pred, expected", [
    ([1.0, 2.0, 3.0], 1.0),
    ([2.0, 2.0, 2.0], 0.0),
    ([2.0, 2.0, 3.0], 0.5),
])
def test_r2_examples(pred, expected):
    assert r2_score(pred, [1.0, 2.0, 3.0]) == pytest.approx(expected)


def test_r2_skips_constant_columns_and_can_be_undefined():
    truth = np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]])
    assert r2_score(truth + [0.0, 1.0], truth) == pytest.approx(1.0)
    with pytest.raises(UndefinedScoreError):
        r2_score([5.0, 5.0], [5.0, 5.0])
    with pytest.raises(InputDataError):
        r2_score([1.0], [1.0])
    assert mean_baseline_r2(truth, truth) == pytest.approx(0.0)


def test_expand_grid_and_folds():
    points = expand_grid({"n_trees": [1, 2], "max_depth": [None, 3]})
    assert [(p.n_trees, p.max_depth) for p in points] == [(1, None), (1, 3), (2, None), (2, 3)]
    with pytest.raises(ConfigError):
        expand_grid({"depth": [1]})
    folds = make_folds(10, 3, seed=0)
    assert sorted(np.concatenate(folds).tolist()) == list(range(10))
    assert [f.size for f in folds] == [4, 3, 3]
    assert len(make_folds(10, 1, 0, holdout_fraction=0.3)[0]) == 3
    with pytest.raises(ConfigError):
        make_folds(10, 1, 0)
    with pytest.raises(ConfigError):
        make_folds(5, 3, 0)


def _xor_train(n=120, seed=0):
    rng = np.random.default_rng(seed)
    x = rng.random((n, 2))
    label = ((x[:, 0] > 0.5) ^ (x[:, 1] > 0.5)).astype(np.float64)
    targets = np.repeat((1.0 + label)[:, None], 4, axis=1)
    return make_train(x, targets)


def test_grid_search_single_point():
    train = _random_train()
    base = Hyperparams(n_trees=2, n_ensembles=1)
    best, table = grid_search(train, {"max_depth": [4]}, folds=2, seed=0, base=base)
    assert len(table) == 1
    assert best == table[0].hyper
    assert len(table[0].fold_scores) == 2


def test_grid_search_prefers_deep_trees_for_xor():
    train = _xor_train()
    base = Hyperparams(n_trees=3, n_ensembles=1, min_samples_leaf=1, max_features_fraction=1.0)
    best, table = grid_search(train, {"max_depth": [1, None]}, folds=3, seed=0, base=base)
    assert best.max_depth is None
    assert table[1].mean > table[0].mean


def test_grid_search_ties_go_to_fewer_trees():
    train = _xor_train(60)
    base = Hyperparams(n_ensembles=1, min_samples_leaf=1, max_features_fraction=1.0, bootstrap=False)
    best, table = grid_search(train, {"n_trees": [2, 1]}, folds=2, seed=0, base=base)
    assert table[0].mean == table[1].mean
    assert best.n_trees == 1


def test_grid_search_is_deterministic():
    train = _random_train(seed=5)
    base = Hyperparams(n_trees=2, n_ensembles=1)
    grid = {"min_samples_leaf": [1, 3]}
    _, a = grid_search(train, grid, folds=2, seed=3, base=base)
    _, b = grid_search(train, grid, folds=2, seed=3, base=base)
    assert [s.fold_scores for s in a] == [s.fold_scores for s in b]


def test_grid_search_rejects_validation_set():
    train = _random_train()
    with pytest.raises(TypeError):
        grid_search(make_train(train.features, train.targets, cls=ValidationSet), {"n_trees": [1]})


def test_forest_io_round_trip(tmp_path):
    train = _random_train()
    forest = fit_forest(train, Hyperparams(n_trees=2, n_ensembles=2), seed=4, dataset_hash="abc")
    path = tmp_path / "forest.json"
    write_forest(str(path), forest, {"version": "test"})
    back = read_forest(str(path))
    assert back.metadata["dataset_hash"] == "abc"
    assert back.hyper == forest.hyper
    assert np.array_equal(back.predict_targets(train.features), forest.predict_targets(train.features))

    path.write_text('{"format": "something-else"}', encoding="utf-8")
    with pytest.raises(InputDataError):
        read_forest(str(path))
    with pytest.raises(InputDataError):
        read_forest(str(tmp_path / "missing.json"))


def test_grid_scores_csv(tmp_path):
    train = _random_train()
    _, table = grid_search(train, {"max_depth": [2, None]}, folds=2, seed=0,
                           base=Hyperparams(n_trees=1, n_ensembles=1))
    path = tmp_path / "grid_scores.csv"
    write_grid_scores(str(path), table)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("n_trees,max_depth,")
    assert len(lines) == 3
    assert ",none," in lines[2]


def test_fake_dataset_pipeline(fake_dataset):
    dataset = split(fake_dataset, 0.2, seed=0)
    train, val = dataset.train_view(), dataset.validation_view()
    forest = fit_forest(train, Hyperparams(n_trees=20, n_ensembles=1), seed=0)
    pred_t = forest.predict_transformed(val.features)
    truth_t = forest.target_transform.forward(val.targets)
    assert r2_score(pred_t, truth_t) > 0.0
