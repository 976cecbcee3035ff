import numpy as np
import pytest

from netgames import experiments as ex
from netgames.errors import CapacityError, InvalidParameterError

from helpers import NONUNIQUE_LAYER1, NONUNIQUE_LAYER2, oracle_is_p


def test_trial_stream_reproducible_and_distinct():
    a = ex.trial_stream(7, 1, 3, 42).uniform(size=4)
    b = ex.trial_stream(7, 1, 3, 42).uniform(size=4)
    np.testing.assert_array_equal(a, b)
    c = ex.trial_stream(7, 1, 3, 43).uniform(size=4)
    d = ex.trial_stream(7, 2, 3, 42).uniform(size=4)
    e = ex.trial_stream(8, 1, 3, 42).uniform(size=4)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)
    assert not np.array_equal(a, e)


def test_gen_random_layer_shape_and_bounds():
    stream = ex.trial_stream(0, 1, 3, 0)
    layer = ex.gen_random_layer(6, 0.25, stream)
    assert layer.n == 6
    assert np.all(np.diag(layer.a) == 0.0)
    assert np.abs(layer.a).max() <= 0.25


def test_gen_random_layer_symmetrize():
    stream = ex.trial_stream(0, 1, 4, 0)
    layer = ex.gen_random_layer(5, 1.0, stream, symmetrize=True)
    np.testing.assert_array_equal(layer.a, layer.a.T)
    assert np.all(np.diag(layer.a) == 0.0)


def test_gen_random_layer_validation():
    stream = ex.trial_stream(0, 1, 1, 0)
    with pytest.raises(InvalidParameterError):
        ex.gen_random_layer(1, 1.0, stream)
    with pytest.raises(InvalidParameterError):
        ex.gen_random_layer(3, 0.0, stream)


def test_sweep_config_validation():
    good = dict(n_range=(3, 4), trials=10, s=0.5, kappa=0.5, seed=0, mode="multiplex-prop3")
    ex.SweepConfig(**good)
    for bad in (
        {**good, "mode": "bogus"},
        {**good, "trials": 0},
        {**good, "s": 0.0},
        {**good, "kappa": 1.5},
        {**good, "seed": -1},
        {**good, "n_range": (1,)},
        {**good, "layer1_filter": "none"},
    ):
        with pytest.raises(InvalidParameterError):
            ex.SweepConfig(**bad)


def test_multiplex_sweep_worker_determinism():
    cfg = ex.SweepConfig(
        n_range=(3, 4), trials=40, s=0.5, kappa=0.5, seed=11, mode="multiplex-prop4"
    )
    rec1, sum1 = ex.run_multiplex_sweep(cfg, workers=1)
    rec2, sum2 = ex.run_multiplex_sweep(cfg, workers=2)
    assert rec1 == rec2
    assert sum1 == sum2


def test_multiplex_sweep_record_consistency():
    cfg = ex.SweepConfig(
        n_range=(3,), trials=60, s=2.0, kappa=0.5, seed=3, mode="multiplex-prop4"
    )
    records, summaries = ex.run_multiplex_sweep(cfg)
    assert len(records) == 60
    for rec in records:
        assert rec.mode == "multiplex-prop4"
        # A false detection in this mode means the negative certificate
        # fired although the overlay really is uniquely solvable.
        if rec.false_detection:
            assert rec.verdict == ex.NOT_GUARANTEED_UNIQUE
            assert rec.ground_truth is True
    (summary,) = summaries
    fired = sum(1 for r in records if r.verdict == ex.NOT_GUARANTEED_UNIQUE)
    false = sum(1 for r in records if r.false_detection)
    assert summary["fired"] == fired
    assert summary["rate"] == (false / fired if fired else 0.0)


def test_multiplex_sweep_symmetric_draws_never_false_fire():
    for mode in ("multiplex-prop3", "multiplex-prop4"):
        cfg = ex.SweepConfig(
            n_range=(4,), trials=50, s=1.0, kappa=0.5, seed=21, mode=mode
        )
        records, _ = ex.run_multiplex_sweep(cfg, symmetrize=True)
        assert all(not r.false_detection for r in records)


def test_multiplex_sweep_trial_regeneration():
    """Records can be reproduced from the per-trial streams alone."""
    cfg = ex.SweepConfig(
        n_range=(4,), trials=10, s=1.5, kappa=0.5, seed=9, mode="multiplex-prop4"
    )
    records, _ = ex.run_multiplex_sweep(cfg)
    for rec in records:
        stream = ex.trial_stream(cfg.seed, 1, rec.n, rec.trial)
        g1 = ex._draw_p_layer(rec.n, 1.0, stream, False, cfg.layer1_filter)
        g2 = ex.gen_random_layer(rec.n, cfg.s, stream)
        par = cfg.kappa * g1.a + (1.0 - cfg.kappa) * g2.a
        assert rec.ground_truth == oracle_is_p(np.eye(rec.n) + par)


def test_multiplex_sweep_layer1_filters_differ():
    eig = ex.SweepConfig(
        n_range=(5,), trials=80, s=0.125, kappa=0.75, seed=2, mode="multiplex-prop3"
    )
    strict = ex.SweepConfig(
        n_range=(5,),
        trials=80,
        s=0.125,
        kappa=0.75,
        seed=2,
        mode="multiplex-prop3",
        layer1_filter="p-matrix",
    )
    rec_eig, _ = ex.run_multiplex_sweep(eig)
    rec_strict, _ = ex.run_multiplex_sweep(strict)
    assert rec_eig != rec_strict
    # The strict filter only admits exactly-unique base layers, so the
    # positive certificate can never contradict the overlay's ground truth
    # at small perturbation strength the way the eigenvalue screen can.
    assert all(not r.false_detection for r in rec_strict)


def test_multiplex_sweep_rejects_wrong_mode_and_large_n():
    cfg = ex.SweepConfig(
        n_range=(3,), trials=5, s=1.0, kappa=0.5, seed=0, mode="multilayer"
    )
    with pytest.raises(InvalidParameterError):
        ex.run_multiplex_sweep(cfg)
    big = ex.SweepConfig(
        n_range=(ex.P_EXACT_CAP + 1,),
        trials=5,
        s=1.0,
        kappa=0.5,
        seed=0,
        mode="multiplex-prop3",
    )
    with pytest.raises(CapacityError):
        ex.run_multiplex_sweep(big)


def test_layer1_fixtures_match_frozen_file():
    frozen = ex.load_layer1_fixtures()
    regen = ex.generate_layer1_fixtures()
    assert len(frozen) == len(regen) == 6
    for a, b in zip(frozen, regen):
        np.testing.assert_array_equal(a.a, b.a)
        # Every frozen base layer is exactly uniquely solvable.
        assert oracle_is_p(np.eye(a.n) + a.a)


def test_multilayer_sweep_rows_and_order():
    cfg = ex.SweepConfig(
        n_range=(5,), trials=8, s=1.0, kappa=0.0, seed=14, mode="multilayer"
    )
    records, map_rows = ex.run_multilayer_sweep(cfg)
    assert len(map_rows) == 6 * 8
    assert len(records) == 6 * 8 * 4
    keys = [
        (r["lambda_min_layer1"], r["lambda_min_layer2"], r["trial"])
        for r in map_rows
    ]
    assert keys == sorted(keys)
    modes = {r.mode for r in records}
    assert modes == {
        "multilayer-normal",
        "multilayer-one_way",
        "multilayer-weak",
        "multilayer-very_weak",
    }
    for rec in records:
        assert rec.ground_truth == (rec.verdict == ex.GUARANTEED_UNIQUE)
        assert not rec.false_detection


def test_multilayer_one_way_equals_layer2_p():
    """With all base layers P, one-way uniqueness is exactly layer 2's P flag."""
    cfg = ex.SweepConfig(
        n_range=(5,), trials=12, s=1.0, kappa=0.0, seed=14, mode="multilayer"
    )
    _, map_rows = ex.run_multilayer_sweep(cfg)
    for row in map_rows:
        assert row["one_way"] == row["layer2_p"]


def test_multilayer_sweep_worker_determinism():
    cfg = ex.SweepConfig(
        n_range=(5,), trials=6, s=1.0, kappa=0.0, seed=5, mode="multilayer"
    )
    rec1, map1 = ex.run_multilayer_sweep(cfg, workers=1)
    rec2, map2 = ex.run_multilayer_sweep(cfg, workers=2)
    assert rec1 == rec2
    assert map1 == map2


def test_kappa_determinant_sweep_known_values():
    dets = ex.kappa_determinant_sweep(
        NONUNIQUE_LAYER1, NONUNIQUE_LAYER2, kappa_grid=(0.0, 0.5, 1.0)
    )
    np.testing.assert_allclose(dets, [1.0, -0.2, 0.2], atol=1e-12)


def test_kappa_determinant_sweep_validation():
    with pytest.raises(InvalidParameterError):
        ex.kappa_determinant_sweep(NONUNIQUE_LAYER1, np.zeros((3, 3)))
    with pytest.raises(InvalidParameterError):
        ex.kappa_determinant_sweep(
            NONUNIQUE_LAYER1, NONUNIQUE_LAYER2, kappa_grid=(0.5, 1.5)
        )
    with pytest.raises(InvalidParameterError):
        ex.kappa_determinant_sweep(NONUNIQUE_LAYER1, NONUNIQUE_LAYER2, kappa_grid=())


def test_csv_writers_format(tmp_path):
    cfg = ex.SweepConfig(
        n_range=(3,), trials=5, s=0.5, kappa=0.5, seed=1, mode="multiplex-prop3"
    )
    records, summaries = ex.run_multiplex_sweep(cfg)
    rec_path = tmp_path / "records.csv"
    sum_path = tmp_path / "summary.csv"
    ex.write_records_csv(records, rec_path)
    ex.write_summary_csv(summaries, sum_path)

    rec_lines = rec_path.read_text().splitlines()
    assert rec_lines[0] == ex.RECORD_HEADER
    assert len(rec_lines) == 6
    first = rec_lines[1].split(",")
    assert first[0] == "0" and first[1] == "3"
    assert first[6] in ("true", "false") and first[7] in ("true", "false")

    sum_lines = sum_path.read_text().splitlines()
    assert sum_lines[0] == ex.SUMMARY_HEADER
    assert len(sum_lines) == 2

    mcfg = ex.SweepConfig(
        n_range=(5,), trials=2, s=1.0, kappa=0.0, seed=1, mode="multilayer"
    )
    _, map_rows = ex.run_multilayer_sweep(mcfg)
    map_path = tmp_path / "map.csv"
    ex.write_map_csv(map_rows, map_path)
    map_lines = map_path.read_text().splitlines()
    assert map_lines[0] == ex.MAP_HEADER
    assert len(map_lines) == 1 + 12
    for line in map_lines[1:]:
        cells = line.split(",")
        assert len(cells) == 9
        assert all(c in ("true", "false") for c in cells[4:])
