import json

import numpy as np
import pytest

import netgames as ng
from netgames.cli import main

from helpers import (
    CROSS_INTER,
    CROSS_LAYER1,
    CROSS_LAYER2,
    CROSS_TARGETS,
    NONUNIQUE_LAYER1,
    NONUNIQUE_LAYER2,
    NONUNIQUE_TARGETS,
)


@pytest.fixture
def overlay_game(tmp_path):
    path = tmp_path / "overlay.json"
    game = ng.MultiplexGame.from_kappa(
        NONUNIQUE_LAYER1, NONUNIQUE_LAYER2, 0.5, NONUNIQUE_TARGETS
    )
    ng.save_game(game, path)
    return str(path)


@pytest.fixture
def block_game(tmp_path):
    path = tmp_path / "block.json"
    game = ng.MultilayerGame(
        [CROSS_LAYER1, CROSS_LAYER2],
        [[None, CROSS_INTER], [CROSS_INTER, None]],
        CROSS_TARGETS,
    )
    ng.save_game(game, path)
    return str(path)


@pytest.fixture
def unique_game(tmp_path):
    path = tmp_path / "single.json"
    ng.save_game(ng.NetworkGame(np.array([[0.0, 0.3], [-0.2, 0.0]]), [1.0, 1.0]), path)
    return str(path)


def test_solve_overlay(overlay_game, tmp_path):
    out = tmp_path / "solve.json"
    assert main(["solve", overlay_game, "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["method"] == "enumeration"
    assert doc["count"] == 2
    z_list = [e["z"] for e in doc["equilibria"]]
    np.testing.assert_allclose(z_list[0], [0.0, 0.5], atol=1e-8)
    np.testing.assert_allclose(z_list[1], [1.0, 0.0], atol=1e-8)
    verdicts = [e["stability"]["verdict"] for e in doc["equilibria"]]
    assert verdicts == ["NotStronglyStable", "StronglyStable"]
    assert doc["equilibria"][0]["degenerate"] is True


def test_solve_writes_stdout_by_default(overlay_game, capsys):
    assert main(["solve", overlay_game]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["count"] == 2


def test_solve_pivoting_path(tmp_path):
    n = 25
    path = tmp_path / "big.json"
    ng.save_game(ng.NetworkGame(np.zeros((n, n)), np.ones(n)), path)
    out = tmp_path / "big_out.json"
    assert main(["solve", str(path), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["method"] == "pivoting"
    assert doc["status"] == "solved"
    np.testing.assert_allclose(doc["equilibria"][0]["z"], np.ones(n), atol=1e-9)


def test_solve_ray_termination(tmp_path):
    path = tmp_path / "ray.json"
    ng.save_game(
        ng.NetworkGame(np.array([[0.0, -2.0], [-2.0, 0.0]]), [1.0, 1.0]), path
    )
    out = tmp_path / "ray_out.json"
    assert main(["solve", str(path), "--cap", "1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["status"] == "ray-termination"
    assert doc["count"] == 0


def test_certify_overlay_exits_two(overlay_game, tmp_path):
    out = tmp_path / "certify.json"
    assert main(["certify", overlay_game, "--out", str(out)]) == 2
    doc = json.loads(out.read_text())
    assert doc["overall"] == "NotGuaranteedUnique"
    assert doc["ground_truth"]["is_p"] is False
    assert doc["ground_truth"]["witness"] == [0, 1]
    assert doc["equilibrium_count"] == 2
    sources = [c["source"] for c in doc["certificates"]]
    assert sources == [
        "prop1_pair_failure",
        "prop2_closed_classes",
        "prop3_perturbation",
        "prop4_twosided_failure",
        "existence_check",
    ]
    by_source = {c["source"]: c for c in doc["certificates"]}
    assert by_source["prop2_closed_classes"]["verdict"] == "Inconclusive"
    assert by_source["existence_check"]["verdict"] == "Exists"


def test_certify_unique_game_exits_zero(unique_game, tmp_path):
    out = tmp_path / "certify.json"
    assert main(["certify", unique_game, "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["overall"] == "GuaranteedUnique"
    assert doc["ground_truth"]["is_p"] is True
    assert doc["equilibrium_count"] == 1


def test_certify_block_game(block_game, tmp_path):
    out = tmp_path / "certify.json"
    assert main(["certify", block_game, "--out", str(out)]) == 2
    doc = json.loads(out.read_text())
    sources = [c["source"] for c in doc["certificates"]]
    assert sources == [
        "prop5_multilayer_failure",
        "prop6_oneway",
        "prop7_complements_bdd",
        "chain_cycle_degenerate",
        "existence_check",
    ]
    assert doc["overall"] == "NotGuaranteedUnique"
    assert doc["equilibrium_count"] == 3


def test_stability_command(overlay_game, tmp_path):
    out = tmp_path / "stab.json"
    assert main(["stability", overlay_game, "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    verdicts = [e["stability"]["verdict"] for e in doc["equilibria"]]
    assert verdicts == ["NotStronglyStable", "StronglyStable"]


def test_stability_cap_exceeded(overlay_game):
    assert main(["stability", overlay_game, "--cap", "1"]) == 1


def test_experiment_multiplex_outputs(tmp_path):
    prefix = str(tmp_path / "sweep")
    code = main(
        [
            "experiment",
            "--mode",
            "multiplex-prop4",
            "--trials",
            "20",
            "--n-min",
            "3",
            "--n-max",
            "4",
            "--s",
            "2.0",
            "--seed",
            "5",
            "--out",
            prefix,
        ]
    )
    assert code == 0
    records = (tmp_path / "sweep_records.csv").read_text()
    summary = (tmp_path / "sweep_summary.csv").read_text()
    assert records.splitlines()[0] == (
        "trial,n,s,kappa,mode,verdict,ground_truth,false_detection"
    )
    assert len(records.splitlines()) == 1 + 2 * 20
    assert summary.splitlines()[0] == "n,s,mode,rate,trials"
    assert len(summary.splitlines()) == 3


def test_experiment_reruns_are_byte_identical(tmp_path):
    args = [
        "experiment",
        "--mode",
        "multiplex-prop3",
        "--trials",
        "15",
        "--n-min",
        "3",
        "--n-max",
        "3",
        "--seed",
        "9",
    ]
    a = str(tmp_path / "a")
    b = str(tmp_path / "b")
    assert main(args + ["--out", a]) == 0
    assert main(args + ["--out", b, "--workers", "2"]) == 0
    for suffix in ("_records.csv", "_summary.csv"):
        assert (tmp_path / ("a" + suffix)).read_bytes() == (
            tmp_path / ("b" + suffix)
        ).read_bytes()


def test_experiment_multilayer_outputs(tmp_path):
    prefix = str(tmp_path / "ml")
    code = main(
        [
            "experiment",
            "--mode",
            "multilayer",
            "--trials",
            "3",
            "--seed",
            "2",
            "--out",
            prefix,
        ]
    )
    assert code == 0
    map_lines = (tmp_path / "ml_map.csv").read_text().splitlines()
    assert map_lines[0].startswith("layer1,trial,lambda_min_layer1")
    assert len(map_lines) == 1 + 6 * 3
    rec_lines = (tmp_path / "ml_records.csv").read_text().splitlines()
    assert len(rec_lines) == 1 + 6 * 3 * 4


def test_ingest_normalize(tmp_path):
    csv_path = tmp_path / "calls.csv"
    csv_path.write_text("src,dst,weight\na,b,4.0\nb,a,1.0\nb,c,2.0\n")
    out = tmp_path / "layer.json"
    assert main(["ingest", str(csv_path), "--out", str(out)]) == 0
    m = ng.load_matrix(out)
    assert m.shape == (3, 3)
    assert m[0, 1] == 1.0
    assert m[1, 0] == 0.25


def test_ingest_merge_two_layers(tmp_path):
    first = tmp_path / "first.csv"
    first.write_text("src,dst,weight\na,b,2.0\n")
    second = tmp_path / "second.csv"
    second.write_text("src,dst,weight\na,b,1.0\nb,a,1.0\n")
    out = tmp_path / "merged.json"
    code = main(
        [
            "ingest",
            str(first),
            "--merge",
            str(second),
            "--alpha",
            "0.5",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    m = ng.load_matrix(out)
    assert m[0, 1] == pytest.approx(0.5 * 1.0 + 0.5 * 1.0)
    assert m[1, 0] == pytest.approx(0.5)


def test_ingest_then_sweep_kappa_pipeline(tmp_path):
    rng = np.random.default_rng(12)
    labels = [f"u{i}" for i in range(8)]
    rows_a = ["src,dst,weight"]
    rows_b = ["src,dst,weight"]
    for i in range(8):
        for j in range(8):
            if i != j:
                rows_a.append(f"{labels[i]},{labels[j]},{rng.uniform(0.5, 2.0):.3f}")
                rows_b.append(f"{labels[i]},{labels[j]},{rng.uniform(0.5, 2.0):.3f}")
    (tmp_path / "a.csv").write_text("\n".join(rows_a) + "\n")
    (tmp_path / "b.csv").write_text("\n".join(rows_b) + "\n")

    layer_a = tmp_path / "a.json"
    layer_b = tmp_path / "b.json"
    assert main(["ingest", str(tmp_path / "a.csv"), "--out", str(layer_a)]) == 0
    assert main(["ingest", str(tmp_path / "b.csv"), "--out", str(layer_b)]) == 0

    out = tmp_path / "curve.csv"
    code = main(
        [
            "sweep-kappa",
            str(layer_a),
            str(layer_b),
            "--communities",
            "2",
            "--community-size",
            "5",
            "--grid-points",
            "9",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "community_id,kappa,determinant"
    assert len(lines) == 1 + 2 * 9
    first = lines[1].split(",")
    assert first[0] == "0"
    assert float(first[1]) == pytest.approx(0.2)


def test_sweep_kappa_shape_mismatch(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    ng.save_matrix(np.zeros((3, 3)), a)
    ng.save_matrix(np.zeros((4, 4)), b)
    out = tmp_path / "c.csv"
    assert main(["sweep-kappa", str(a), str(b), "--out", str(out)]) == 1


def test_missing_game_file_exits_one(tmp_path):
    assert main(["solve", str(tmp_path / "nope.json")]) == 1


def test_unknown_subcommand_exits_one():
    assert main(["frobnicate"]) == 1


def test_malformed_game_document_exits_one(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 2, "entries": [0, 0, 0]}))
    assert main(["solve", str(path)]) == 1
