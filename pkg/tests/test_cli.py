import csv
import json
import shutil

import pytest

from tree_partitions.cli import CSV_HEADER, EXIT_ERROR, EXIT_OK, EXIT_VIOLATIONS, main, parse_seeds
from tree_partitions.errors import InputError
from tree_partitions.tpart import f_bound


def _trace_k(trace_path):
    return json.loads(trace_path.read_text())["records"][0]["k"]


def _run(capsys, *argv):
    code = main([str(arg) for arg in argv])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_parse_seeds():
    assert parse_seeds("") == frozenset()
    assert parse_seeds("1,3") == frozenset({0, 2})
    with pytest.raises(InputError):
        parse_seeds("0")
    with pytest.raises(InputError):
        parse_seeds("a,b")


def test_gen_then_verify(tmp_path, capsys):
    code, out = _run(capsys, "gen", "comb", "--n", 4, "--out-dir", tmp_path)
    assert code == EXIT_OK
    assert out["instance"] == "comb-4"
    graph, pd = tmp_path / "comb-4.gr", tmp_path / "comb-4.pd.json"
    assert graph.exists() and pd.exists()
    manifest = json.loads((tmp_path / "comb-4.manifest.json").read_text())
    assert manifest["subcommand"] == "gen"
    assert manifest["parameters"]["n"] == 4

    code, out = _run(capsys, "verify", graph, pd)
    assert code == EXIT_OK
    assert out["valid"]
    assert out["width"] <= 2


def test_partition_comb(tmp_path, capsys):
    _run(capsys, "gen", "comb", "--n", 10, "--out-dir", tmp_path)
    graph, pd = tmp_path / "comb-10.gr", tmp_path / "comb-10.pd.json"
    prefix = tmp_path / "comb-10"
    code, out = _run(capsys, "partition", graph, pd, "--d", 3, "--out", prefix,
                     "--dot", tmp_path / "comb-10.dot")
    assert code == EXIT_OK
    assert out["width"] <= 78
    assert out["witness_pw"] <= 5
    assert out["f_bound"] == f_bound(out["k"], 3, 0)
    for suffix in (".tp.json", ".tree.gr", ".witness.json", ".trace.json", ".manifest.json"):
        assert (tmp_path / f"comb-10{suffix}").exists()
    manifest = json.loads((tmp_path / "comb-10.manifest.json").read_text())
    assert str(tmp_path / "comb-10.tree.gr") in manifest["outputs"]
    assert "cluster_0" in (tmp_path / "comb-10.dot").read_text()

    code, out = _run(capsys, "verify", graph, tmp_path / "comb-10.tp.json")
    assert code == EXIT_OK
    assert out["valid"]


def test_partition_is_reproducible(tmp_path, capsys):
    _run(capsys, "gen", "fan", "--n", 12, "--out-dir", tmp_path)
    graph, pd = tmp_path / "fan-12.gr", tmp_path / "fan-12.pd.json"
    _run(capsys, "partition", graph, pd, "--seeds", "1,5", "--out", tmp_path / "first")
    _run(capsys, "partition", graph, pd, "--seeds", "1,5", "--out", tmp_path / "second")
    for suffix in (".tp.json", ".witness.json", ".trace.json"):
        assert ((tmp_path / f"first{suffix}").read_bytes()
                == (tmp_path / f"second{suffix}").read_bytes())


def test_partition_yaml_output(tmp_path, capsys):
    _run(capsys, "gen", "lower-bound", "--i", 2, "--n", 3, "--out-dir", tmp_path, "--format", "yml")
    graph, pd = tmp_path / "G2-3.gr", tmp_path / "G2-3.pd.yml"
    code, _ = _run(capsys, "partition", graph, pd, "--out", tmp_path / "g", "--format", "yml")
    assert code == EXIT_OK
    code, out = _run(capsys, "verify", graph, tmp_path / "g.tp.yml")
    assert code == EXIT_OK
    code, out = _run(capsys, "verify", tmp_path / "g.tree.gr", tmp_path / "g.witness.yml")
    assert code == EXIT_OK
    assert out["width"] <= 2 * _trace_k(tmp_path / "g.trace.json") + 1


def test_verify_reports_moved_vertex(tmp_path, data_dir, capsys):
    moved = tmp_path / "moved.tp.json"
    moved.write_text(json.dumps({
        "kind": "tree-partition",
        "tree": {"nodes": 3, "edges": [[0, 1], [1, 2]]},
        "bags": {"0": [0, 1], "1": [], "2": [2, 3]},
        "witness": None,
    }))
    code, out = _run(capsys, "verify", data_dir / "path4.gr", moved)
    assert code == EXIT_VIOLATIONS
    assert not out["valid"]
    assert {"kind": "edge-stretched", "subject": [1, 2]} in out["violations"]


def test_witness_verifies_against_written_tree(tmp_path, capsys):
    _run(capsys, "gen", "comb", "--n", 4, "--out-dir", tmp_path)
    prefix = tmp_path / "c"
    _run(capsys, "partition", tmp_path / "comb-4.gr", tmp_path / "comb-4.pd.json", "--out", prefix)
    code, out = _run(capsys, "verify", tmp_path / "c.tree.gr", tmp_path / "c.witness.json")
    assert code == EXIT_OK
    assert out["valid"]
    code, _ = _run(capsys, "verify", tmp_path / "comb-4.gr", tmp_path / "c.witness.json")
    assert code == EXIT_VIOLATIONS


def test_verify_list_shaped_bags_is_a_parse_error(tmp_path, data_dir, capsys):
    listed = tmp_path / "list.tp.json"
    listed.write_text(json.dumps({
        "kind": "tree-partition",
        "tree": {"nodes": 2, "edges": [[0, 1]]},
        "bags": [[0, 1], [2, 3]],
    }))
    assert main(["verify", str(data_dir / "path4.gr"), str(listed)]) == EXIT_ERROR
    assert "error:" in capsys.readouterr().err


def test_verify_scattered_decomposition(data_dir, capsys):
    code, out = _run(capsys, "verify", data_dir / "path4.gr", data_dir / "path4_scattered.pd.json")
    assert code == EXIT_VIOLATIONS
    assert out["violations"] == [{"kind": "vertex-scattered", "subject": 1}]


@pytest.mark.parametrize("graph, artifact", [
    ("path4.gr", "truncated.pd.json"),
    ("bad_vertex.gr", "path4.pd.json"),
    ("path4.gr", "missing.pd.json"),
    ("path4.gr", "settings.yml"),
])
def test_verify_errors(data_dir, capsys, graph, artifact):
    assert main(["verify", str(data_dir / graph), str(data_dir / artifact)]) == EXIT_ERROR
    assert "error:" in capsys.readouterr().err


def test_pw(data_dir, tmp_path, capsys):
    code, out = _run(capsys, "pw", data_dir / "triangle.gr", "--out", tmp_path / "tri.pd.json")
    assert code == EXIT_OK
    assert out["pathwidth"] == 2
    assert out["witness_width"] == 2
    code, out = _run(capsys, "verify", data_dir / "triangle.gr", tmp_path / "tri.pd.json")
    assert code == EXIT_OK


@pytest.mark.parametrize("kind, expected", [
    ("pathwidth", 1), ("path-partition", 1), ("tree-partition", 1),
])
def test_oracle(data_dir, capsys, kind, expected):
    code, out = _run(capsys, "oracle", kind, data_dir / "path4.gr")
    assert code == EXIT_OK
    assert out["value"] == expected


def test_config_limits_apply(data_dir, tmp_path, capsys):
    _run(capsys, "gen", "path", "--n", 7, "--out-dir", tmp_path)
    code = main(["--config", str(data_dir / "settings.yml"), "--log-level", "WARNING",
                 "oracle", "tree-partition", str(tmp_path / "path-7.gr")])
    assert code == EXIT_ERROR
    assert "limited to 6" in capsys.readouterr().err


def _read_rows(path):
    with open(path, newline="") as csv_file:
        return list(csv.reader(csv_file))


@pytest.mark.parametrize("jobs", [1, 2])
def test_sweep(tmp_path, capsys, jobs):
    sweep_csv = tmp_path / "comb.csv"
    assert main(["sweep", "comb", "--n", "3", "5", "--d", "3", "--csv", str(sweep_csv),
                 "--jobs", str(jobs)]) == EXIT_OK
    assert main(["sweep", "comb", "--n", "4", "--d", "3", "--csv", str(sweep_csv)]) == EXIT_OK
    rows = _read_rows(sweep_csv)
    assert rows[0] == CSV_HEADER
    assert [row[0] for row in rows[1:]] == ["comb-3", "comb-5", "comb-4"]
    for row in rows[1:]:
        record = dict(zip(CSV_HEADER, row))
        k, d = int(record["k"]), int(record["d"])
        assert int(record["width"]) <= int(record["f_bound"]) == f_bound(k, d, 0)
        assert int(record["witness_pw"]) <= int(record["pw_bound"]) == 2 * k + 1
    assert (tmp_path / "comb.csv.manifest.json").exists()


def test_sweep_random_trees(tmp_path):
    sweep_csv = tmp_path / "trees.csv"
    assert main(["--seed", "7", "sweep", "random-tree", "--n", "8", "12",
                 "--csv", str(sweep_csv)]) == EXIT_OK
    first = _read_rows(sweep_csv)
    shutil.move(sweep_csv, tmp_path / "first.csv")
    main(["--seed", "7", "sweep", "random-tree", "--n", "8", "12", "--csv", str(sweep_csv)])
    assert _read_rows(sweep_csv) == first
