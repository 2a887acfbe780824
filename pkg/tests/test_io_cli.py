from __future__ import annotations

import csv
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antimagic_join import cli
from antimagic_join.constructions import EVEN, apply_matrix, label_join, label_matrix
from antimagic_join.errors import InvalidInput, InvalidLabeling
from antimagic_join.graph import join, make_matching, make_null
from antimagic_join.io import (
    graph_from_json,
    graph_to_json,
    labeling_to_json,
    labeling_from_json,
    load_graph,
    load_labeling,
    matrix_from_csv,
    matrix_to_csv,
    save_graph,
    save_labeling,
    sha256_file,
    to_dot,
)
from antimagic_join.partitions import build_family_member


@given(st.sampled_from(["even", "odd"]), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=20, deadline=None)
def test_graph_round_trip(parity, n, k):
    graph, lab, _ = label_join(n, k, parity)
    with tempfile.TemporaryDirectory() as d:
        g1, l1 = Path(d) / "g.json", Path(d) / "l.json"
        save_graph(graph, g1)
        save_labeling(lab, l1)
        g2 = load_graph(g1)
        assert g2 == graph
        assert load_labeling(l1, g2) == lab
        save_graph(g2, Path(d) / "g2.json")
        assert (Path(d) / "g2.json").read_bytes() == g1.read_bytes()


def test_graph_json_shape():
    graph, lab, _ = label_join(1, 1, EVEN)
    obj = graph_to_json(graph)
    assert obj["vertices"][0] == {"kind": "U", "i": 1}
    assert all(a < b for a, b in obj["edges"])
    assert labeling_to_json(lab)["labels"][0][0] == 0


def test_malformed_files():
    with pytest.raises(InvalidInput):
        graph_from_json({"vertices": [{"kind": "U", "i": 1}], "edges": [[0, 3]]})
    with pytest.raises(InvalidInput):
        graph_from_json({"edges": []})
    graph, _, _ = label_join(1, 1, EVEN)
    with pytest.raises(InvalidLabeling):
        labeling_from_json({"labels": [[0, 1]]}, graph)
    with pytest.raises(InvalidLabeling):
        labeling_from_json({"labels": [[99, 1]]}, graph)
    with pytest.raises(InvalidLabeling):
        labeling_from_json({"labels": [[0, 1], [0, 2]]}, graph)


def test_matrix_csv():
    mat = label_matrix(1, 1, EVEN)
    text = matrix_to_csv(mat)
    rows = matrix_from_csv(text)
    assert len(rows) == 5 and all(len(r) == 3 for r in rows)
    assert sorted(x for r in rows for x in r) == list(range(1, 16))
    header = next(csv.reader([text.splitlines()[0]]))
    assert header == ["role", "i=1", "i=2", "i=3"]


def test_dot_output():
    mat = label_matrix(2, 4, EVEN)
    graph, lab = apply_matrix(mat)
    text = to_dot(graph, lab)
    assert text == to_dot(graph, lab)
    assert text.count(" -- ") == 81
    assert text.count("[label=") == 54 + 81
    plain = to_dot(graph)
    assert "fillcolor=\"white\"" in plain and "--" in plain
    assert "[label=" not in plain.split("--", 1)[1].split("\n", 1)[0]


def test_dot_shows_merged_colour():
    member = build_family_member(2, 1, 1, EVEN, ["rows", "rows", "columns", "rows"])
    text = to_dot(member.graph, member.labeling)
    six = [v for v in member.graph.vertices if member.graph.degree(v) == 6]
    assert six
    for v in six:
        assert f'"{v}\\n273"' in text


def test_dot_rejects_foreign_labeling():
    g1, l1, _ = label_join(1, 1, EVEN)
    g2, _, _ = label_join(1, 2, EVEN)
    with pytest.raises(InvalidLabeling):
        to_dot(g2, l1)


def run(argv):
    return cli.main(argv)


def test_construct_writes_manifest(tmp_path, capsys):
    out = tmp_path / "even"
    assert run(["construct", "--parity", "even", "-n", "2", "-k", "4", "--merge", "--out-dir", str(out),
                "--matrix", str(out / "m.csv")]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] and report["colors"] == [169, 205, 819]
    manifest = json.loads((out / "manifest.json").read_text())
    for path, digest in manifest["outputs"].items():
        assert sha256_file(path) == digest
    assert manifest["verdicts"] == {"local_antimagic": True}
    assert len(matrix_from_csv((out / "m.csv").read_text())) == 9


def test_construct_odd_matrix(tmp_path):
    out = tmp_path / "odd"
    assert run(["construct", "--parity", "odd", "-n", "1", "-k", "1", "--out-dir", str(out),
                "--matrix", str(out / "m.csv")]) == 0
    rows = matrix_from_csv((out / "m.csv").read_text())
    assert len(rows) == 7 and len(rows[0]) == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "--parity", "even", "-n", "0", "-k", "1"],
        ["construct", "--parity", "sideways", "-n", "1", "-k", "1"],
        ["sweep", "--n-range", "4:2"],
        ["sweep", "--n-range", "x"],
        ["family", "--parity", "even", "-n", "1", "-r", "1", "-s", "1", "--schemes", ","],
        ["verify", "missing.json", "missing2.json"],
    ],
)
def test_usage_errors(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    try:
        code = run(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    assert run(["sweep", "--parity", "odd", "--n-range", "1:6", "--k-range", "1:6", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 36
    assert {r["verdict"] for r in rows} == {"pass"}


def test_sweep_with_chi(capsys):
    assert run(["sweep", "--parity", "even", "--n-range", "1:2", "--k-range", "1", "--chi"]) == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert [r["chi"] for r in rows] == ["3", "3"]


def test_family_and_export(tmp_path, capsys):
    out = tmp_path / "fam"
    assert run(["family", "--parity", "even", "-n", "2", "-r", "1", "-s", "1", "--schemes", "rows",
                "--delete-add-depth", "1", "--max-members", "10", "--out-dir", str(out)]) == 0
    summary = json.loads((out / "family.json").read_text())["members"]
    assert summary and all(m["ok"] for m in summary)
    capsys.readouterr()
    g, lab = out / "member_000.graph.json", out / "member_000.labeling.json"
    assert run(["export-dot", str(g), "--labels", str(lab), "--out", str(tmp_path / "m.dot")]) == 0
    assert (tmp_path / "m.dot").read_text().startswith("graph")
    assert run(["verify", str(g), str(lab), "--expect-colors", "3"]) == 0
    assert run(["verify", str(g), str(lab), "--expect-colors", "4"]) == 1


def test_oracle_commands(tmp_path, capsys):
    small, big = tmp_path / "small.json", tmp_path / "big.json"
    save_graph(join(make_matching(1), make_null(2)), small)
    save_graph(join(make_matching(3), make_null(2)), big)
    assert run(["oracle", "chi-la", str(small)]) == 0
    assert json.loads(capsys.readouterr().out)["chi_la"] == 3
    assert run(["oracle", "chi-la", str(big)]) == 1
    assert json.loads(capsys.readouterr().out)["status"] == "aborted-at-limit"
    assert run(["oracle", "exists", str(small)]) == 0
    assert json.loads(capsys.readouterr().out)["exists"] is True
    assert run(["oracle", "cross-validate", "--parity", "odd", "-n", "1", "-k", "1"]) == 0


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "antimagic_join", "construct", "--parity", "even", "-n", "1", "-k", "1",
         "--merge", "--out-dir", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["colors"] == [18, 24, 57]
