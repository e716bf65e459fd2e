import json
import os
import subprocess
import sys

import pytest

from pilab import corpus
from pilab.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def corpus_file(name):
    return str(corpus.data_path(name))


def test_corpus_files_match_builders():
    for name in corpus.names():
        shipped = corpus.load(name)
        built = corpus.build(name)
        assert shipped.dim == built.dim
        assert shipped.table == built.table
        assert shipped.unit_coords == built.unit_coords
        assert shipped.basis_names == built.basis_names


def test_inspect_m2(capsys):
    code, out = run_cli(["inspect", "--input", corpus_file("m2")], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["blocks"] == [2]
    assert doc["t"] == 4 and doc["s"] == 0


def test_inspect_ut11(capsys):
    code, out = run_cli(["inspect", "--input", corpus_file("ut11")], capsys)
    doc = json.loads(out)
    assert doc["blocks"] == [1, 1]
    assert doc["t"] == 2 and doc["s"] == 1 and doc["q"] == 2


def test_inspect_malformed_table(tmp_path, capsys):
    bad = {"dim": 2, "basis": ["x", "y"], "unit": None,
           "table": [[[0, 1], [0, 0]], [[0, 0], [1, 0]]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code = main(["inspect", "--input", str(path)])
    assert code == 2


def test_codim_commutative(capsys):
    code, out = run_cli(["codim", "--input", corpus_file("q"), "-n", "4"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"] == [[1, 1], [2, 1], [3, 1], [4, 1]]


def test_codim_nil2(capsys):
    code, out = run_cli(["codim", "--input", corpus_file("nil2"), "-n", "3"], capsys)
    doc = json.loads(out)
    assert doc["rows"] == [[1, 1], [2, 0], [3, 0]]


def test_cochar_m2(capsys):
    code, out = run_cli(["cochar", "--input", corpus_file("m2"), "-n", "2"], capsys)
    doc = json.loads(out)
    row = doc["rows"][1]
    assert row["codimension"] == 2
    assert [[2], 1] in row["multiplicities"]
    assert [[1, 1], 1] in row["multiplicities"]


def test_kemer_m2(capsys):
    code, out = run_cli(["kemer", "--input", corpus_file("m2"), "--mu", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["ts"] == [4, 0]
    assert doc["fundamental"] == "verified"


def test_kemer_qplusq(capsys):
    code, out = run_cli(["kemer", "--input", corpus_file("qplusq"), "--mu", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["fundamental"] == "refuted"
    assert doc["kemer_verified"] == [1, 0]


def test_hilbert_trace_ring(capsys):
    code, out = run_cli(["hilbert", "--input", corpus_file("m2"), "-m", "2",
                         "-d", "4", "--trace-ring"], capsys)
    doc = json.loads(out)
    assert doc["hilbert"]["dims"] == [1, 2, 6, 10, 20]


def test_hilbert_fit(capsys):
    code, out = run_cli(["hilbert", "--input", corpus_file("q"), "-m", "2",
                         "-d", "4", "--fit", "1,1"], capsys)
    doc = json.loads(out)
    assert doc["fit"]["numerator"] == [1]


def test_vpart_commands(tmp_path, capsys):
    vecs = tmp_path / "vecs.json"
    vecs.write_text(json.dumps({"p": 2, "vectors": [[1, 0], [0, 1], [1, 1]]}))
    code, out = run_cli(["vpart", "delta", "--input", str(vecs)], capsys)
    assert json.loads(out)["delta"] == 3
    code, out = run_cli(["vpart", "count", "--input", str(vecs), "-b", "2,1"], capsys)
    assert json.loads(out)["count"] == 2
    code, out = run_cli(["vpart", "cells", "--input", str(vecs)], capsys)
    assert len(json.loads(out)["cells"]["cells"]) == 2
    code, out = run_cli(["vpart", "quasi", "--input", str(vecs), "--verify"], capsys)
    assert code == 0
    assert json.loads(out)["verified"] is True


def test_dims_command(capsys):
    code, out = run_cli(["dims", "--blocks", "2", "-m", "3"], capsys)
    doc = json.loads(out)
    assert doc["gk_dimension"] == 9
    assert doc["repvariety_dimension"] == 9
    code, out = run_cli(["dims", "-t", "4", "--qinv", "1"], capsys)
    assert json.loads(out)["colength_dimension"] == 7


def test_text_format(capsys):
    code, out = run_cli(["inspect", "--input", corpus_file("m2"),
                         "--format", "text"], capsys)
    assert code == 0
    assert "blocks" in out and "{" not in out


def test_exit_code_input_error():
    assert main(["inspect", "--input", "/definitely/not/there.json"]) == 2


def test_golden_determinism_across_workers(capsys):
    outputs = []
    for workers in ("1", "4"):
        code, out = run_cli(["cochar", "--input", corpus_file("ut11"),
                             "-n", "3", "--workers", workers], capsys)
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_golden_determinism_repeat_run(capsys):
    outs = set()
    for _ in range(2):
        _, out = run_cli(["kemer", "--input", corpus_file("ut11"),
                          "--mu", "2", "--seed", "0"], capsys)
        outs.add(out)
    assert len(outs) == 1


GOLDEN_INSPECT_UT21 = {
    "blocks": [2, 1], "command": "inspect", "dim": 7, "has_unit": True,
    "input": "ut21.json", "q": 2, "radical_dim": 2, "s": 1, "t": 5,
}


def test_golden_inspect_ut21(capsys):
    _, out = run_cli(["inspect", "--input", corpus_file("ut21")], capsys)
    assert json.loads(out) == GOLDEN_INSPECT_UT21


def test_time_budget_env(tmp_path):
    env = dict(os.environ, PILAB_BUDGET_MS="1",
               PYTHONPATH=os.pathsep.join(sys.path))
    proc = subprocess.run(
        [sys.executable, "-m", "pilab.cli", "cochar",
         "--input", corpus_file("m2"), "-n", "5"],
        capture_output=True, text=True, env=env)
    assert proc.returncode == 3
