import json
import os
import subprocess
import sys

import pytest

from pidirr.cli import main, render_json
from pidirr.corpus import load_example


@pytest.fixture()
def xor_file(tmp_path):
    path = tmp_path / "xor.tsv"
    path.write_text(load_example("xor").distribution.to_tsv(), encoding="utf-8")
    return str(path)


@pytest.fixture()
def one_predictor_file(tmp_path):
    path = tmp_path / "tiny.tsv"
    path.write_text("# vars: A Y\n0\t0\t0.5\n1\t1\t0.5\n", encoding="utf-8")
    return str(path)


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_json(xor_file, capsys):
    code, out, err = run(["compute", "--input", xor_file, "--target", "Y"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["ibe"] == 1.0
    assert payload["whole_mi"] == 1.0
    assert payload["settings"]["seed"] == 0
    assert "1.000000000" in out  # 9-decimal rendering


def test_compute_human_and_tsv(xor_file, capsys):
    code, out, _ = run(["compute", "--input", xor_file, "--format", "human"], capsys)
    assert code == 0
    assert "IbDp" in out and "witness" in out
    code, out, _ = run(["compute", "--input", xor_file, "--format", "tsv"], capsys)
    assert code == 0
    assert "ibe\t1.000000000" in out


def test_compute_deterministic_bytes(xor_file, tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["compute", "--input", xor_file, "--target", "Y", "--seed", "0"]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_compute_one_predictor_is_usage_error(one_predictor_file, capsys):
    code, _, err = run(["compute", "--input", one_predictor_file], capsys)
    assert code == 2
    assert "usage error" in err


def test_compute_missing_input_flag(capsys):
    assert main(["compute"]) == 2


def test_compute_bad_file_is_domain_error(tmp_path, capsys):
    bad = tmp_path / "bad.tsv"
    bad.write_text("# vars: A B\n0\t0\tnope\n", encoding="utf-8")
    code, _, err = run(["compute", "--input", str(bad)], capsys)
    assert code == 1
    assert "error" in err
    missing = tmp_path / "missing.tsv"
    code, _, _ = run(["compute", "--input", str(missing)], capsys)
    assert code == 1


def test_unknown_subcommand(capsys):
    assert main(["frobnicate"]) == 2


def test_examples_table(capsys):
    code, out, _ = run(["examples", "--format", "human"], capsys)
    assert code == 0
    for name in ("xor", "xor_unique", "double_xor", "triple_xor", "parity"):
        assert name in out
    assert "MISMATCH" not in out


def test_examples_maxmi_reports_mismatch(capsys):
    code, out, _ = run(
        ["examples", "--measure", "maxmi", "--format", "human"], capsys
    )
    assert code == 1
    assert "MISMATCH" in out


def test_examples_emit_tsv_round_trip(tmp_path, capsys):
    out = tmp_path / "parity.tsv"
    assert main(["examples", "--name", "parity", "--emit-tsv", "--out", str(out)]) == 0
    code, json_out, _ = run(["compute", "--input", str(out)], capsys)
    assert code == 0
    assert json.loads(json_out)["ibap"] == 1.0


def test_examples_emit_tsv_requires_name(capsys):
    code, _, err = run(["examples", "--emit-tsv"], capsys)
    assert code == 2


def test_enumerate_outputs(capsys):
    code, out, _ = run(["enumerate", "--what", "bipartitions", "--n", "3", "--format", "human"], capsys)
    assert code == 0
    assert out.splitlines() == ["{X1 | X2 X3}", "{X1 X2 | X3}", "{X1 X3 | X2}"]
    code, out, _ = run(["enumerate", "--what", "almost-pairs", "--n", "3"], capsys)
    assert code == 0
    assert len(json.loads(out)["families"]) == 3
    code, out, _ = run(["enumerate", "--what", "parts", "--n", "4", "--format", "tsv"], capsys)
    assert code == 0
    assert len(out.splitlines()) == 14


def test_enumerate_n_guard(capsys):
    code, _, err = run(["enumerate", "--what", "parts", "--n", "1"], capsys)
    assert code == 2


def test_axioms_small_run(capsys, xor_file):
    code, out, _ = run(
        ["axioms", "--input", xor_file, "--trials", "2", "--seed", "1"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["all_passed"] is True
    assert set(payload["axioms"]) == {"GP", "Eq", "M0", "S0", "SR", "UB"}


def test_lattice_output(xor_file, capsys):
    code, out, _ = run(
        ["lattice", "--input", xor_file, "--vars", "X1 X2 Y X1,X2", "--format", "human"],
        capsys,
    )
    assert code == 0
    assert "H(X1,X2) = 2.000000000" in out
    assert "Y poorer than X1,X2" in out
    code, out, _ = run(["lattice", "--input", xor_file], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["entropies"]["Y"] == 1.0


def test_render_json_stability():
    text = render_json({"a": 1.0, "b": [1, 2.5], "c": {"d": True, "e": None}})
    assert json.loads(text) == {"a": 1.0, "b": [1, 2.5], "c": {"d": True, "e": None}}
    assert render_json(-1e-13) == "0.000000000"  # negative zero normalized


def test_console_entry_point(xor_file):
    proc = subprocess.run(
        [sys.executable, "-m", "pidirr.cli", "compute", "--input", xor_file],
        capture_output=True,
        text=True,
        env={**os.environ, "PID_THREADS": "2"},
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ibe"] == 1.0
