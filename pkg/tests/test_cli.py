from __future__ import annotations

import json
import logging
import subprocess
import sys

import numpy as np
import pytest

from qrep.assembler import build_generators
from qrep.cli import generators_from_json, generators_to_json, main, parse_config
from qrep.verifier import check_relations


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_spectra_mode(capsys):
    code, out = _run(capsys, "--algebra", "A2", "--weight", "2,1", "--t", "0.3", "--mode", "spectra")
    assert code == 0
    lines = out.out.splitlines()
    assert lines[0].split()[:2] == ["level", "lambda"]
    assert len(lines) == 8


def test_verify_mode_passes(capsys):
    code, out = _run(capsys, "--algebra", "G2", "--weight", "1,0", "--t", "0.5", "--mode", "verify")
    assert code == 0
    assert out.out.rstrip().endswith("PASS")
    assert "oracle" in out.out


def test_character_mode(capsys):
    code, out = _run(capsys, "--algebra", "B2", "--weight", "1,1", "--t", "0.3", "--mode", "character")
    assert code == 0
    assert "dimension 16" in out.out
    assert "reduction along (1,2): {3:2, 1:6, -1:6, -3:2}" in out.out


def test_build_json_round_trip(capsys):
    code, out = _run(capsys, "--algebra", "A2", "--weight", "1,1", "--t", "0.4")
    assert code == 0
    data = json.loads(out.out)
    assert data["dim"] == 8
    g = build_generators("A2", (1, 1), 0.4)
    back = generators_from_json(out.out)
    for name, m in g.matrices().items():
        assert np.array_equal(back.matrices()[name], m)
    assert check_relations(back).relative() == check_relations(g).relative()
    assert back.basis == g.basis


def test_trivial_json_has_no_triplets():
    data = json.loads(generators_to_json(build_generators("A2", (0, 0), 0.3)))
    assert data["dim"] == 1
    assert all(m["triplets"] == [] and m["rows"] == 1 for m in data["matrices"].values())


def test_json_output_is_deterministic(tmp_path):
    paths = [tmp_path / f"run{k}.json" for k in range(2)]
    for p in paths:
        assert main(["--algebra", "B2", "--weight", "1,1", "--t", "0.3", "--output", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_csv_to_directory(tmp_path):
    folder = tmp_path / "mats"
    assert main(["--algebra", "G2", "--weight", "1,0", "--t", "0.3", "--format", "csv", "--output", str(folder)]) == 0
    names = sorted(p.name for p in folder.iterdir())
    assert names == ["h1.csv", "h2.csv", "xm1.csv", "xm2.csv", "xp1.csv", "xp2.csv"]
    h1 = np.loadtxt(folder / "h1.csv", delimiter=",")
    assert np.diag(h1).tolist() == [-1, 1, -2, 0, 2, -1, 1]


def test_csv_to_stdout(capsys):
    code, out = _run(capsys, "--algebra", "A1", "--weight", "2", "--t", "0.3", "--format", "csv")
    assert code == 0
    assert out.out.count("# ") == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["--algebra", "A2", "--weight", "1,-1", "--t", "0.3"],
        ["--algebra", "A2", "--weight", "1,x", "--t", "0.3"],
        ["--algebra", "A2", "--weight", "1", "--t", "0.3"],
        ["--algebra", "A2", "--weight", "1,1", "--t", "0"],
        ["--algebra", "A2", "--weight", "1,1", "--t", "0.3", "--tol", "5"],
        ["--algebra", "E8", "--weight", "1", "--t", "0.3"],
    ],
)
def test_bad_input_exits_two(argv, capsys):
    with pytest.raises(SystemExit) as info:
        parse_config(argv)
    assert info.value.code == 2
    assert "error" in capsys.readouterr().err


def test_cap_exceeded_exits_one(capsys):
    code, out = _run(capsys, "--algebra", "G2", "--weight", "4,4", "--t", "0.3", "--mode", "spectra")
    assert code == 1
    assert "CapExceeded" in out.err


def test_log_level_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("QREP_LOG", "info")
    root = logging.getLogger()
    saved = root.handlers[:]
    root.handlers = []
    try:
        assert main(["--algebra", "A2", "--weight", "1,0", "--t", "0.3"]) == 0
        assert logging.getLogger("qrep").getEffectiveLevel() == logging.INFO
    finally:
        root.handlers = saved
        root.setLevel(logging.WARNING)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qrep", "--algebra", "A2", "--weight", "1,0", "--t", "0.3", "--mode", "verify"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
