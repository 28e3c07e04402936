"""CLI: subcommand behavior, exit codes, deterministic output."""

import json

import pytest

from xctangle.cli import main

IDENTITY = "strands: 1\ntop: 1\nchords:\nstrand 1:\n"
TREFOIL_CODE = "strands: 1\nstrand 1: O1+ U2+ O3+ U1+ O2+ U3+\n"


@pytest.fixture
def files(tmp_path):
    idf = tmp_path / "id.txt"
    idf.write_text(IDENTITY)
    tre = tmp_path / "tre.txt"
    tre.write_text(TREFOIL_CODE)
    return tmp_path, idf, tre


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_identity(files, capsys):
    _, idf, _ = files
    code, out, _ = run(capsys, "validate", str(idf))
    assert code == 0 and out == "valid\n"


def test_parse_error_exit_2(files, capsys):
    tmp, _, _ = files
    bad = tmp / "bad.txt"
    bad.write_text("strands: x\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and "line 1" in err


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "canon", "/nonexistent/x.txt")
    assert code == 2 and "cannot read" in err


def test_lift_framing_pipeline(files, capsys, tmp_path):
    _, _, tre = files
    code, out, _ = run(capsys, "lift", str(tre))
    assert code == 0
    lifted = tmp_path / "lifted.txt"
    lifted.write_text(out)
    code, out, _ = run(capsys, "framing", str(lifted))
    assert code == 0 and out == "3\n"
    code, out, _ = run(capsys, "forget", str(lifted))
    assert code == 0 and out == TREFOIL_CODE.replace(
        "strands: 1\n", "strands: 1\ntop: 1\n")


def test_bracket_golden(files, capsys):
    _, _, tre = files
    code, out, _ = run(capsys, "bracket", str(tre))
    assert code == 0 and out.strip() == "-q^8 + q^6 + q^2"


def test_axioms_ok(capsys):
    code, out, _ = run(capsys, "axioms")
    assert code == 0 and "all: ok" in out


def test_zeval_identity(files, capsys):
    _, idf, _ = files
    code, out, _ = run(capsys, "zeval", str(idf))
    assert code == 0 and out.splitlines()[0] == "sigma: 1"


def test_compose_tensor(files, capsys):
    _, idf, _ = files
    code, out, _ = run(capsys, "tensor", str(idf), str(idf))
    assert code == 0 and out.startswith("strands: 2")
    code, out, _ = run(capsys, "compose", str(idf), str(idf))
    assert code == 0 and out.startswith("strands: 1")


def test_tangle_round_trip(files, capsys, tmp_path):
    _, idf, _ = files
    code, out, _ = run(capsys, "to-tangle", str(idf))
    assert code == 0
    tf = tmp_path / "t.txt"
    tf.write_text(out)
    code, out2, _ = run(capsys, "to-gauss", str(tf))
    assert code == 0 and out2 == IDENTITY


def test_moves_list_apply_and_bad_index(files, capsys):
    _, idf, _ = files
    code, out, _ = run(capsys, "moves", "list", str(idf), "--kind", "G2")
    assert code == 0 and out.strip().endswith("total: 2")
    code, out, _ = run(capsys, "moves", "apply", str(idf),
                       "--kind", "G2", "--index", "0")
    assert code == 0 and "chords: 1:+ 2:-" in out
    code, _, err = run(capsys, "moves", "apply", str(idf),
                       "--kind", "G2", "--index", "99")
    assert code == 1 and "out of range" in err


def test_moves_orbit_json(files, capsys):
    _, idf, _ = files
    code, out, _ = run(capsys, "moves", "orbit", str(idf),
                       "--max-depth", "1", "--max-size", "2",
                       "--format", "json-lines")
    assert code == 0
    last = json.loads(out.splitlines()[-1])
    assert last["truncated"] is True and last["size"] >= 1


def test_pair_formula(files, capsys, tmp_path):
    _, _, tre = files
    code, out, _ = run(capsys, "lift", str(tre))
    lifted = tmp_path / "lifted.txt"
    lifted.write_text(out)
    formula = tmp_path / "f.txt"
    formula.write_text(
        "term 2\nstrands: 1\nchords: 1:?\nstrand 1: U1 O1\n\n"
        "term -1\nstrands: 1\nchords:\nstrand 1: D?\n")
    code, out, _ = run(capsys, "pair", "--formula", str(formula),
                       "--diagram", str(lifted))
    assert code == 0 and out == "3\n"


def test_deterministic_output(files, capsys):
    _, _, tre = files
    outs = set()
    for _ in range(2):
        code, out, _ = run(capsys, "lift", str(tre))
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_selftest_single_json(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "1",
                       "--format", "json-lines")
    assert code == 0
    rec = json.loads(out.splitlines()[0])
    assert rec["criterion"] == 1 and rec["passed"] is True
