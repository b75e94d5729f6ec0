"""Command-line driver: exit-status contract and byte-level determinism."""
import json
import pathlib

import pytest

from chaink0.cli import main

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_domination_ok(capsys):
    code, out, err = run(capsys, "verify", "--input", str(FIXTURES / "ideal.json"),
                         "--name", "dom1")
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert payload["report"]["ok"] is True
    assert payload["provenance"]["name"] == "dom1"


def test_verify_broken_map_exit_2(capsys):
    code, out, _ = run(capsys, "verify", "--input", str(FIXTURES / "bad.json"),
                       "--name", "brokenMap")
    assert code == 2
    assert json.loads(out)["report"]["ok"] is False


def test_verify_bad_complex_exit_2(capsys):
    code, out, _ = run(capsys, "verify", "--input", str(FIXTURES / "bad.json"),
                       "--name", "badComplex")
    assert code == 2
    codes = [v["code"] for v in json.loads(out)["report"]["violations"]]
    assert "complex.dd_nonzero" in codes


def test_homology_report(capsys):
    code, out, _ = run(capsys, "homology", "--input", str(FIXTURES / "rp2.json"),
                       "--name", "X")
    assert code == 0
    groups = json.loads(out)["homology"]
    assert groups["0"] == {"betti": 1, "torsion": []}
    assert groups["1"] == {"betti": 0, "torsion": [2]}
    assert "2" not in groups  # trivial groups are omitted


def test_obstruction_of_ideal_domination(capsys):
    code, out, _ = run(capsys, "obstruction",
                       "--input", str(FIXTURES / "ideal.json"), "--name", "dom1")
    assert code == 0
    payload = json.loads(out)
    assert payload["chi"] == 1
    assert payload["sigma"]["trivial"] is False
    assert payload["oracle"]["status"] == "non_principal"
    assert payload["oracle"]["norm"] == 2


def test_trim_rejects_torsion_bottom(capsys):
    # circle in rp2.json has nonzero bottom homology, so trimming must refuse
    code, out, _ = run(capsys, "trim", "--input", str(FIXTURES / "rp2.json"),
                       "--name", "circle", "--below", "0")
    assert code == 2
    rep = json.loads(out)["report"]
    assert rep["violations"][0]["code"] == "trim.homology_nonvanishing"
    assert rep["violations"][0]["degree"] == 0


def test_malformed_input_exit_1(capsys):
    code, out, err = run(capsys, "verify",
                         "--input", str(FIXTURES / "malformed.json"),
                         "--name", "anything")
    assert code == 1 and out == ""
    assert err.startswith("error:")


def test_unresolved_name_exit_1(capsys):
    code, _, err = run(capsys, "verify", "--input", str(FIXTURES / "rp2.json"),
                       "--name", "ghost")
    assert code == 1 and "unresolved" in err


def test_missing_file_exit_1(capsys):
    code, _, err = run(capsys, "homology", "--input", str(FIXTURES / "nope.json"),
                       "--name", "X")
    assert code == 1 and "cannot read" in err


def test_laurent_resolve_module(capsys):
    code, out, _ = run(capsys, "laurent-resolve",
                       "--input", str(FIXTURES / "rp2.json"),
                       "--name", "split", "--window", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["window_check"]["N"] == 3
    assert payload["window_check"]["injective"] is True
    assert payload["complex"]["extension"] == "laurent"


def test_swindle_module(capsys):
    code, out, _ = run(capsys, "swindle", "--input", str(FIXTURES / "rp2.json"),
                       "--name", "split", "--window", "4")
    assert code == 0
    groups = json.loads(out)["homology"]
    assert groups["0"]["betti"] == 1
    assert all(str(j) not in groups for j in (1, 2, 3))


def test_realize_module(capsys):
    code, out, _ = run(capsys, "realize", "--input", str(FIXTURES / "ideal.json"),
                       "--name", "ideal", "--degree", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["chi"] == -1
    assert payload["oracle"]["status"] == "non_principal"


def test_torus_of_endomorphism(capsys):
    code, out, _ = run(capsys, "torus", "--input", str(FIXTURES / "rp2.json"),
                       "--name", "flip")
    assert code == 0
    assert json.loads(out)["complex"]["extension"] == "laurent"


def test_text_format(capsys):
    code, out, _ = run(capsys, "homology", "--input", str(FIXTURES / "rp2.json"),
                       "--name", "circle", "--format", "text")
    assert code == 0
    assert "betti" in out and not out.lstrip().startswith("{")


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "report.json"
    code, out, _ = run(capsys, "homology", "--input", str(FIXTURES / "rp2.json"),
                       "--name", "circle", "--output", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["command"] == "homology"


def test_corpus_determinism(capsys):
    _, first, _ = run(capsys, "corpus", "--seed", "7", "--count", "3",
                      "--ring", "c2")
    _, again, _ = run(capsys, "corpus", "--seed", "7", "--count", "3",
                      "--ring", "c2")
    _, other, _ = run(capsys, "corpus", "--seed", "8", "--count", "3",
                      "--ring", "c2")
    assert first == again
    assert first != other
    doc = json.loads(first)
    assert doc["ring"]["kind"] == "group_ring"
    assert len(doc["dominations"]) == 3


def test_repeated_runs_byte_identical(capsys):
    args = ("obstruction", "--input", str(FIXTURES / "ideal.json"),
            "--name", "dom1")
    _, one, _ = run(capsys, *args)
    _, two, _ = run(capsys, *args)
    assert one == two
