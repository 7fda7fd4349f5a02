"""Command line behaviour: formats, round trips, exit codes."""

import json

import pytest

from monres.cli import main

from conftest import IDEALS


@pytest.fixture
def ideal_file(tmp_path):
    def write(name):
        p = tmp_path / f"{name}.ideal"
        p.write_text(IDEALS[name] + "\n")
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_lattice_text_and_json(capsys, ideal_file):
    path = ideal_file("cone3")
    code, out = run(capsys, "lattice", path)
    assert code == 0
    assert "A={1,2,3}" in out.replace(" ", "")
    code, out = run(capsys, "--json", "lattice", path)
    doc = json.loads(out)
    assert {tuple(e["A"]) for e in doc["elements"]} == {
        (), (1,), (2,), (3,), (1, 2), (1, 2, 3)}


def test_betti_totals(capsys, ideal_file):
    code, out = run(capsys, "betti", ideal_file("hexagon"))
    assert code == 0
    assert out.strip().splitlines()[-1] == "totals: 1 6 9 6 2"


def test_resolve_verify_roundtrip(capsys, ideal_file, tmp_path):
    code, out = run(capsys, "--json", "resolve", ideal_file("four_gens"))
    assert code == 0
    dump = tmp_path / "res.json"
    dump.write_text(out)
    code, report = run(capsys, "verify", str(dump))
    assert code == 0
    assert "resolution: PASS" in report
    # byte-equal frames after re-emitting
    doc1 = json.loads(out)
    from monres.resolutions import MultigradedComplex

    doc2 = json.loads(MultigradedComplex.from_json(out).to_json())
    assert doc1["frames"] == doc2["frames"]


def test_verify_failure_exit_code(capsys, ideal_file, tmp_path):
    code, out = run(capsys, "--json", "resolve", ideal_file("triangle"))
    doc = json.loads(out)
    doc["frames"][1][0][0] = "0"  # break the top map
    dump = tmp_path / "broken.json"
    dump.write_text(json.dumps(doc))
    code, report = run(capsys, "verify", str(dump))
    assert code == 2
    assert "FAIL" in report


def test_poset_rlm_commands(capsys, ideal_file, tmp_path):
    code, out = run(capsys, "poset", ideal_file("cone3"))
    assert code == 2  # not a resolution: verification exit code
    assert "complex=no" in out
    code, out = run(capsys, "rlm", ideal_file("cone3b"))
    assert code == 0
    assert "resolution=yes" in out
    choices = tmp_path / "choices.json"
    choices.write_text(json.dumps({
        "bases": [{"A": [1, 2, 3], "dim": 0, "chains": ["-1+3"]}],
        "preimages": [{"A": [1, 2, 3], "dim": 0, "j": 0, "chain": "-2+3"}],
    }))
    code, out = run(capsys, "rlm", ideal_file("cone3b"), "--choices", str(choices))
    assert code == 0 and "-b^2" in out


def test_classify_json(capsys, ideal_file):
    code, out = run(capsys, "--json", "classify", ideal_file("rigid4"))
    doc = json.loads(out)
    assert doc["rigid"]["verdict"] == "yes"
    assert doc["betti_linear"]["verdict"] == "yes"
    assert doc["scarf"]["verdict"] == "no"


def test_scarf_command(capsys, ideal_file):
    code, out = run(capsys, "scarf", ideal_file("triangle"))
    assert code == 0
    assert out.split() == ["{}", "1", "2", "3"]


def test_minimize_and_taylor(capsys, ideal_file):
    code, out = run(capsys, "taylor", ideal_file("triangle"))
    assert code == 0 and "degree 3" in out
    code, out = run(capsys, "minimize", ideal_file("triangle"))
    assert code == 0 and "degree 3" not in out and "taylor basis" in out


def test_approx_command(capsys, ideal_file):
    code, out = run(capsys, "approx", ideal_file("four_gens"))
    assert code == 0
    assert "complex: no" in out


def test_random_reproducible(capsys):
    _, out1 = run(capsys, "random", "--r", "4", "--n", "3", "--maxdeg", "3",
                  "--seed", "11", "--count", "3")
    _, out2 = run(capsys, "random", "--r", "4", "--n", "3", "--maxdeg", "3",
                  "--seed", "11", "--count", "3")
    assert out1 == out2
    _, out3 = run(capsys, "random", "--r", "4", "--n", "3", "--maxdeg", "3",
                  "--seed", "12", "--count", "3")
    assert out1 != out3


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.ideal"
    bad.write_text("vars x; gens y*z")
    assert main(["lattice", str(bad)]) == 3


def test_precondition_exit_code(capsys, tmp_path):
    bad = tmp_path / "nonmin.ideal"
    bad.write_text("vars x y; gens x x*y")
    assert main(["lattice", str(bad)]) == 3  # rejected at parse time
    ok = main(["--minimize-gens", "lattice", str(bad)])
    assert ok == 0


def test_char_flag_and_env(capsys, ideal_file, monkeypatch):
    path = ideal_file("triangle")
    code, out = run(capsys, "--char", "2", "betti", path)
    assert code == 0 and out.strip().splitlines()[-1] == "totals: 1 3 2"
    monkeypatch.setenv("MONRES_FIELD", "3")
    code, out = run(capsys, "betti", path)
    assert code == 0
    monkeypatch.delenv("MONRES_FIELD")
    code, _ = run(capsys, "--char", "4", "betti", path)
    assert code == 4  # not a prime


def test_lattice_json_input(capsys, ideal_file, tmp_path):
    code, out = run(capsys, "--json", "lattice", ideal_file("cone3"))
    lat_file = tmp_path / "lat.json"
    lat_file.write_text(out)
    code, out2 = run(capsys, "classify", str(lat_file))
    assert code == 0 and "nearly_hm" in out2
    # abstract lattice: labels only
    doc = {"elements": [{"A": list(a)} for a in
                        [(), (1,), (2,), (3,), (1, 2), (1, 2, 3)]]}
    abstract = tmp_path / "abstract.json"
    abstract.write_text(json.dumps(doc))
    code, out3 = run(capsys, "betti", str(abstract))
    assert code == 0
    assert out3.strip().splitlines()[-1] == "totals: 1 3 2"


def test_jobs_flag(capsys, ideal_file):
    code, out = run(capsys, "--jobs", "3", "betti", ideal_file("four_gens"))
    assert code == 0
    assert out.strip().splitlines()[-1] == "totals: 1 4 4 1"


def test_bound_command(capsys, ideal_file):
    code, out = run(capsys, "bound", ideal_file("triangle"))
    assert code == 0 and out.strip() == "2"
