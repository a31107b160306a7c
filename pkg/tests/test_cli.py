import json
import subprocess
import sys

import pytest

from chronokh.cli import main, parse_spec
from chronokh.corpus import corpus_dir
from chronokh.oracles import classical_khovanov
from chronokh.scalars import ALL_SPECIALIZATIONS, Specialization

CORPUS = corpus_dir()


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_matches_classical_golden(capsys):
    code, out, _ = run(capsys, "compute", CORPUS / "trefoil.pd", "--spec", "even", "--grading", "collapsed")
    assert code == 0
    data = json.loads(out)
    golden = classical_khovanov((CORPUS / "trefoil.pd").read_text())
    got = {(r["i"], r["j"]): (r["rank"], tuple(r["torsion"])) for r in data["homology"]}
    assert got == golden
    assert data["specialization"] == "even"
    assert set(data) == {"diagram", "specialization", "grading", "homology", "euler"}


def test_compute_odd_triple_is_diagonal(capsys):
    code, out, _ = run(capsys, "compute", CORPUS / "trefoil.pd", "--spec", "odd")
    rows = json.loads(out)["homology"]
    assert code == 0 and rows and all(r["p"] == r["q"] for r in rows)


def test_compute_all8_and_explicit(capsys):
    code, out, _ = run(capsys, "compute", CORPUS / "hopf.pd", "--spec", "all8")
    assert code == 0 and len(json.loads(out)) == 8
    code, out, _ = run(capsys, "compute", CORPUS / "hopf.pd", "--spec=-1,1,-1")
    assert code == 0 and json.loads(out)["specialization"] == [-1, 1, -1]


def test_output_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run(capsys, "compute", CORPUS / "figure8.pd", "--spec", "all8", "--output", p)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_bad_input_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.pd"
    bad.write_text("X(1,2")
    assert run(capsys, "compute", bad)[0] == 1
    assert run(capsys, "compute", tmp_path / "missing.pd")[0] == 1
    assert run(capsys, "compute", CORPUS / "hopf.pd", "--spec", "2,1,1")[0] == 1
    assert run(capsys, "module", "--diagram", CORPUS / "hopf.pd", "--basepoint", "77")[0] == 1


def test_jones(capsys):
    code, out, _ = run(capsys, "jones", CORPUS / "figure8.pd")
    assert code == 0 and json.loads(out)["agree"]


def test_compose_union_and_connsum(capsys):
    code, out, _ = run(capsys, "compose", CORPUS / "trefoil.pd", CORPUS / "hopf.pd", "--op", "union")
    assert code == 0 and json.loads(out)["comparison"] == "passed"
    code, out, _ = run(capsys, "compose", CORPUS / "trefoil.pd", CORPUS / "trefoil.pd",
                       "--op", "connsum", "--spec", "odd")
    assert code == 0 and json.loads(out)["comparison"] == "passed"


def test_module(capsys):
    code, out, _ = run(capsys, "module", "--diagram", CORPUS / "unknot_kink_pos.pd", "--basepoint", "1",
                       "--slide", "2", "--spec", "odd")
    data = json.loads(out)
    assert code == 0
    assert data["slide"]["literal_equal"] and data["module"]["unital"]
    assert set(data["action"]) == {"v+", "v-"}


def test_verify_small_dirs(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    code, _, err = run(capsys, "verify", empty)
    assert code == 0 and "warning" in err
    small = tmp_path / "small"
    small.mkdir()
    for name in ("trefoil", "hopf", "unknot"):
        (small / f"{name}.pd").write_text((CORPUS / f"{name}.pd").read_text())
    assert run(capsys, "verify", small)[0] == 0
    code, _, err = run(capsys, "verify", small, "--inject-fault")
    assert code == 2 and "first failing invariant" in err


def test_parse_spec():
    assert parse_spec("all8") == list(ALL_SPECIALIZATIONS)
    assert parse_spec("1,-1,1") == [Specialization(1, -1, 1)]


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "chronokh", "compute", str(CORPUS / "unknot.pd")],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["euler"]["collapsed"] == [[-1, 1], [1, 1]]


@pytest.mark.parametrize("argv", [[], ["nonsense"]])
def test_usage_errors(argv, capsys):
    assert main(argv) == 1
