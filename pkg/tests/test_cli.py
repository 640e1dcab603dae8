import json
import os
import subprocess
import sys

import pytest

from nwfs.cli import EXIT_CAP, EXIT_INPUT, EXIT_LAW, EXIT_NOT_CONVERGED, EXIT_STAGE, main

HERE = os.path.join(os.path.dirname(__file__), "fixtures", "cli")


def fx(name):
    return os.path.join(HERE, name)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def golden(name):
    with open(fx(name)) as fh:
        return fh.read()


def test_factorize_converges_at_one(capsys):
    code, out, _ = run(capsys, "factorize", fx("splitepi.json"), "--converge")
    assert code == 0
    d = json.loads(out)
    assert d["converged_at"] == 1
    fac = d["factorizations"][0]
    assert fac["E"]["size"] == 5 and fac["lambda"]["map"] == [0, 1]
    assert out == golden("splitepi.factorize.golden.json")


def test_factorize_empty_generators_is_identity(capsys):
    code, out, _ = run(capsys, "factorize", fx("empty.json"))
    fac = json.loads(out)["factorizations"][0]
    assert code == 0
    assert fac["E"]["size"] == 2
    assert fac["lambda"]["map"] == [0, 1] and fac["rho"]["map"] == [0, 2]


def test_factorize_cosection_stage_two(capsys):
    code, out, _ = run(capsys, "factorize", fx("cosection.json"), "--stage", 2, "--max-stage", 3)
    d = json.loads(out)
    assert code == 0 and d["stage"] == 2
    assert d["factorizations"][0]["E"]["size"] == 7
    assert [row[1] for row in d["stage_report"][0]] == [1, 3, 7]


def test_generators_file_overrides(capsys):
    code, out, _ = run(capsys, "factorize", fx("cosection.json"), "--generators", fx("generators_pt.json"))
    assert code == 0 and json.loads(out)["generators"] == ["pt"]


def test_lift(capsys):
    code, out, _ = run(capsys, "lift", fx("lift_instance.json"), fx("lmap.json"), fx("rmap.json"), fx("problem.json"))
    assert code == 0
    assert json.loads(out)["filler"]["map"] == [2]


def test_lift_stage_mismatch(capsys):
    code, _, err = run(capsys, "lift", fx("lift_instance.json"), fx("lmap_onestep.json"), fx("rmap.json"), fx("problem.json"))
    assert code == EXIT_STAGE and "stage mismatch" in err


def test_laws_pass(capsys):
    code, out, _ = run(capsys, "laws", fx("splitepi.json"), "--corpus-max-size", 2)
    d = json.loads(out)
    assert code == 0 and d["ok"] and d["corpus_size"] == 12
    names = [r["law"] for r in d["laws"]]
    for law in ("counit_L", "counit_E", "coassociativity", "unit_R", "unit_E", "associativity", "distributivity", "pentagon", "agreement"):
        assert law in names


def test_laws_identity_factorisation(capsys):
    code, out, _ = run(capsys, "laws", fx("identity.json"))
    assert code == 0 and json.loads(out)["converged_at"] == 0


def test_laws_mutated(capsys):
    code, out, err = run(capsys, "laws", fx("mutated.json"))
    assert code == EXIT_LAW
    assert "unit_E" in err and "distributivity" in err
    d = json.loads(out)
    assert d["failed"] == ["unit_E", "distributivity", "pentagon"]
    assert out == golden("mutated.laws.golden.json")


def test_size_report_cosection(capsys):
    code, out, _ = run(capsys, "size-report", fx("cosection.json"), "--max-stage", 3)
    assert code == 0
    assert out.splitlines()[2] == "2,9,7,1.2857"
    assert out == golden("cosection.size.golden.csv")


def test_size_report_splitepi(capsys):
    _, out, _ = run(capsys, "size-report", fx("splitepi.json"), "--max-stage", 4)
    rows = [line.split(",") for line in out.splitlines()[1:]]
    naive = [int(r[1]) for r in rows]
    assert all(a < b for a, b in zip(naive, naive[1:]))
    assert [int(r[2]) for r in rows] == [5, 5, 5, 5]


def test_size_report_empty(capsys):
    _, out, _ = run(capsys, "size-report", fx("empty.json"), "--max-stage", 3)
    assert out.splitlines()[1:] == ["1,2,2,1.0000", "2,2,2,1.0000", "3,2,2,1.0000"]


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", fx("cosection.json"), "--oracle", "cosection", "--stage", 2)
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "compare", fx("cosection.json"), "--oracle", "splitepi", "--stage", 2)
    assert code == EXIT_LAW
    assert json.loads(out)["results"][0]["obstruction"].startswith("size")


@pytest.mark.parametrize(
    "argv, code",
    [
        (["factorize", fx("bad.json")], EXIT_INPUT),
        (["factorize", fx("missing.json")], EXIT_INPUT),
        (["factorize", fx("splitepi.json"), "--stage", "1", "--converge"], EXIT_INPUT),
        (["factorize", fx("splitepi.json"), "--generators", "nosuch"], EXIT_INPUT),
        (["factorize", fx("splitepi.json"), "--backend", "finmod"], EXIT_INPUT),
        (["factorize", fx("cosection.json"), "--stage", "3", "--cap", "50"], EXIT_CAP),
        (["factorize", fx("cosection.json"), "--max-stage", "3"], EXIT_NOT_CONVERGED),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_out_flag(tmp_path, capsys):
    target = tmp_path / "o.csv"
    run(capsys, "size-report", fx("cosection.json"), "--max-stage", 3, "--out", target)
    assert target.read_text() == golden("cosection.size.golden.csv")


def test_byte_stable_across_processes():
    cmd = [sys.executable, "-m", "nwfs", "factorize", fx("cosection.json"), "--stage", "2", "--max-stage", "3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True, env={**os.environ, "PYTHONHASHSEED": "123"}).stdout
    assert a == b and a
