import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from hoalg.cli import main

DATA = Path(__file__).resolve().parents[1] / "data"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_basis_lists_four_bracketings():
    code, out, _ = run("basis", "--flavor", "a", "--n", "2", "--m", "2")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 4
    assert sorted(data["trees"]) == ["(**)", "(*o)", "(o*)", "(oo)"]


def test_basis_l_flavor_count():
    code, out, _ = run("basis", "--flavor", "l", "--n", "3", "--m", "2")
    assert code == 0 and json.loads(out)["count"] == 24


def test_normalize_gives_two_admissible_terms():
    for m in ("2", "3"):
        code, out, _ = run("normalize", "--m", m, "u((oo))", "--format", "text")
        assert code == 0
        assert out.strip() == "(*o) + (o*)"
    code, out, _ = run("normalize", "--m", "3", "u((oo))")
    assert [t["tree"] for t in json.loads(out)["terms"]] == ["(*o)", "(o*)"]


def test_normalize_labeled_term():
    code, out, _ = run("normalize", "--flavor", "l", "--m", "2", "z2(2, 1)", "--format", "text")
    assert code == 0 and out.strip() == "-z2(1, 2)"


def test_dims_table():
    code, out, _ = run("dims", "--flavor", "l", "--m", "2", "--max-n", "4")
    assert code == 0
    assert [row["dim"] for row in json.loads(out)["rows"]] == [2, 4, 24, 240]
    code, out, _ = run("dims", "--flavor", "a", "--m", "inf", "--max-n", "3", "--format", "text")
    assert code == 0 and out.split("\n")[2].split() == ["1", "2"]


def test_series_check():
    code, out, _ = run("series-check", "--flavor", "a", "--m", "3", "--max-n", "10")
    assert code == 0 and json.loads(out)["ok"] is True


def test_dcheck_with_space_file():
    code, out, _ = run("dcheck", "--m", "3", "--space", str(DATA / "space_with_differential.json"), "--max-degree", "3")
    assert code == 0
    data = json.loads(out)
    assert data["random_ok"] == data["random_trees"]
    assert data["free_algebra"]["dd_nonzero"] == 0


def test_pbw_reports():
    code, out, _ = run("pbw", "--lm", str(DATA / "abelian_odd_pair.json"), "--max-degree", "4")
    assert code == 0
    data = json.loads(out)
    assert data["asserted"] and data["ok"]
    assert [r["dim_G"] for r in data["rows"]] == [2, 1, 4, 17]
    code, out, _ = run("pbw", "--lm", str(DATA / "odd_pair_central.json"), "--max-degree", "2")
    assert code == 0 and json.loads(out)["asserted"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ("normalize", "--m", "2", "u((oo)"),
        ("normalize", "--m", "2", "(ooo)"),
        ("basis", "--n", "0", "--m", "2"),
        ("basis", "--n", "2", "--m", "1x"),
        ("dims", "--flavor", "q", "--m", "2"),
        ("pbw", "--lm", "/nonexistent.json"),
        ("pbw", "--lm", str(DATA / "abelian_even.json"), "--strict-odd-only"),
        ("dcheck", "--m", "2", "--space", str(DATA / "abelian_even.json")),
    ],
)
def test_invalid_input_exits_2(argv, capsys):
    code, _, err = run(*argv)
    capsys.readouterr()
    assert code == 2
    if argv[0] == "normalize":
        assert "position" in err


def test_failed_check_exits_1(monkeypatch):
    from hoalg import operad_nsigma as ns
    from hoalg.signs import dg_sign

    # the uncorrected sign breaks dd = 0 in arity 5
    monkeypatch.setattr(ns, "dg_coefficient", dg_sign)
    code, out, err = run("dcheck", "--m", "5", "--samples", "0")
    assert code == 1 and "check failed" in err
    assert any(not g["dd_zero"] for g in json.loads(out)["generators"])


def test_output_is_byte_stable():
    a = run("basis", "--flavor", "l", "--n", "3", "--m", "3")[1]
    b = run("basis", "--flavor", "l", "--n", "3", "--m", "3")[1]
    assert a == b


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hoalg", "basis", "--n", "2", "--m", "2", "--format", "text"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip().endswith("# 4 trees")
