import json
from fractions import Fraction
from pathlib import Path

import pytest

from duflostar import catalog
from duflostar.cli import main
from duflostar.errors import AntisymmetryViolation, ParseError
from duflostar.harness import (OUT_DIR_ENV, OUT_OF_SCOPE, SuiteConfig, format_algebra,
                               parse_algebra_file, read_algebra_file, run_suite)

DATA = Path(__file__).resolve().parent.parent / "data" / "algebras"


def write(tmp_path, text, name="alg.txt"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_aff1_file_equals_catalog():
    assert parse_algebra_file(DATA / "aff1.txt") == catalog("aff1")
    assert parse_algebra_file(DATA / "sl2.txt") == catalog("sl2")


@pytest.mark.parametrize("name", ["sl2", "so3", "ut3", "heisenberg3", "aff1"])
def test_format_roundtrip(tmp_path, name):
    L = catalog(name)
    assert parse_algebra_file(write(tmp_path, format_algebra(L))) == L


def test_no_brackets_is_abelian(tmp_path):
    L = parse_algebra_file(write(tmp_path, "dim 3\nbasis a b c\n"))
    assert L.is_abelian()


def test_nonzero_self_bracket(tmp_path):
    with pytest.raises(AntisymmetryViolation):
        parse_algebra_file(write(tmp_path, "dim 2\nbasis a b\nbracket 1 1 : 0 1\n"))


@pytest.mark.parametrize("text,line,col", [
    ("dim 2\nbasis a b\nbracket 1 2 : 0 1.5\n", 3, 17),
    ("dim 2\nbasis a b\nbracket 1 3 : 0 1\n", 3, 11),
    ("dim 2\nbasis a b\nbracket 1 2 : 0 1\nbracket 1 2 : 0 1\n", 4, 1),
    ("dim 2\nbasis a\n", 2, 1),
    ("dimension 2\n", 1, 1),
    ("dim 2\nbasis a b\nbracket 1 2 : 0 1/0\n", 3, 17),
    ("dim 2\nbasis a b\nbracket 1 2 0 1\n", 3, 1),
])
def test_parse_errors_carry_position(tmp_path, text, line, col):
    with pytest.raises(ParseError) as info:
        read_algebra_file(write(tmp_path, text))
    assert (info.value.line, info.value.column) == (line, col)


def test_rational_entries(tmp_path):
    raw = read_algebra_file(write(tmp_path, "dim 2\nbasis a b\nbracket 1 2 : 0 -3/4\n"))
    assert raw.constants[(1, 0)] == [0, Fraction(3, 4)]


def test_broken_jacobi_reports_fail_with_witness():
    report = run_suite(SuiteConfig(algebra=str(DATA / "broken_jacobi.txt"), trunc=4, suite="axioms"))
    (rec,) = report.checks
    assert rec.verdict == "fail" and rec.witness["error"] == "JacobiViolation"
    assert rec.witness["residue"] != "0"
    assert report.exit_code == 1


def test_duflo_iso_sl2_passes():
    report = run_suite(SuiteConfig(algebra="sl2", trunc=6, suite="duflo-iso"))
    assert report.summary["fail"] == 0 and report.summary["pass"] > 0
    assert report.exit_code == 0


def test_identity_suite_explicit_wheels():
    report = run_suite(SuiteConfig(algebra="heisenberg3", trunc=6, wheels="5/7", suite="lemma1"))
    assert report.summary["fail"] == 0 and report.summary["pass"] >= 1


def test_skipped_when_truncation_too_low():
    report = run_suite(SuiteConfig(algebra="sl2", trunc=2, suite="theorem4"))
    assert report.summary["skipped"] > 0 and report.exit_code == 0


def test_fail_records_have_witnesses():
    report = run_suite(SuiteConfig(algebra="sl2", trunc=8, suite="theorem4", wheels="duflo"))
    for rec in report.checks:
        if rec.verdict == "fail":
            assert rec.witness
        assert rec.verdict != "inconclusive"


def test_json_is_deterministic(tmp_path, monkeypatch):
    monkeypatch.delenv(OUT_DIR_ENV, raising=False)
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        args = ["--suite", "lemma1", "--algebra", "so3", "--trunc", "6", "--seed", "7",
                "--samples", "5", "--format", "json", "--out", str(path)]
        assert main(args) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert set(doc) == {"config", "checks", "summary", "coverage"}
    assert doc["coverage"]["out_of_scope"] == list(OUT_OF_SCOPE)
    assert "seconds" not in doc["checks"][0]


def test_env_var_overrides_directory(tmp_path, monkeypatch):
    monkeypatch.setenv(OUT_DIR_ENV, str(tmp_path / "reports"))
    assert main(["--suite", "axioms", "--algebra", "abelian_2", "--trunc", "4",
                 "--format", "json", "--out", "x/y/report.json"]) == 0
    assert (tmp_path / "reports" / "report.json").exists()


def test_exit_codes(tmp_path, capsys):
    assert main(["--suite", "nope", "--algebra", "sl2", "--trunc", "4"]) == 2
    assert main(["--suite", "axioms", "--algebra", "nonexistent_alg", "--trunc", "4"]) == 2
    assert main(["--suite", "axioms", "--algebra", "sl2", "--trunc", "0"]) == 2
    bad = write(tmp_path, "dim 2\nbasis a b\nbracket 1 2 : x y\n")
    assert main(["--suite", "axioms", "--algebra", str(bad), "--trunc", "4"]) == 2
    assert main(["--suite", "axioms", "--algebra", str(DATA / "broken_jacobi.txt"), "--trunc", "4"]) == 1
    assert main(["--suite", "axioms", "--algebra", "sl2", "--trunc", "4"]) == 0
    assert "ParseError" in capsys.readouterr().err
