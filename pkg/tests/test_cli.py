import json
import subprocess
import sys

import pytest

from cyhodge.cy_workbench_cli import report as report_io
from cyhodge.cy_workbench_cli.analysis import analyze_catalog_entry
from cyhodge.cy_workbench_cli.cli import main
from cyhodge.cy_workbench_cli.tables import GOLDEN_JSON, GOLDEN_TEXT, golden_text


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- analyze ------------------------------------------------------------------------------------


def test_analyze_quintic_double_cover(capsys):
    code, out, _ = run(capsys, "analyze", "P4[5]", "--pullback", "2")
    assert code == 0
    assert "h1 = 1" in out
    assert "(0, 0, 1, 0, 0)" in out


def test_analyze_json_schema_and_round_trip(capsys):
    code, out, _ = run(capsys, "analyze", "P5[3,3]", "--pullback", "6", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "cyhodge/1"
    assert doc["h1"]["euler"] == 3
    assert (doc["hodge_numbers"]["h40"], doc["hodge_numbers"]["h31"], doc["hodge_numbers"]["h22"]) == (1, 0, 1)
    assert all(isinstance(x, str) for p in doc["points"] for x in p["exponents"])
    rep = report_io.loads(out)
    assert report_io.dumps(rep) == out.rstrip("\n")


@pytest.mark.parametrize("entry,e", [("P4[5]", 10), ("P4[5]", 1), ("AESZ115", 1), ("P(1,1,1,1,4)[8]", 8),
                                     ("P7[2,2,2,2]", 6)])
def test_report_round_trip(entry, e):
    r = analyze_catalog_entry(entry, e)
    assert report_io.loads(report_io.dumps(r)) == r


def test_analyze_expression_partial_exit_code(capsys):
    code, out, _ = run(capsys, "analyze", "T^4 - 5*z*(5*T+1)*(5*T+2)*(5*T+3)*(5*T+4)", "--pullback", "8",
                       "--symbolic")
    assert code == 2
    assert "ab-undetermined" in out


def test_analyze_asserted_ab(capsys):
    code, out, _ = run(capsys, "analyze", "P(1,1,1,1,4)[8]", "--pullback", "8", "--symbolic", "--ab", "1,2",
                       "--json")
    doc = json.loads(out)
    assert doc["ab"]["provenance"] == "asserted"
    assert code == 0


def test_asserted_ab_conflict_fails(capsys):
    code, out, _ = run(capsys, "analyze", "P4[5]", "--pullback", "5", "--symbolic", "--ab", "1,1", "--json")
    assert code == 1
    assert json.loads(out)["flags"]["asserted-ab"] is False


def test_analyze_bad_input(capsys):
    code, _, err = run(capsys, "analyze", "T^4 - z*(")
    assert code == 3 and "position" in err
    code, _, err = run(capsys, "analyze", "P4[5]", "--pullback", "0")
    assert code == 3


def test_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("CYHODGE_PRECISION", "abc")
    code, _, err = run(capsys, "analyze", "P4[5]")
    assert code == 3 and "CYHODGE_PRECISION" in err


# -- series ---------------------------------------------------------------------------------------


def test_series_elliptic(capsys):
    code, out, _ = run(capsys, "series", "AESZ115-factor", "--terms", "3")
    assert code == 0
    assert out.splitlines()[:4] == ["A_0 = 1", "A_1 = 12", "A_2 = 164", "A_3 = 2352"]
    assert "closed form elliptic: match" in out


def test_series_aesz25_json(capsys):
    code, out, _ = run(capsys, "series", "AESZ25", "--terms", "2", "--json")
    assert json.loads(out)["coefficients"] == ["1", "12", "684"]
    assert code == 0


def test_series_theta_power(capsys):
    code, out, _ = run(capsys, "series", "T^4", "--terms", "3")
    assert code == 0 and out.split() == ["A_0", "=", "1", "A_1", "=", "0", "A_2", "=", "0", "A_3", "=", "0"]


def test_series_error_passthrough(capsys):
    code, _, err = run(capsys, "series", "(T-1)*(T-2)", "--terms", "3")
    assert code == 1 and "error" in err


# -- weightfilt -----------------------------------------------------------------------------------


def test_weightfilt_type_ii(capsys, tmp_path):
    f = tmp_path / "n.txt"
    f.write_text("4\n0 1 0 0\n0 0 0 0\n0 0 0 1\n0 0 0 0\n")
    code, out, _ = run(capsys, "weightfilt", str(f))
    assert code == 0
    assert "dims (W_-m .. W_m): 2 2 4" in out
    assert "axioms: ok" in out


def test_weightfilt_rational_json(capsys, tmp_path):
    f = tmp_path / "n.txt"
    f.write_text("2\n0 1/2\n0 0\n")
    code, out, _ = run(capsys, "weightfilt", str(f), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["dims"] == {"-1": 1, "0": 1, "1": 2}


def test_weightfilt_zero_and_errors(capsys, tmp_path):
    f = tmp_path / "z.txt"
    f.write_text("3\n0 0 0 0 0 0 0 0 0\n")
    code, out, _ = run(capsys, "weightfilt", str(f))
    assert code == 0 and "dims (W_-m .. W_m): 3" in out
    f.write_text("2\n1 0 0 0\n")
    assert run(capsys, "weightfilt", str(f))[0] == 3
    f.write_text("2\n1 0 0\n")
    assert run(capsys, "weightfilt", str(f))[0] == 3


# -- catalog --------------------------------------------------------------------------------------


def test_catalog_list_and_show(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and len(out.splitlines()) == 18
    code, out, _ = run(capsys, "catalog", "show", "AESZ115")
    assert code == 0 and json.loads(out)["provenance"] == "derived"
    assert run(capsys, "catalog", "show", "nope")[0] == 3


def test_catalog_ids_unique_and_parse(catalog):
    ids = [e.id for e in catalog]
    assert len(ids) == len(set(ids))
    assert len(catalog.hypergeometric()) == 14
    for e in catalog:
        assert e.operator.order >= 2


# -- tables and golden files --------------------------------------------------------------------


@pytest.mark.slow
def test_tables_match_golden_and_are_idempotent(capsys):
    code1, out1, _ = run(capsys, "tables")
    code2, out2, _ = run(capsys, "tables")
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.startswith(golden_text(GOLDEN_TEXT))
    assert out1.endswith(f"golden {GOLDEN_TEXT}: match\n")


@pytest.mark.slow
def test_tables_json_golden(capsys):
    code, out, _ = run(capsys, "tables", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["golden"]["match"]
    del doc["golden"]
    assert doc == json.loads(golden_text(GOLDEN_JSON))


@pytest.mark.slow
def test_tables_golden_mismatch_fails(capsys, tmp_path):
    (tmp_path / GOLDEN_TEXT).write_text("something else\n")
    code, out, _ = run(capsys, "tables", "--golden-dir", str(tmp_path))
    assert code == 1 and "DIFFERS" in out


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "cyhodge.cy_workbench_cli", "catalog", "list"],
                         capture_output=True, text=True, check=True)
    assert "AESZ25" in out.stdout
