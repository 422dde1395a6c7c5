import csv
import io
import json

import pytest

from ndpa import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_spectrum_ground_row(capsys):
    code, out, _ = run(capsys, "spectrum", "--omega1", "1.2", "--omega2", "0.8", "--chi", "0.6", "--m", "0", "--nmax", "40")
    assert code == 0
    first = rows_of(out)[0]
    assert (first["N"], first["m"], first["n_r"]) == ("0", "0", "0")
    assert float(first["E_closed"]) == pytest.approx(-0.2)
    assert float(first["abs_diff"]) < 1e-8


def test_spectrum_decoupled(capsys):
    code, out, _ = run(capsys, "spectrum", "--omega1", "1.3", "--omega2", "0.5", "--chi", "0", "--m", "2")
    assert code == 0
    for row in rows_of(out):
        n_a = (int(row["N"]) + 2) // 2
        assert float(row["E_closed"]) == pytest.approx(1.3 * n_a + 0.5 * (n_a - 2))


def test_spectrum_negative_sector(capsys):
    code, out, _ = run(capsys, "spectrum", "--omega1", "1.2", "--omega2", "0.8", "--chi", "0.3", "--m", "-2")
    assert code == 0 and rows_of(out)


def test_unstable_exit_code(capsys):
    code, _, err = run(capsys, "spectrum", "--omega1", "1", "--omega2", "1", "--chi", "1.0")
    assert code == 2 and "unstable" in err


def test_small_nmax_from_env(capsys, monkeypatch):
    monkeypatch.setenv("AMP_NMAX", "6")
    assert run(capsys, "spectrum")[0] == 2
    monkeypatch.setenv("AMP_NMAX", "30")
    assert cli.parse_config(["spectrum"]).nmax == 30
    assert cli.parse_config(["spectrum", "--nmax", "50"]).nmax == 50


def test_berry_record(capsys):
    code, out, _ = run(capsys, "berry", "--chi", "0.6", "--period", "10", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc["meta"]) == {"config", "version"}
    rec = doc["data"][0]
    assert rec["closed_form"] == pytest.approx(0.7853982, abs=1e-7)
    assert rec["quadrature_diff"] < 1e-8
    _, out3, _ = run(capsys, "berry", "--chi", "0.6", "--period", "10", "--N", "3", "--format", "json")
    assert json.loads(out3)["data"][0]["closed_form"] == pytest.approx(4 * rec["closed_form"])


def test_berry_zero_coupling(capsys):
    code, out, _ = run(capsys, "berry", "--chi", "0", "--period", "10")
    row = rows_of(out)[0]
    assert code == 0
    assert float(row["closed_form"]) == 0 and float(row["quadrature"]) == 0


def test_berry_schrodinger_columns(capsys):
    code, out, _ = run(capsys, "berry", "--chi", "0.6", "--period", "50", "--steps", "2500", "--schrodinger")
    row = rows_of(out)[0]
    assert code == 0
    assert abs(float(row["schrodinger_estimate"]) - float(row["closed_form"])) < 0.05


def test_mandel_table(capsys):
    code, out, _ = run(capsys, "mandel", "--chi", "0.6", "--nmax", "60")
    assert code == 0
    rows = {(r["N"], r["m"]): r for r in rows_of(out)}
    vac = rows[("0", "0")]
    assert float(vac["Q_a_closed"]) == pytest.approx(0.125) and float(vac["Q_b_closed"]) == pytest.approx(0.125)
    assert vac["class_a"] == "super-Poissonian"
    assert rows[("4", "2")]["flag_a"] == "ok"
    assert float(rows[("4", "2")]["Q_a_closed"]) == pytest.approx(-0.5732758620689655)


def test_mandel_zero_coupling(capsys):
    code, out, _ = run(capsys, "mandel", "--chi", "0")
    rows = rows_of(out)
    assert code == 0
    assert rows[0]["flag_a"] == "undefined"
    assert all(r["class_a"] == "number-state" for r in rows[1:])


def test_wavefunction_samples(capsys):
    code, out, _ = run(capsys, "wavefunction", "--N", "2", "--m", "0", "--steps", "20")
    rows = rows_of(out)
    assert code == 0 and len(rows) == 8 * 20


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "berry")
    assert code == 0
    assert all(r["passed"] == "true" for r in rows_of(out))
    code, out, _ = run(capsys, "verify", "--suite", "spectrum", "--tol", "1e-12")
    assert code == 1


def test_output_file_and_io_error(capsys, tmp_path):
    target = tmp_path / "berry.csv"
    assert run(capsys, "berry", "--period", "10", "--out", str(target))[0] == 0
    assert target.read_text().startswith("N,m,winding")
    assert run(capsys, "berry", "--out", str(tmp_path / "missing" / "x.csv"))[0] == 3


def test_csv_round_trip_and_determinism(capsys):
    args = ("spectrum", "--omega1", "1.2", "--omega2", "0.8", "--chi", "0.6")
    cfg = cli.parse_config(list(args))
    rows, _ = cli.run_spectrum(cfg)
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    parsed = rows_of(first)
    for mem, back in zip(rows, parsed):
        assert float(back["E_numeric"]) == mem["E_numeric"]
        assert float(back["abs_diff"]) == mem["abs_diff"]


def test_format_value():
    assert cli.format_value(0.1) == "1.0000000000000001e-01"
    assert cli.format_value(3) == "3"
    assert cli.format_value(True) == "true"
    assert float(cli.format_value(2.0 / 3.0)) == 2.0 / 3.0
