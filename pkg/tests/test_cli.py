import csv
import io

import pytest

from supercasimir import cli
from supercasimir import deltas as deltas_mod
from supercasimir.deltas import DeltaRequest, evaluate
from supercasimir.errors import ConfigError
from supercasimir.figures import SweepSpec, figure_spec, format_float, run_sweep
from supercasimir.lifshitz import CavityConfig, pressure
from supercasimir.materials import preset


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse(text):
    header = [l for l in text.splitlines() if l.startswith("#")]
    body = [l for l in text.splitlines() if not l.startswith("#")]
    rows = list(csv.DictReader(io.StringIO("\n".join(body))))
    return header, rows


def test_pressure_ideal_example(capsys):
    code, out, _ = run(capsys, "pressure", "--gap-nm", "1000", "--temp-K", "300",
                       "--plate1", "ideal", "--plate2", "ideal")
    assert code == 0
    _, rows = parse(out)
    assert float(rows[0]["p0_tm_Pa"]) == pytest.approx(1.981e-4, rel=5e-4)


def test_pressure_is_pure_translation(capsys):
    code, out, _ = run(capsys, "pressure", "--gap-nm", "300", "--temp-K", "10",
                       "--plate1", "Nb", "--plate2", "Au", "--prescription", "plasma")
    b = pressure(CavityConfig(300.0, 10.0, preset("nb"), preset("au"), "plasma"))
    _, rows = parse(out)
    assert rows[0]["total_Pa"] == format_float(b.total)
    assert rows[0]["p1_Pa"] == format_float(b.p1)


def test_delta_is_pure_translation(capsys):
    code, out, _ = run(capsys, "delta", "--geometry", "sphere", "--radius-um", "200",
                       "--gap-nm", "150", "--t1-K", "5", "--setup", "nbnb",
                       "--prescription", "drude")
    assert code == 0
    ref = evaluate(DeltaRequest(gap=150.0, t1=5.0, geometry="sphere", radius=200.0))
    header, rows = parse(out)
    assert rows[0]["value"] == format_float(ref.value)
    assert float(rows[0]["value"]) == pytest.approx(-8e-14, rel=0.25)
    assert any("t2_K" in h for h in header)


def test_delta_equal_temperatures(capsys):
    code, out, _ = run(capsys, "delta", "--gap-nm", "150", "--t1-K", "5", "--t2-K", "5")
    assert code == 0
    assert float(parse(out)[1][0]["value"]) == 0.0


@pytest.mark.parametrize("argv", [
    ("pressure", "--gap-nm", "-5", "--temp-K", "300"),
    ("pressure", "--gap-nm", "100", "--temp-K", "300", "--plate1", "unobtainium"),
    ("pressure", "--gap-nm", "100", "--temp-K", "300", "--tol", "0.1"),
    ("pressure", "--gap-nm", "100"),
    ("delta", "--gap-nm", "150", "--t1-K", "6", "--t2-K", "5"),
    ("figure", "1", "--out", "/nonexistent-dir/fig.csv"),
])
def test_config_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_cancellation_refusal_exit_4(capsys):
    code, _, _ = run(capsys, "delta", "--prescription", "plasma", "--method", "numeric",
                     "--gap-nm", "100", "--t1-K", "5", "--t2-K", "9.2")
    assert code == 4


def test_non_convergence_exit_3(capsys, monkeypatch):
    orig = CavityConfig.__init__

    def capped(self, *a, **kw):
        kw["l_max_cap"] = 5
        orig(self, *a, **kw)

    monkeypatch.setattr(CavityConfig, "__init__", capped)
    code, _, err = run(capsys, "pressure", "--gap-nm", "100", "--temp-K", "1")
    assert code == 3
    assert "partial sum" in err


def test_config_file_merge(tmp_path, capsys):
    ini = tmp_path / "run.ini"
    ini.write_text("[material.myau]\nkind = drude\nomega_p = 8.9\ngamma = 0.0357\n\n"
                   "[run]\ngap_nm = 400\ntemp_K = 50\nplate1 = myau\nplate2 = myau\n")
    code, out, _ = run(capsys, "pressure", "--config", str(ini), "--temp-K", "77")
    assert code == 0
    header, rows = parse(out)
    assert "# temp_K = 77.0" in header and "# gap_nm = 400.0" in header
    from supercasimir.materials import Kind, MaterialModel
    m = MaterialModel(Kind.DRUDE, 8.9, 0.0357)
    assert rows[0]["total_Pa"] == format_float(pressure(CavityConfig(400.0, 77.0, m, m)).total)


@pytest.mark.parametrize("text", ["[run]\nbogus = 1\n", "[run]\ngap_nm = wide\n",
                                  "[material.x]\nkind = drude\n", "[other]\n"])
def test_bad_config_file(tmp_path, capsys, text):
    ini = tmp_path / "bad.ini"
    ini.write_text(text)
    code, _, _ = run(capsys, "pressure", "--config", str(ini), "--gap-nm", "100",
                     "--temp-K", "300")
    assert code == 2


def test_figure_csv_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(["figure", "1", "--out", str(a)]) == 0
    assert cli.main(["figure", "1", "--out", str(b), "--workers", "1"]) == 0
    assert a.read_bytes() == b.read_bytes()
    header, rows = parse(a.read_text(encoding="utf-8"))
    assert list(rows[0]) == ["T1_K", "dP_Dr_NbNb_mPa", "dP_Dr_NbAu_mPa"]
    assert len(rows) == 81
    row5 = next(r for r in rows if float(r["T1_K"]) == 5.0)
    assert float(row5["dP_Dr_NbAu_mPa"]) == pytest.approx(-0.52, rel=0.05)


def test_figure_columns():
    assert figure_spec(2).columns[0] == "a_um"
    assert figure_spec(3).columns[1] == "dF_over_R_NbNb_1e-10_N_per_m"
    report = run_sweep(figure_spec(4, points=5))
    assert [r[0] for r in report.rows] == pytest.approx([0.1, 0.575, 1.05, 1.525, 2.0])


def test_sweep_spec_validation():
    fixed = DeltaRequest(gap=150.0, t1=5.0)
    with pytest.raises(ConfigError):
        SweepSpec("t1", (), fixed, ("x",))
    with pytest.raises(ConfigError):
        SweepSpec("t1", (2.0, 1.0), fixed, ("x",))
    with pytest.raises(ConfigError):
        SweepSpec("radius", (1.0,), fixed, ("x",))
    with pytest.raises(ConfigError):
        figure_spec(5)


def test_validate_only(capsys):
    code, out, _ = run(capsys, "validate", "--only", "zeta-tm")
    assert code == 0
    assert out.count("PASS") == 1 and "zeta-tm" in out


def test_validate_unknown_id(capsys):
    code, _, _ = run(capsys, "validate", "--only", "nope")
    assert code == 2


def test_validate_catches_sign_flip(capsys, monkeypatch):
    orig = deltas_mod._tm_explicit_pp
    monkeypatch.setattr(deltas_mod, "_tm_explicit_pp", lambda req: -orig(req))
    code, out, _ = run(capsys, "validate", "--only", "fig1-nbau-value")
    assert code == 1
    assert "FAIL  fig1-nbau-value" in out
