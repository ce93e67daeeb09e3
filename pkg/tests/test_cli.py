import csv
import json

import pytest

from magstab.cli import CSV_FIELDS, run
from magstab.presets import figure_preset
from magstab.errors import ConfigurationError


def _read_csv(path):
    with open(path, encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def test_critical_benchmark_point(capsys):
    code = run(["critical", "--k", "1", "--b-bar", "0", "--mu-ratio", "1",
                "--alpha", "0", "--beta", "1", "--sides", "compression"])
    out = capsys.readouterr().out
    assert code == 0
    lam = float(out.split("lambda_cr_compression = ")[1].split()[0])
    assert lam == pytest.approx(0.5437, abs=1e-3)


def test_unknown_preset_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["figure", "fig99"])
    assert exc.value.code == 2
    assert "invalid choice" in capsys.readouterr().err


def test_sweep_rows_in_grid_order(tmp_path):
    out = tmp_path / "rows.csv"
    code = run(["sweep", "--param", "b-bar", "--from", "0", "--to", "2",
                "--steps", "3", "--alpha", "0.5", "--beta", "1",
                "--sides", "compression", "--out", str(out)])
    assert code == 0
    rows = _read_csv(out)
    assert [r["b_bar"] for r in rows] == ["0", "1", "2"]
    assert list(rows[0].keys()) == list(CSV_FIELDS)


def test_csv_round_trip_and_determinism(tmp_path):
    args = ["sweep", "--param", "mu-ratio", "--from", "0.5", "--to", "5",
            "--steps", "3", "--log", "--sides", "compression"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(args + ["--out", str(a)]) == 0
    assert run(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    for row in _read_csv(a):
        lam = row["lambda_cr_compression"]
        assert lam == "" or f"{float(lam):.9g}" == lam


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"k": 1.0, "b-bar": 0.0, "mu-ratio": 5.0,
                               "alpha-s": 0.0, "beta-s": 1.0,
                               "alpha-u": 0.0, "beta-u": 1.0,
                               "sides": "compression"}))
    out = tmp_path / "o.csv"
    code = run(["critical", "--config", str(cfg), "--mu-ratio", "10",
                "--out", str(out)])
    assert code == 0
    row = _read_csv(out)[0]
    assert row["mu_ratio"] == "10"
    assert float(row["lambda_cr_compression"]) == pytest.approx(0.8744, abs=2e-3)


def test_unknown_config_key_is_config_error(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"nonsense": 12}))
    assert run(["critical", "--config", str(cfg)]) == 2
    assert "unknown config key" in capsys.readouterr().err


def test_strict_mode_flags_numerical_failures(tmp_path):
    args = ["critical", "--k", "1", "--alpha", "-2", "--beta", "0.05",
            "--out", str(tmp_path / "x.csv")]
    assert run(args) == 0          # recorded in the status column
    assert run(args + ["--strict"]) == 1


def test_det_trace_columns(tmp_path):
    out = tmp_path / "trace.csv"
    code = run(["det-trace", "--k", "1", "--alpha", "0", "--beta", "1",
                "--lambda-min", "0.4", "--lambda-max", "1.5",
                "--lambda-step", "0.01", "--out", str(out)])
    assert code == 0
    with open(out, encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["lambda", "det", "sign"]
    signs = {r[2] for r in rows[1:]}
    assert signs <= {"-1", "0", "1"} and len(signs) > 1


def test_figure_preset_contents():
    preset = figure_preset("fig2")
    ratios = {c.stack.upper.mu for c in preset.cases}
    assert ratios == {0.5, 1.0, 2.0, 5.0, 10.0}
    assert all(c.b_bar == 0.0 for c in preset.cases)
    assert preset.log_axis and preset.axis_column == "k"
    ks = sorted({c.k for c in preset.cases})
    assert ks[0] == pytest.approx(0.1) and ks[-1] == pytest.approx(20.0)

    fig3 = figure_preset("fig3", axis_steps=3)
    betas = {c.stack.upper.beta for c in fig3.cases}
    assert betas == {0.0, 0.5, 1.0, 2.0, 5.0}
    assert all(c.stack.substrate.alpha == 0.5 for c in fig3.cases)

    fig4 = figure_preset("fig4", axis_steps=3)
    assert all((c.stack.substrate.alpha, c.stack.substrate.beta) == (0.0, 1.0)
               for c in fig4.cases)
    assert all(c.stack.upper.mu == 1.0 for c in fig4.cases)
    fig5 = figure_preset("fig5", axis_steps=3)
    assert all(c.stack.upper.mu == 5.0 for c in fig5.cases)

    fig6 = figure_preset("fig6", axis_steps=3)
    assert all((c.stack.substrate.alpha, c.stack.substrate.beta) == (0.0, 1.0)
               for c in fig6.cases)
    fig6b = figure_preset("fig6", axis_steps=3, fig6_both_magnetic=True)
    assert all((c.stack.substrate.alpha, c.stack.substrate.beta) == (0.5, 0.5)
               for c in fig6b.cases)
    fig9 = figure_preset("fig9", axis_steps=3)
    assert all((c.stack.substrate.alpha, c.stack.substrate.beta) == (0.5, 0.5)
               for c in fig9.cases)

    with pytest.raises(ConfigurationError):
        figure_preset("fig99")


def test_figure_command_writes_rows(tmp_path):
    out = tmp_path / "fig3.csv"
    code = run(["figure", "fig3", "--steps", "3", "--b-max", "1.0",
                "--out", str(out)])
    assert code == 0
    rows = _read_csv(out)
    assert len(rows) == 15
    zero_field = [r for r in rows if float(r["b_bar"]) == 0.0]
    assert len(zero_field) == 5
    for r in zero_field:
        assert float(r["lambda_cr_compression"]) == pytest.approx(0.5437, abs=1e-3)


def test_missing_sweep_param_is_config_error(capsys):
    assert run(["sweep", "--from", "0", "--to", "1"]) == 2
    assert "requires --param" in capsys.readouterr().err


def test_invalid_loading_is_config_error(capsys):
    assert run(["critical", "--k", "-1"]) == 2
    assert "wavenumber" in capsys.readouterr().err
