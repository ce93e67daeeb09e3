import shutil
from pathlib import Path

import pytest

from magstab_plots import render, spec_for
from magstab_plots.cli import run
from magstab_plots.figures import FigureConfigError

DATA = Path(__file__).parent / "data"

HEADER = ("case_id,k,K,b_bar,mu_ratio,alpha_s,beta_s,alpha_u,beta_u,"
          "gamma_s,gamma_u,lambda_cr_compression,lambda_cr_tension,status,"
          "det_evals,notes")


def _row(k="1", b_bar="0", mu_ratio="1", comp="0.5437", tens=""):
    return (f"c,{k},{k},{b_bar},{mu_ratio},0,1,0.5,0.5,1,1,"
            f"{comp},{tens},ok,100,")


@pytest.mark.parametrize("name,n_series", [("fig2", 5), ("fig3", 5), ("fig6", 5)])
def test_golden_csv_series_counts(tmp_path, name, n_series):
    out = tmp_path / f"{name}.png"
    result = render(spec_for(name), str(DATA / f"{name}.csv"), str(out))
    assert len(result.series) == n_series
    assert out.exists() and out.stat().st_size > 0


def test_fig6_semilog_axis(tmp_path):
    result = render(spec_for("fig6"), str(DATA / "fig6.csv"),
                    str(tmp_path / "fig6.png"))
    assert result.log_x
    linear = render(spec_for("fig3"), str(DATA / "fig3.csv"),
                    str(tmp_path / "fig3.png"))
    assert not linear.log_x


def test_rendering_is_pure_in_the_csv(tmp_path):
    a = render(spec_for("fig2"), str(DATA / "fig2.csv"), str(tmp_path / "a.svg"))
    b = render(spec_for("fig2"), str(DATA / "fig2.csv"), str(tmp_path / "b.svg"))
    assert a.series == b.series
    assert a.legend == b.legend
    assert a.n_points_drawn == b.n_points_drawn


def test_single_row_csv(tmp_path):
    csv_path = tmp_path / "one.csv"
    csv_path.write_text(HEADER + "\n" + _row() + "\n")
    result = render(spec_for("fig3"), str(csv_path), str(tmp_path / "one.png"))
    assert result.n_rows == 1
    assert result.n_points_drawn == 1


def test_empty_critical_stretch_rows_are_skipped(tmp_path):
    csv_path = tmp_path / "gaps.csv"
    rows = [_row(b_bar="0"), _row(b_bar="1", comp=""),
            _row(b_bar="2", comp="0.6", tens="1.2")]
    csv_path.write_text(HEADER + "\n" + "\n".join(rows) + "\n")
    result = render(spec_for("fig3"), str(csv_path), str(tmp_path / "gaps.png"))
    # two compression points drawn plus one tension point; the empty row skipped
    assert result.n_points_drawn == 3
    assert any("(tension)" in entry for entry in result.legend)


def test_missing_column_is_config_error(tmp_path):
    csv_path = tmp_path / "bad.csv"
    csv_path.write_text("a,b\n1,2\n")
    with pytest.raises(FigureConfigError):
        render(spec_for("fig2"), str(csv_path), str(tmp_path / "x.png"))


def test_empty_data_is_error(tmp_path):
    csv_path = tmp_path / "empty.csv"
    csv_path.write_text(HEADER + "\n")
    with pytest.raises(FigureConfigError):
        render(spec_for("fig3"), str(csv_path), str(tmp_path / "x.png"))


def test_unknown_figure_name():
    with pytest.raises(FigureConfigError):
        spec_for("fig99")


def test_cli_round_trip(tmp_path, capsys):
    src = tmp_path / "fig2.csv"
    shutil.copy(DATA / "fig2.csv", src)
    out = tmp_path / "fig2.png"
    assert run(["fig2", "--in", str(src), "--out", str(out)]) == 0
    assert out.exists()
    assert "5 series" in capsys.readouterr().out


def test_cli_errors(tmp_path, capsys):
    assert run(["fig99", "--in", "x.csv", "--out", "y.png"]) == 2
    assert "unknown figure" in capsys.readouterr().err
    assert run(["fig2", "--in", str(tmp_path / "missing.csv"),
                "--out", str(tmp_path / "y.png")]) == 2
