import pytest

from hplaplace.cli import main


def test_quad_selftest_passes(capsys):
    assert main(["quad-selftest"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.strip().endswith("0 failing check(s)")


def test_solve_reports_norms(capsys):
    code = main(["solve", "--contour", "teardrop", "--alpha", "0.5",
                 "--sigma", "0.10", "--D", "5", "--O", "6"])
    assert code == 0
    out = capsys.readouterr().out
    assert "N=36" in out
    assert "error[unweighted2]=" in out
    assert "condition=" in out


def test_solve_code_orientation_flag(capsys):
    code = main(["solve", "--D", "4", "--O", "4", "--code-orientation"])
    assert code == 0
    assert "N=25" in capsys.readouterr().out


def test_invalid_argument_exits_2(capsys):
    # sigma outside the symmetric-grading range is a usage error
    assert main(["solve", "--sigma", "0.6", "--D", "4", "--O", "4"]) == 2
    assert "error:" in capsys.readouterr().err


def test_unknown_choice_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["solve", "--contour", "hexagon"])
    assert info.value.code == 2


def test_h_study_writes_deterministic_csv(tmp_path, capsys):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    assert main(["h-study", "--gamma", "2", "--p", "4", "--dmax", "4",
                 "--out", str(out1)]) == 0
    assert main(["h-study", "--gamma", "2", "--p", "4", "--dmax", "4",
                 "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert out1.read_text().startswith("param_gamma,N,error\n")


def test_hp_study_stdout_and_fit_commentary(capsys):
    assert main(["hp-study", "--sigma", "0.2", "--dmax", "4"]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("param_sigma,N,error\n")
    assert "# fit" in captured.err


def test_contour_study_runs_small_range(capsys):
    assert main(["contour-study", "--sigma", "0.2", "--dmin", "3", "--dmax", "5"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("param_sigma,param_D,N,error\n")
    assert len(out.strip().splitlines()) == 4


def test_table_command(tmp_path):
    out = tmp_path / "table.csv"
    assert main(["table", "--alpha", "0.5", "--sigma", "0.10", "--dmin", "3",
                 "--dmax", "4", "--omin", "2", "--omax", "4", "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "param_D,param_O,N,error,diverged"
    assert len(lines) == 1 + 4


def test_config_file_supplies_defaults_and_flags_win(tmp_path, capsys):
    cfg = tmp_path / "study.cfg"
    cfg.write_text("sigma = 0.2\ndmax = 3\n")
    assert main(["hp-study", "--config", str(cfg)]) == 0
    out = capsys.readouterr().out
    assert out.count("\n") == 4  # header + dmax=3 rows
    assert out.splitlines()[1].startswith("2.000000000000e-01,")

    assert main(["hp-study", "--config", str(cfg), "--sigma", "0.25"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[1].startswith("2.500000000000e-01,")


def test_missing_config_file_exits_2(capsys):
    assert main(["hp-study", "--config", "/nonexistent/file.cfg"]) == 2


def test_malformed_config_exits_2(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("sigma 0.2\n")
    assert main(["hp-study", "--config", str(cfg)]) == 2


def test_plot_output(tmp_path):
    pytest.importorskip("matplotlib")
    svg = tmp_path / "plot.svg"
    assert main(["hp-study", "--sigma", "0.2", "--dmax", "4",
                 "--out", str(tmp_path / "x.csv"), "--plot", str(svg)]) == 0
    assert svg.exists()
