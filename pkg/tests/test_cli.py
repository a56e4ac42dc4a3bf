import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dephasim.analysis import Grid
from dephasim.cli import (ConfigError, RunConfig, build_scenario, csv_text,
                          fig_command, format_value, main, parse_config,
                          parse_csv, render_config, run_command, scan_scenario)

EQ9_TEXT = "scenario = eq9\ngrid.t_max = 3.0\n"


# --- config grammar -------------------------------------------------------------

def test_defaults_fill_in():
    cfg = parse_config(EQ9_TEXT)
    assert cfg.scenario == "eq9"
    assert cfg.params["g"] == 1.0
    assert cfg.grid == Grid(0.0, 1e-3, 3.0)
    assert cfg.mode == "cosine_transform"
    assert cfg.output == "run"


def test_explicit_coupling_and_comments():
    cfg = parse_config("# canonical dataset\nscenario = eq5\ng = 1.0  # coupling\n")
    assert cfg.scenario == "eq5" and cfg.params["g"] == 1.0


def test_self_correlation_without_field_rejected():
    text = ("scenario = spinstar\nspinstar.n1 = 2\nspinstar.n2 = 2\n"
            "spinstar.B1 = 0\nspinstar.B2 = 2\nspinstar.alpha = 4\n"
            "spinstar.J1 = 10\nspinstar.beta = 0.01\n")
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert any("J1" in e and "B1" in e for e in exc.value.errors)


def test_all_errors_reported_at_once():
    with pytest.raises(ConfigError) as exc:
        parse_config("scenario = eq5\nbogus = 1\nspinstar.n1 = 5\ng = x\n")
    msgs = "\n".join(exc.value.errors)
    assert "bogus" in msgs and "spinstar.n1" in msgs and "expected a number" in msgs
    assert len(exc.value.errors) == 3


def test_malformed_lines_rejected():
    with pytest.raises(ConfigError) as exc:
        parse_config("scenario = eq9\nnonsense line\nscenario = eq5\n")
    msgs = "\n".join(exc.value.errors)
    assert "key = value" in msgs and "duplicate" in msgs


def test_unknown_scenario_rejected():
    with pytest.raises(ConfigError):
        parse_config("scenario = eq6\n")


def test_empty_grid_rejected():
    with pytest.raises(ConfigError) as exc:
        parse_config("scenario = eq9\ngrid.t_max = 0.0\n")
    assert any("empty grid" in e for e in exc.value.errors)


def test_boson_overrides_must_come_together():
    base = "scenario = boson\nboson.A1 = 1\nboson.beta = 0.2\n"
    parse_config(base)  # fine without overrides
    with pytest.raises(ConfigError):
        parse_config(base + "boson.gamma2 = 0.5\n")
    parse_config(base + "boson.gamma2 = 0.5\nboson.xi2 = 1.57\n")


def test_mode_restricted_to_frequency_scenarios():
    with pytest.raises(ConfigError):
        parse_config("scenario = boson\nboson.A1 = 1\nboson.beta = 0.2\n"
                     "mode = complex_modulus\n")
    parse_config("scenario = eq9\nmode = complex_modulus\n")


CONFIG_TEXTS = [
    EQ9_TEXT,
    "scenario = eq5\ng = 2.5\ngrid.dt = 0.01\noutput = five\n",
    "scenario = eq10\nmode = complex_modulus\n",
    "scenario = boson\nboson.A1 = 1\nboson.beta = 0.2\nboson.gamma2 = 0.5\n"
    "boson.xi2 = 1.5707963267948966\nboson.t1 = t\nboson.t1_anc = done:1\n",
    "scenario = spinstar\nspinstar.n1 = 5\nspinstar.n2 = 5\nspinstar.B1 = 2\n"
    "spinstar.B2 = 2\nspinstar.alpha = 4\nspinstar.J1 = 10\nspinstar.J2 = 10\n"
    "spinstar.beta = 0.01\nspinstar.theta2 = 0.2\n",
    "scenario = custom-kernel\nkernel.w0 = 0.0\nkernel.k1 = 2.0,0.0,0.0,0.0\n"
    "kernel.k2 = 2.0,0.0,0.0,0.0\nkernel.k12 = const:1.0\n"
    "kernel.l12 = 4.0,0.0,0.0,0.0\n",
]


@pytest.mark.parametrize("text", CONFIG_TEXTS)
def test_round_trip_fixed_configs(text):
    cfg = parse_config(text)
    assert parse_config(render_config(cfg)) == cfg


@given(st.sampled_from(["eq5", "eq7", "eq9"]), st.floats(0.1, 5),
       st.floats(1e-3, 0.1), st.floats(0.5, 4))
@settings(max_examples=40)
def test_round_trip_generated_configs(name, g, dt, t_max):
    cfg = RunConfig(name, {"g": g}, Grid(0.0, dt, t_max), output="x")
    assert parse_config(render_config(cfg)) == cfg


# --- formatting --------------------------------------------------------------------

def test_format_value_nine_significant_digits():
    assert format_value(1.0 / 3.0) == "0.333333333"
    assert format_value(-0.0) == "0"
    assert format_value(1.0) == "1"
    assert format_value(4.159e-08) == "4.159e-08"


def test_csv_shape_and_line_endings(tmp_path):
    cfg = parse_config("scenario = eq9\ngrid.t_max = 0.02\ngrid.dt = 0.01\n")
    paths = run_command(cfg, tmp_path)
    raw = (tmp_path / "run.csv").read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "t,kappa1,kappa2,kappa12,lambda12"
    assert len(lines) == 4
    assert not lines[1].endswith(",")
    assert {p.name for p in paths} == {"run.csv", "run.report"}


# --- runs ---------------------------------------------------------------------------

def test_run_markovian_baseline_matches_closed_form(tmp_path):
    cfg = parse_config("scenario = eq9\ngrid.t_max = 1.0\ngrid.dt = 0.01\n"
                       "output = base\n")
    run_command(cfg, tmp_path)
    traces = parse_csv((tmp_path / "base.csv").read_text())
    t = traces["kappa1"].times()
    assert np.max(np.abs(traces["kappa1"].values - np.exp(-t * t))) < 1e-8
    report = (tmp_path / "base.report").read_text()
    assert "onset.lambda12 = none" in report
    assert "classification.lambda12 = global-never" in report


def test_run_shared_envelope_reports_early_global_onset(tmp_path):
    cfg = parse_config("scenario = eq5\ng = 1.0\ngrid.t_max = 1.0\noutput = nn\n")
    run_command(cfg, tmp_path)
    report = dict(line.split(" = ") for line in
                  (tmp_path / "nn.report").read_text().splitlines())
    assert float(report["onset.lambda12"]) == pytest.approx(0.36, abs=0.03)
    assert report["classification.lambda12"] == "global-earlier"
    assert report["onset.kappa12"] == "none"


def test_determinism_byte_identical(tmp_path):
    cfg = parse_config("scenario = eq7\ng = 1.0\ngrid.t_max = 0.5\n"
                       "grid.dt = 0.005\n")
    run_command(cfg, tmp_path / "a")
    run_command(cfg, tmp_path / "b")
    assert (tmp_path / "a/run.csv").read_bytes() == (tmp_path / "b/run.csv").read_bytes()
    assert (tmp_path / "a/run.report").read_bytes() == (tmp_path / "b/run.report").read_bytes()


def test_measure_re_reads_run_output(tmp_path, capsys):
    cfg_text = "scenario = eq9\ngrid.t_max = 0.2\ngrid.dt = 0.01\n"
    (tmp_path / "c.cfg").write_text(cfg_text)
    assert main(["run", "--config", str(tmp_path / "c.cfg"),
                 "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    assert main(["measure", "--config", str(tmp_path / "c.cfg"),
                 "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "scenario = eq9" in out and "blp.kappa1 = 0" in out


# --- figure datasets -----------------------------------------------------------------

def test_fig3_columns_match_closed_forms(tmp_path):
    fig_command(3, tmp_path)
    traces = parse_csv((tmp_path / "fig3.csv").read_text())
    assert set(traces) == {"kappa1", "lambda12"}
    t = traces["kappa1"].times()
    assert np.max(np.abs(traces["kappa1"].values - np.exp(-t * t))) < 1e-8
    assert np.max(np.abs(traces["lambda12"].values - np.exp(-4 * t * t))) < 1e-8
    meta = (tmp_path / "fig3.meta").read_text()
    assert "g = 1.0" in meta and "columns = t,kappa1,lambda12" in meta


def test_fig4_scaled_column(tmp_path):
    fig_command(4, tmp_path)
    lines = (tmp_path / "fig4.csv").read_text().splitlines()
    header = lines[0].split(",")
    assert header == ["t", "kappa1", "kappa2", "kappa12", "lambda12",
                      "lambda12_x500"]
    first = dict(zip(header, map(float, lines[1].split(","))))
    assert first["lambda12_x500"] == pytest.approx(0.965, abs=1e-3)


def test_fig8_scaled_column_order_unity(tmp_path):
    fig_command(8, tmp_path)
    traces = parse_csv((tmp_path / "fig8.csv").read_text())
    scaled = traces["lambda12_x1e7"].values
    assert 0.01 < scaled.max() < 10.0
    meta = (tmp_path / "fig8.meta").read_text()
    assert "spinstar.pair_rule = complete" in meta


def test_fig6_meta_records_cutoff_decision(tmp_path):
    fig_command(6, tmp_path)
    meta = (tmp_path / "fig6.meta").read_text()
    assert "boson.Omega1 = 1.0" in meta
    assert "boson.gamma2 = 0.5" in meta


def test_fig_command_completes_quickly(tmp_path):
    import time
    start = time.perf_counter()
    fig_command(1, tmp_path)
    assert time.perf_counter() - start < 30.0


def test_run_report_flags_transform_mode(tmp_path):
    cfg = parse_config("scenario = eq9\ngrid.t_max = 0.1\ngrid.dt = 0.02\n"
                       "mode = complex_modulus\n")
    run_command(cfg, tmp_path)
    assert "mode = complex_modulus" in (tmp_path / "run.report").read_text()


def test_negative_grid_start_rejected():
    with pytest.raises(ConfigError) as exc:
        parse_config("scenario = eq9\ngrid.t0 = -0.5\n")
    assert any("grid.t0" in e for e in exc.value.errors)


def test_custom_kernel_run_matches_builtin(tmp_path):
    text = ("scenario = custom-kernel\nkernel.w0 = 0.0\n"
            "kernel.k1 = 2.0,0.0,0.0,0.0\nkernel.k2 = 2.0,0.0,0.0,0.0\n"
            "kernel.k12 = const:1.0\nkernel.l12 = 4.0,0.0,0.0,0.0\n"
            "grid.t_max = 0.5\ngrid.dt = 0.05\noutput = ck\n")
    run_command(parse_config(text), tmp_path)
    traces = parse_csv((tmp_path / "ck.csv").read_text())
    t = traces["kappa1"].times()
    assert np.max(np.abs(traces["kappa1"].values - np.exp(-t * t))) < 1e-8


def test_custom_kernel_must_start_at_unity(tmp_path):
    p = tmp_path / "bad_kernel.cfg"
    p.write_text("scenario = custom-kernel\nkernel.w0 = 0.0\n"
                 "kernel.k1 = 1.0,2.0,0.0,0.0\nkernel.k2 = 1.0,2.0,0.0,0.0\n"
                 "kernel.k12 = const:1.0\nkernel.l12 = 1.0,2.0,0.0,0.0\n")
    assert main(["run", "--config", str(p), "--out", str(tmp_path)]) == 2


def test_boson_run_without_overrides(tmp_path):
    text = ("scenario = boson\nboson.A1 = 1.0\nboson.beta = 0.2\n"
            "boson.t2 = t\nboson.t2_anc = done:1\n"
            "grid.t_max = 0.3\ngrid.dt = 0.05\noutput = bo\n")
    run_command(parse_config(text), tmp_path)
    traces = parse_csv((tmp_path / "bo.csv").read_text())
    assert set(traces) == {"kappa1", "lambda12"}
    assert traces["kappa1"].values[0] == 1.0


def test_fig_out_of_range(tmp_path):
    assert main(["fig", "9", "--out", str(tmp_path)]) == 2
    assert main(["fig", "0", "--out", str(tmp_path)]) == 2


# --- exit codes ----------------------------------------------------------------------

def test_exit_code_config_error(tmp_path, capsys):
    p = tmp_path / "bad.cfg"
    p.write_text("scenario = eq5\nbogus = 1\n")
    assert main(["run", "--config", str(p), "--out", str(tmp_path)]) == 2
    assert "config error" in capsys.readouterr().err
    assert not (tmp_path / "run.csv").exists()


def test_exit_code_empty_grid_writes_nothing(tmp_path):
    p = tmp_path / "empty.cfg"
    p.write_text("scenario = eq9\ngrid.t_max = -1.0\n")
    out = tmp_path / "out"
    assert main(["run", "--config", str(p), "--out", str(out)]) == 2
    assert not out.exists()


def test_exit_code_missing_config_file(tmp_path, capsys):
    assert main(["run", "--config", str(tmp_path / "nope.cfg")]) == 4
    assert "io failure" in capsys.readouterr().err


def test_numerical_failure_carries_scenario_and_time():
    from dephasim.cli import NumericalFailure
    from dephasim.quad import QuadratureError

    def boom(t):
        raise QuadratureError("forced", estimate=0.0, error_bound=1.0)

    cfg = parse_config("scenario = eq9\ngrid.t_max = 0.1\ngrid.dt = 0.05\n")
    ms = build_scenario(cfg)
    ms.eval_at = boom
    with pytest.raises(NumericalFailure) as exc:
        scan_scenario(ms, cfg.grid)
    assert exc.value.scenario == "eq9" and exc.value.t == 0.0
