"""Command-line surface: config parsing, scenario runs, canonical datasets.

Config files are UTF-8 `key = value` lines with `#` comments and dotted keys
for nesting.  Unknown keys are errors, and parsing reports every problem at
once rather than stopping at the first.  Outputs are deterministic: CSV with
a fixed header, 9-significant-digit values, LF endings and no timestamps,
plus a report of onsets, BLP measures and the local/global onset ordering in
the same key=value grammar.

Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bosonbath, freqkernel, spinstar
from .analysis import (BackflowReport, Grid, TimeSeries, blp_measure_dephasing,
                       compare_onsets, detect_backflow, golden_section_min)
from .quad import QuadratureError

SCENARIOS = ("eq5", "eq7", "eq9", "eq10", "eq11", "boson", "spinstar",
             "custom-kernel")
FREQ_SCENARIOS = ("eq5", "eq7", "eq9", "eq10", "eq11", "custom-kernel")
MODES = (freqkernel.COSINE_TRANSFORM, freqkernel.COMPLEX_MODULUS)
ALL_COLUMNS = ("kappa1", "kappa2", "kappa12", "lambda12")
LOCAL_COLUMNS = ("kappa1", "kappa2")
GLOBAL_COLUMNS = ("kappa12", "lambda12")


class ConfigError(Exception):
    """Invalid configuration; carries the full list of problems."""

    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = list(errors)


class NumericalFailure(Exception):
    """A factor evaluation failed to converge; records scenario and time."""

    def __init__(self, scenario: str, t: float, cause: Exception):
        super().__init__(f"scenario {scenario!r} failed at t={t!r}: {cause}")
        self.scenario = scenario
        self.t = t
        self.cause = cause


@dataclass(frozen=True)
class RunConfig:
    scenario: str
    params: dict
    grid: Grid
    mode: str = freqkernel.COSINE_TRANSFORM
    output: str = "run"


# --- config grammar ----------------------------------------------------------

def _parse_float(raw: str):
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"expected a number, got {raw!r}")


def _parse_int(raw: str):
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"expected an integer, got {raw!r}")


def _parse_bool(raw: str):
    if raw in ("true", "false"):
        return raw == "true"
    raise ValueError(f"expected true or false, got {raw!r}")


def _parse_kernel(raw: str):
    """Either 'const:<value>' or four comma-separated phase coefficients."""
    if raw.startswith("const:"):
        return ("const", _parse_float(raw[len("const:"):]))
    parts = [p.strip() for p in raw.split(",")]
    if len(parts) != 4:
        raise ValueError(f"expected 'p,q,r,s' or 'const:<v>', got {raw!r}")
    return tuple(_parse_float(p) for p in parts)


def _parse_clock(raw: str):
    """Clock grammar: 't' | 'off' | 'done:<d>' | 'window:<s>:<f>'."""
    if raw in ("t", "off"):
        return raw
    if raw.startswith("done:"):
        _parse_float(raw[len("done:"):])
        return raw
    if raw.startswith("window:"):
        parts = raw.split(":")
        if len(parts) == 3:
            s, f = _parse_float(parts[1]), _parse_float(parts[2])
            if f <= s:
                raise ValueError(f"empty clock window in {raw!r}")
            return raw
    raise ValueError(f"bad clock spec {raw!r}")


def _render_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, tuple):
        if v and v[0] == "const":
            return f"const:{v[1]!r}"
        return ",".join(repr(x) for x in v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


# key -> (parser, default); REQUIRED means no default
REQUIRED = object()

_COMMON_KEYS = {
    "scenario": (str, REQUIRED),
    "grid.t0": (_parse_float, 0.0),
    "grid.dt": (_parse_float, 1e-3),
    "grid.t_max": (_parse_float, 3.0),
    "mode": (str, freqkernel.COSINE_TRANSFORM),
    "output": (str, "run"),
}

_SCENARIO_KEYS = {
    # g defaults to the coupling every canonical dataset uses
    "eq5": {"g": (_parse_float, 1.0)},
    "eq7": {"g": (_parse_float, 1.0)},
    "eq9": {"g": (_parse_float, 1.0)},
    "eq10": {},
    "eq11": {},
    "custom-kernel": {
        "kernel.w0": (_parse_float, REQUIRED),
        "kernel.k1": (_parse_kernel, REQUIRED),
        "kernel.k2": (_parse_kernel, REQUIRED),
        "kernel.k12": (_parse_kernel, REQUIRED),
        "kernel.l12": (_parse_kernel, REQUIRED),
        "kernel.shifted_time": (_parse_bool, False),
    },
    "boson": {
        "boson.A1": (_parse_float, REQUIRED),
        "boson.A2": (_parse_float, 1.0),
        "boson.Omega1": (_parse_float, 1.0),
        "boson.Omega2": (_parse_float, 1.0),
        "boson.beta": (_parse_float, REQUIRED),
        "boson.gamma2": (_parse_float, None),
        "boson.xi2": (_parse_float, None),
        "boson.t1": (_parse_clock, "t"),
        "boson.t1_anc": (_parse_clock, "done:1"),
        "boson.t2": (_parse_clock, "off"),
        "boson.t2_anc": (_parse_clock, "done:1"),
    },
    "spinstar": {
        "spinstar.n1": (_parse_int, REQUIRED),
        "spinstar.n2": (_parse_int, REQUIRED),
        "spinstar.B1": (_parse_float, REQUIRED),
        "spinstar.B2": (_parse_float, REQUIRED),
        "spinstar.alpha": (_parse_float, REQUIRED),
        "spinstar.J1": (_parse_float, 0.0),
        "spinstar.J2": (_parse_float, 0.0),
        "spinstar.beta": (_parse_float, REQUIRED),
        "spinstar.theta2": (_parse_float, 0.0),
        "spinstar.g": (_parse_float, 1.0),
    },
}


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate a config; raises ConfigError listing every
    problem found, not just the first."""
    errors: list[str] = []
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            errors.append(f"line {lineno}: expected 'key = value', got {body!r}")
            continue
        key, value = (part.strip() for part in body.split("=", 1))
        if not key or not value:
            errors.append(f"line {lineno}: empty key or value")
            continue
        if key in raw:
            errors.append(f"line {lineno}: duplicate key {key!r}")
            continue
        raw[key] = value

    scenario = raw.get("scenario")
    if scenario is None:
        errors.append("missing required key 'scenario'")
    elif scenario not in SCENARIOS:
        errors.append(f"unknown scenario {scenario!r}; choose from {SCENARIOS}")
    schema = dict(_COMMON_KEYS)
    if scenario in _SCENARIO_KEYS:
        schema.update(_SCENARIO_KEYS[scenario])

    for key in raw:
        if key not in schema:
            errors.append(f"unknown key {key!r} for scenario {scenario!r}")

    values: dict = {}
    for key, (parser, default) in schema.items():
        if key in raw:
            try:
                values[key] = parser(raw[key])
            except ValueError as exc:
                errors.append(f"key {key!r}: {exc}")
        elif default is REQUIRED:
            if key != "scenario":  # absence already reported above
                errors.append(f"missing required key {key!r} for scenario {scenario!r}")
        else:
            values[key] = default

    if errors:
        raise ConfigError(errors)
    errors.extend(_validate_ranges(scenario, values))
    if errors:
        raise ConfigError(errors)

    params = {k: v for k, v in values.items()
              if k not in _COMMON_KEYS and v is not None}
    grid = Grid(values["grid.t0"], values["grid.dt"], values["grid.t_max"])
    return RunConfig(scenario=scenario, params=params, grid=grid,
                     mode=values["mode"], output=values["output"])


def _validate_ranges(scenario: str, v: dict) -> list[str]:
    errors = []
    if v["grid.t0"] < 0:
        errors.append(f"grid.t0 must be >= 0, got {v['grid.t0']!r}")
    if v["grid.dt"] <= 0:
        errors.append(f"grid.dt must be positive, got {v['grid.dt']!r}")
    elif v["grid.t_max"] <= v["grid.t0"]:
        errors.append(f"empty grid: t_max = {v['grid.t_max']!r} <= t0 = {v['grid.t0']!r}")
    if v["mode"] not in MODES:
        errors.append(f"unknown mode {v['mode']!r}; choose from {MODES}")
    elif v["mode"] != freqkernel.COSINE_TRANSFORM and scenario not in FREQ_SCENARIOS:
        errors.append(f"mode {v['mode']!r} only applies to frequency scenarios")
    if scenario in ("eq5", "eq7", "eq9") and "g" in v and v["g"] == 0:
        errors.append("coupling g must be nonzero")
    if scenario == "custom-kernel" and v["kernel.w0"] < 0:
        errors.append("kernel.w0 must be >= 0")
    if scenario == "boson":
        if v["boson.A1"] < 0 or v["boson.A2"] < 0:
            errors.append("boson couplings must be >= 0")
        if v["boson.Omega1"] <= 0 or v["boson.Omega2"] <= 0:
            errors.append("boson cutoffs must be positive")
        if v["boson.beta"] is not None and v["boson.beta"] <= 0:
            errors.append(f"boson.beta must be positive, got {v['boson.beta']!r}")
        if (v["boson.gamma2"] is None) != (v["boson.xi2"] is None):
            errors.append("boson.gamma2 and boson.xi2 must be given together")
    if scenario == "spinstar":
        if v["spinstar.n1"] < 1 or v["spinstar.n2"] < 1:
            errors.append("spinstar bath sizes must be >= 1")
        elif v["spinstar.n1"] + v["spinstar.n2"] > spinstar.MAX_SPINS:
            errors.append(f"spinstar.n1 + spinstar.n2 exceeds {spinstar.MAX_SPINS}")
        if v["spinstar.beta"] < 0:
            errors.append(f"spinstar.beta must be >= 0, got {v['spinstar.beta']!r}")
        if v["spinstar.theta2"] < 0:
            errors.append("spinstar.theta2 must be >= 0")
        for i in ("1", "2"):
            if v[f"spinstar.J{i}"] != 0 and v[f"spinstar.B{i}"] == 0:
                errors.append(f"spinstar.J{i} != 0 with spinstar.B{i} = 0 is "
                              "undefined (J/B scaling)")
    return errors


def render_config(config: RunConfig) -> str:
    """Inverse of parse_config: parse_config(render_config(c)) == c."""
    lines = [f"scenario = {config.scenario}"]
    for key in sorted(config.params):
        lines.append(f"{key} = {_render_value(config.params[key])}")
    lines.append(f"grid.t0 = {config.grid.t0!r}")
    lines.append(f"grid.dt = {config.grid.dt!r}")
    lines.append(f"grid.t_max = {config.grid.t_max!r}")
    lines.append(f"mode = {config.mode}")
    lines.append(f"output = {config.output}")
    return "\n".join(lines) + "\n"


# --- scenario materialization ------------------------------------------------

@dataclass
class MaterializedScenario:
    """A runnable scenario: named factor columns and a per-time evaluator."""

    name: str
    columns: tuple[str, ...]
    eval_at: object  # callable t -> tuple of column values
    metadata: dict = field(default_factory=dict)


def _clock_from_spec(spec: str) -> bosonbath.SwitchingClock:
    if spec == "t":
        return bosonbath.SwitchingClock.running()
    if spec == "off":
        return bosonbath.SwitchingClock.off()
    if spec.startswith("done:"):
        return bosonbath.SwitchingClock.completed(float(spec[len("done:"):]))
    parts = spec.split(":")
    return bosonbath.SwitchingClock.window(float(parts[1]), float(parts[2]))


def build_scenario(config: RunConfig) -> MaterializedScenario:
    """Turn a validated config into an evaluator over time; domain-type
    rejections (e.g. a custom kernel not starting at 1) surface as config
    errors."""
    try:
        return _build_scenario(config)
    except ValueError as exc:
        raise ConfigError([str(exc)]) from exc


def _build_scenario(config: RunConfig) -> MaterializedScenario:
    kind = config.scenario
    if kind in FREQ_SCENARIOS:
        if kind == "custom-kernel":
            kernels, constants = {}, {}
            for name in freqkernel.FACTOR_NAMES:
                spec = config.params[f"kernel.{name}"]
                if spec[0] == "const":
                    constants[name] = spec[1]
                else:
                    kernels[name] = freqkernel.KernelPhase(*spec)
            sc = freqkernel.FrequencyScenario(
                w0=config.params["kernel.w0"], kernels=kernels,
                constants=constants, mode=config.mode,
                shifted_time=config.params["kernel.shifted_time"],
                name="custom")
        else:
            sc = freqkernel.scenario_preset(kind, config.params.get("g"))
            if config.mode != sc.mode:
                sc = freqkernel.FrequencyScenario(
                    w0=sc.w0, kernels=sc.kernels, constants=sc.constants,
                    mode=config.mode, shifted_time=sc.shifted_time, name=sc.name)

        def eval_at(t, _sc=sc):
            f = freqkernel.eval_factors(_sc, t)
            return (abs(f.k1), abs(f.k2), abs(f.k12), abs(f.l12))

        meta = {"w0": sc.w0, "mode": sc.mode, "shifted_time": sc.shifted_time}
        if "g" in config.params:
            meta["g"] = config.params["g"]
        for n in freqkernel.FACTOR_NAMES:
            if n in sc.constants:
                meta[f"kernel.{n}"] = ("const", sc.constants[n])
            else:
                k = sc.kernels[n]
                meta[f"kernel.{n}"] = (k.p, k.q, k.r, k.s)
        return MaterializedScenario(kind, ALL_COLUMNS, eval_at, meta)

    if kind == "boson":
        p = config.params
        cfg = bosonbath.OhmicBathConfig(
            A1=p["boson.A1"], A2=p["boson.A2"], Omega1=p["boson.Omega1"],
            Omega2=p["boson.Omega2"], beta=p["boson.beta"])
        clocks = (bosonbath.InteractionClock(_clock_from_spec(p["boson.t1"]),
                                             _clock_from_spec(p["boson.t1_anc"])),
                  bosonbath.InteractionClock(_clock_from_spec(p["boson.t2"]),
                                             _clock_from_spec(p["boson.t2_anc"])))
        overrides = None
        if "boson.gamma2" in p:
            overrides = bosonbath.Fig6Overrides(p["boson.gamma2"], p["boson.xi2"])

        def eval_at(t, _cfg=cfg, _clocks=clocks, _ov=overrides):
            return bosonbath.eval_boson_factors(_cfg, _clocks, _ov, t)

        meta = dict(p)
        return MaterializedScenario(kind, ("kappa1", "lambda12"), eval_at, meta)

    p = config.params
    cfg = spinstar.SpinStarConfig(
        n1=p["spinstar.n1"], n2=p["spinstar.n2"], B1=p["spinstar.B1"],
        B2=p["spinstar.B2"], alpha=p["spinstar.alpha"], J1=p["spinstar.J1"],
        J2=p["spinstar.J2"], beta=p["spinstar.beta"],
        g1=(p["spinstar.g"],) * p["spinstar.n1"],
        g2=(p["spinstar.g"],) * p["spinstar.n2"])
    table = spinstar.build_table(cfg)
    theta2 = p["spinstar.theta2"]

    def eval_at(t, _table=table, _th2=theta2):
        f = _table.factors(spinstar.ThetaPair(t, _th2))
        return (abs(f.k1), abs(f.k2), abs(f.k12), abs(f.l12))

    meta = dict(p)
    meta["spinstar.pair_rule"] = cfg.pair_rule
    return MaterializedScenario(kind, ALL_COLUMNS, eval_at, meta)


def scan_scenario(ms: MaterializedScenario, grid: Grid) -> dict[str, TimeSeries]:
    """Evaluate all factor columns over the grid; numerical failures carry
    the scenario name and the time at which they occurred."""
    times = grid.times()
    rows = np.empty((times.size, len(ms.columns)))
    for i, t in enumerate(times):
        try:
            rows[i] = ms.eval_at(float(t))
        except QuadratureError as exc:
            raise NumericalFailure(ms.name, float(t), exc) from exc
    return {name: TimeSeries(grid.t0, grid.dt, rows[:, j])
            for j, name in enumerate(ms.columns)}


# --- output formatting --------------------------------------------------------

def format_value(x: float) -> str:
    """9 significant digits, no negative zero."""
    if x == 0:
        x = 0.0
    return format(float(x), ".9g")


def csv_text(traces: dict[str, TimeSeries], columns: tuple[str, ...],
             scales: dict[str, float] | None = None) -> str:
    """CSV with a t column plus the requested factor columns; scaled copies
    (e.g. lambda12_x500) are appended after their base column."""
    scales = scales or {}
    header = ["t"]
    for col in columns:
        header.append(col)
        if col in scales:
            header.append(f"{col}_x{format_scale(scales[col])}")
    first = traces[columns[0]]
    times = first.times()
    lines = [",".join(header)]
    for i, t in enumerate(times):
        row = [format_value(t)]
        for col in columns:
            v = traces[col].values[i]
            row.append(format_value(v))
            if col in scales:
                row.append(format_value(v * scales[col]))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def format_scale(s: float) -> str:
    return format(s, ".0e").replace("e+0", "e").replace("e+", "e") \
        if s >= 1e6 else format(int(s), "d")


def report_lines(scenario_name: str, traces: dict[str, TimeSeries],
                 continuous=None, mode: str | None = None) -> list[str]:
    """Onsets, growth gains, BLP measures and onset ordering, one key=value
    line each.  With a continuous factor evaluator, interior onsets are
    refined by golden-section search around the grid minimum."""
    lines = [f"scenario = {scenario_name}"]
    if mode is not None:
        lines.append(f"mode = {mode}")
    reports: dict[str, BackflowReport] = {}
    for col, ts in traces.items():
        reports[col] = detect_backflow(ts)
    for col, rep in reports.items():
        onset = rep.onset
        if onset is not None and continuous is not None:
            onset = _refine_onset(rep, traces[col], lambda t, c=col: continuous(c, t))
        lines.append(f"onset.{col} = " + ("none" if onset is None else f"{onset:.3f}"))
    for col, rep in reports.items():
        lines.append(f"gain.{col} = {format_value(rep.total_gain)}")
    for col in LOCAL_COLUMNS:
        if col in traces:
            lines.append(f"blp.{col} = {format_value(blp_measure_dephasing(traces[col]))}")
    if all(c in reports for c in LOCAL_COLUMNS):
        for gcol in GLOBAL_COLUMNS:
            if gcol in reports:
                cmp = compare_onsets(reports["kappa1"], reports["kappa2"],
                                     reports[gcol])
                lines.append(f"classification.{gcol} = {cmp.classification}")
    return lines


def _refine_onset(rep: BackflowReport, ts: TimeSeries, f) -> float:
    i0 = int(round((rep.intervals[0].t_start - ts.t0) / ts.dt))
    if i0 < 1:
        return rep.intervals[0].t_start
    lo = ts.time_at(i0 - 1)
    hi = ts.time_at(min(i0 + 1, len(ts) - 1))
    return golden_section_min(f, lo, hi, tol=1e-5)


# --- figure catalog ------------------------------------------------------------

def _fig_config(n: int) -> tuple[RunConfig, tuple[str, ...], dict[str, float]]:
    grid = Grid(0.0, 1e-3, 3.0)
    if n == 1:
        return (RunConfig("eq5", {"g": 1.0}, grid, output="fig1"),
                ("kappa1", "lambda12"), {})
    if n == 2:
        return (RunConfig("eq7", {"g": 1.0}, grid, output="fig2"),
                ALL_COLUMNS, {})
    if n == 3:
        return (RunConfig("eq9", {"g": 1.0}, grid, output="fig3"),
                ("kappa1", "lambda12"), {})
    if n == 4:
        return (RunConfig("eq10", {}, grid, output="fig4"),
                ALL_COLUMNS, {"lambda12": 500.0})
    if n == 5:
        return (RunConfig("eq11", {}, grid, output="fig5"),
                ALL_COLUMNS, {})
    if n == 6:
        params = {"boson.A1": 1.0, "boson.A2": 1.0, "boson.Omega1": 1.0,
                  "boson.Omega2": 1.0, "boson.beta": 0.2,
                  "boson.gamma2": 0.5, "boson.xi2": math.pi / 2.0,
                  "boson.t1": "t", "boson.t1_anc": "done:1",
                  "boson.t2": "off", "boson.t2_anc": "done:1"}
        return (RunConfig("boson", params, grid, output="fig6"),
                ("kappa1", "lambda12"), {})
    if n == 7 or n == 8:
        J = 10.0 if n == 7 else 0.0
        theta2 = 0.2 if n == 7 else 0.785
        params = {"spinstar.n1": 5, "spinstar.n2": 5, "spinstar.B1": 2.0,
                  "spinstar.B2": 2.0, "spinstar.alpha": 4.0,
                  "spinstar.J1": J, "spinstar.J2": J, "spinstar.beta": 0.01,
                  "spinstar.theta2": theta2, "spinstar.g": 1.0}
        scales = {} if n == 7 else {"lambda12": 1e7}
        return (RunConfig("spinstar", params, grid, output=f"fig{n}"),
                ("kappa1", "lambda12"), scales)
    raise ConfigError([f"figure number {n} out of range 1..8"])


# --- commands -------------------------------------------------------------------

def _write_text(path: Path, text: str):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def run_command(config: RunConfig, out_dir: Path) -> list[Path]:
    """Scan the scenario, write <output>.csv and <output>.report."""
    ms = build_scenario(config)
    traces = scan_scenario(ms, config.grid)

    def continuous(col, t, _ms=ms):
        return _ms.eval_at(t)[_ms.columns.index(col)]

    csv_path = out_dir / f"{config.output}.csv"
    rep_path = out_dir / f"{config.output}.report"
    _write_text(csv_path, csv_text(traces, ms.columns))
    mode = config.mode if config.scenario in FREQ_SCENARIOS else None
    _write_text(rep_path,
                "\n".join(report_lines(ms.name, traces, continuous, mode)) + "\n")
    return [csv_path, rep_path]


def fig_command(n: int, out_dir: Path) -> list[Path]:
    """Write fig<n>.csv plus fig<n>.meta recording every parameter."""
    config, columns, scales = _fig_config(n)
    ms = build_scenario(config)
    traces = scan_scenario(ms, config.grid)
    csv_path = out_dir / f"fig{n}.csv"
    _write_text(csv_path, csv_text(traces, columns, scales))

    meta = [f"figure = {n}", f"scenario = {config.scenario}"]
    for key in sorted(ms.metadata):
        meta.append(f"{key} = {_render_value(ms.metadata[key])}")
    meta.append(f"grid.t0 = {config.grid.t0!r}")
    meta.append(f"grid.dt = {config.grid.dt!r}")
    meta.append(f"grid.t_max = {config.grid.t_max!r}")
    cols = []
    for c in columns:
        cols.append(c)
        if c in scales:
            cols.append(f"{c}_x{format_scale(scales[c])}")
    meta.append("columns = t," + ",".join(cols))
    meta_path = out_dir / f"fig{n}.meta"
    _write_text(meta_path, "\n".join(meta) + "\n")
    return [csv_path, meta_path]


def measure_command(config: RunConfig, out_dir: Path) -> str:
    """Re-analyze a CSV produced by an earlier run of the same config."""
    csv_path = out_dir / f"{config.output}.csv"
    try:
        text = csv_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read {csv_path}: {exc}") from exc
    traces = parse_csv(text)
    return "\n".join(report_lines(config.scenario, traces)) + "\n"


def parse_csv(text: str) -> dict[str, TimeSeries]:
    lines = [ln for ln in text.splitlines() if ln]
    header = lines[0].split(",")
    if header[0] != "t" or len(lines) < 4:
        raise ConfigError(["CSV must have a t column and at least 3 rows"])
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    t = data[:, 0]
    dt = t[1] - t[0]
    return {name: TimeSeries(t[0], dt, data[:, j])
            for j, name in enumerate(header) if j > 0}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dephasim",
        description="Two-qubit dephasing factors under correlated environments")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run a scenario from a config file")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", default=".")
    p_fig = sub.add_parser("fig", help="emit a canonical dataset (1..8)")
    p_fig.add_argument("n", type=int)
    p_fig.add_argument("--out", default=".")
    p_meas = sub.add_parser("measure", help="re-analyze a previously run CSV")
    p_meas.add_argument("--config", required=True)
    p_meas.add_argument("--out", default=".")
    args = parser.parse_args(argv)

    try:
        if args.command == "fig":
            paths = fig_command(args.n, Path(args.out))
            for p in paths:
                print(p)
            return 0
        config_text = Path(args.config).read_text(encoding="utf-8")
        config = parse_config(config_text)
        if args.command == "run":
            for p in run_command(config, Path(args.out)):
                print(p)
            return 0
        sys.stdout.write(measure_command(config, Path(args.out)))
        return 0
    except ConfigError as exc:
        for e in exc.errors:
            print(f"config error: {e}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"io failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
