import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dephasim.analysis import Grid, detect_backflow
from dephasim.bosonbath import (Fig6Overrides, InteractionClock, OhmicBathConfig,
                                SwitchingClock, eval_boson_factors, fig6_setup,
                                gamma, scan_boson_factors, xi_phase)

CFG = OhmicBathConfig(A1=1.0, A2=1.0, Omega1=1.0, Omega2=1.0, beta=0.2)


def clock_pair(sys_duration, anc_duration):
    return InteractionClock(SwitchingClock.completed(sys_duration),
                            SwitchingClock.completed(anc_duration))


def lorentz_sine(b, omega=1.0):
    """integral_0^inf exp(-w/omega) sin(b w) dw, closed form."""
    return b * omega ** 2 / (1.0 + (b * omega) ** 2)


# --- switching clocks ----------------------------------------------------------

def test_clock_shapes():
    run = SwitchingClock.running()
    assert run(0.0) == 0.0 and run(2.5) == 2.5
    done = SwitchingClock.completed(1.0)
    assert done(0.0) == 1.0 and done(3.0) == 1.0
    win = SwitchingClock.window(0.5, 1.5)
    assert win(0.0) == 0.0
    assert win(1.0) == pytest.approx(0.5)
    assert win(9.0) == 1.0
    gap = SwitchingClock(((0.0, 1.0), (2.0, 3.0)))
    assert gap(2.5) == pytest.approx(1.5)


def test_clock_validation():
    with pytest.raises(ValueError):
        SwitchingClock(((1.0, 1.0),))
    with pytest.raises(ValueError):
        SwitchingClock(((0.0, 2.0), (1.0, 3.0)))


@given(st.floats(0, 5), st.floats(0, 5))
@settings(max_examples=60)
def test_clock_is_nondecreasing_and_lipschitz(t1, t2):
    clock = SwitchingClock(((0.0, 0.7), (1.2, 2.0), (4.0, math.inf)))
    lo, hi = sorted((t1, t2))
    assert clock(hi) >= clock(lo)
    assert clock(hi) - clock(lo) <= (hi - lo) + 1e-12


def test_config_validation():
    with pytest.raises(ValueError):
        OhmicBathConfig(-1.0, 1.0, 1.0, 1.0, 0.2)
    with pytest.raises(ValueError):
        OhmicBathConfig(1.0, 1.0, 0.0, 1.0, 0.2)
    with pytest.raises(ValueError):
        OhmicBathConfig(1.0, 1.0, 1.0, 1.0, 0.0)


# --- decoherence exponent ---------------------------------------------------------

def test_gamma_zero_before_interaction():
    clock = InteractionClock(SwitchingClock.window(2.0, 5.0), SwitchingClock.off())
    assert gamma(CFG, clock, 1, 1.0) == 0.0
    assert gamma(CFG, clock, 1, 0.0) == 0.0


def test_gamma_unit_time_value():
    # coth(10w) is 1 beyond w ~ 0.3, so Gamma is close to
    # int e^-w (1 - cos w) dw = 1/2
    val = gamma(CFG, clock_pair(1.0, 0.0), 1, 0.0)
    assert val == pytest.approx(0.5, abs=0.02)


def test_gamma_matches_midpoint_oracle():
    def oracle(T, beta, omega, n=2_000_000, wmax=45.0):
        w = (np.arange(n) + 0.5) * (wmax / n)
        f = np.exp(-w / omega) / np.tanh(2.0 * w / beta) * (1.0 - np.cos(w * T))
        return float(np.sum(f) * wmax / n)

    for T in (0.5, 1.0, 2.7):
        got = gamma(CFG, clock_pair(T, 0.0), 1, 0.0)
        assert got == pytest.approx(oracle(T, 0.2, 1.0), abs=1e-6)


def test_gamma_nonnegative():
    for T in (0.1, 0.9, 2.2, 3.0):
        assert gamma(CFG, clock_pair(T, 0.0), 1, 0.0) >= 0.0


# --- phase functional --------------------------------------------------------------

def test_xi_cancels_when_either_clock_is_zero():
    assert xi_phase(CFG, clock_pair(0.0, 1.3), 1, 0.0) == 0.0
    assert xi_phase(CFG, clock_pair(2.1, 0.0), 1, 0.0) == 0.0


@given(st.floats(0.1, 3.0), st.floats(0.2, 2.0), st.floats(0.1, 2.0))
@settings(max_examples=30, deadline=None)
def test_xi_cancellation_identities_numerically(tp, A, omega):
    """Integrating the printed phase kernel with either clock at zero must
    vanish without relying on the implementation's shortcut."""
    w = (np.arange(200_000) + 0.5) * (40.0 * omega / 200_000)
    dw = 40.0 * omega / 200_000
    env = A * np.exp(-w / omega)
    sys_zero = 2 * np.sin(w * (0.0 - tp)) - 2 * np.sin(w * 0.0) + 2 * np.sin(w * tp)
    anc_zero = 2 * np.sin(w * (tp - 0.0)) - 2 * np.sin(w * tp) + 2 * np.sin(w * 0.0)
    assert abs(np.sum(env * sys_zero) * dw) < 1e-12
    assert abs(np.sum(env * anc_zero) * dw) < 1e-12


def test_xi_closed_form_example():
    val = xi_phase(CFG, clock_pair(2.0, 1.0), 1, 0.0)
    assert val == pytest.approx(1.2, abs=1e-9)


@given(st.floats(0.05, 3.0), st.floats(0.05, 3.0), st.floats(0.3, 2.0),
       st.floats(0.1, 2.0))
@settings(max_examples=40, deadline=None)
def test_xi_matches_lorentzian_closed_form(T, Tp, omega, A):
    cfg = OhmicBathConfig(A, 1.0, omega, 1.0, 0.2)
    expected = A * (2 * lorentz_sine(T - Tp, omega) - 2 * lorentz_sine(T, omega)
                    + 2 * lorentz_sine(Tp, omega))
    got = xi_phase(cfg, clock_pair(T, Tp), 1, 0.0)
    assert got == pytest.approx(expected, abs=1e-8)


# --- factor evaluation ---------------------------------------------------------------

def test_factors_start_at_unity_with_fresh_clocks():
    clocks = (InteractionClock(SwitchingClock.running(), SwitchingClock.running()),
              InteractionClock(SwitchingClock.running(), SwitchingClock.running()))
    k1, l12 = eval_boson_factors(CFG, clocks, None, 0.0)
    assert k1 == 1.0
    assert l12 == 1.0


def test_zero_coupling_collapse():
    cfg = OhmicBathConfig(0.0, 0.0, 1.0, 1.0, 0.2)
    clocks = (InteractionClock(SwitchingClock.running(), SwitchingClock.completed(1)),
              InteractionClock(SwitchingClock.running(), SwitchingClock.completed(1)))
    for t in (0.0, 0.7, 2.4):
        assert eval_boson_factors(cfg, clocks, None, t) == (1.0, 1.0)


def test_canonical_dataset_initial_values():
    cfg, clocks, overrides = fig6_setup()
    k1, l12 = eval_boson_factors(cfg, clocks, overrides, 0.0)
    assert abs(k1 - 1.0) < 1e-10
    assert l12 == pytest.approx(math.exp(-0.5) * abs(math.cos(math.pi / 2)),
                                abs=1e-10)
    assert l12 < 1e-10


def test_canonical_dataset_has_nonlocal_backflow():
    cfg, clocks, overrides = fig6_setup()
    traces = scan_boson_factors(cfg, clocks, overrides, Grid(0.0, 0.01, 3.0))
    k1, l12 = traces["kappa1"].values, traces["lambda12"].values
    dk, dl = np.diff(k1), np.diff(l12)
    assert np.any((dl > 0) & (dk < 0))
    assert detect_backflow(traces["lambda12"]).has_backflow()


def test_factors_stay_in_unit_interval():
    cfg, clocks, overrides = fig6_setup()
    traces = scan_boson_factors(cfg, clocks, overrides, Grid(0.0, 0.05, 3.0))
    for ts in traces.values():
        assert ts.values.min() >= 0.0
        assert ts.values.max() <= 1.0


def test_overrides_replace_second_environment():
    cfg, clocks, _ = fig6_setup()
    k1_a, l12_a = eval_boson_factors(cfg, clocks, Fig6Overrides(0.0, 0.0), 1.5)
    k1_b, l12_b = eval_boson_factors(cfg, clocks, Fig6Overrides(2.0, 0.0), 1.5)
    assert k1_a == k1_b  # kappa1 never touches environment 2
    assert l12_a == pytest.approx(l12_b * math.exp(2.0), rel=1e-12)
