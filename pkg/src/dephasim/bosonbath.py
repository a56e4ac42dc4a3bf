"""Ohmic boson-bath decoherence for the shared-Bell-pair protocol.

Two environments of bosonic modes with Ohmic coupling density
A_i * w * exp(-w / Omega_i) first talk to an ancilla pair (which correlates
them), then to the system qubits.  Everything reduces to two scalar
functionals of the accumulated interaction times T = t_i(t) and T' = t'_i(t):

    Gamma_i = integral_0^inf A_i e^{-w/Omega_i} coth(2w/beta) (1 - cos(w T)) dw
    Xi_i    = integral_0^inf A_i e^{-w/Omega_i}
              (2 sin(w (T - T')) - 2 sin(w T) + 2 sin(w T')) dw

giving kappa1 = |e^{-Gamma_1} cos(Xi_1)| and
lambda12 = |e^{-Gamma_1 - Gamma_2} cos(Xi_1 + Xi_2)|.

The canonical dataset (figure 6) pins Gamma_2 = 0.5 and Xi_2 = pi/2 as
constants instead of evolving the second clock; Fig6Overrides carries that.
The cutoff Omega_1 is not pinned by that dataset and defaults to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import Grid, TimeSeries
from .quad import adaptive_quad

TAIL_FACTOR = 40.0  # truncate at Omega * TAIL_FACTOR; envelope < 5e-18 there


@dataclass(frozen=True)
class OhmicBathConfig:
    """Ohmic coupling densities A_i w exp(-w/Omega_i) at inverse temperature
    beta, one (A, Omega) pair per environment."""

    A1: float
    A2: float
    Omega1: float
    Omega2: float
    beta: float

    def __post_init__(self):
        if self.A1 < 0 or self.A2 < 0:
            raise ValueError("coupling constants must be >= 0")
        if self.Omega1 <= 0 or self.Omega2 <= 0:
            raise ValueError("cutoff frequencies must be positive")
        if self.beta <= 0:
            raise ValueError("inverse temperature must be positive")

    def coupling(self, i: int) -> tuple[float, float]:
        if i == 1:
            return self.A1, self.Omega1
        if i == 2:
            return self.A2, self.Omega2
        raise ValueError(f"environment index must be 1 or 2, got {i!r}")


@dataclass(frozen=True)
class SwitchingClock:
    """Accumulated on-time of a switched interaction.

    windows are disjoint ascending (start, stop) intervals during which the
    interaction runs; stop may be inf.  A negative start models interaction
    completed before the observation window.  The resulting function of t is
    piecewise linear, nondecreasing and 1-Lipschitz.
    """

    windows: tuple[tuple[float, float], ...]

    def __post_init__(self):
        prev_stop = -math.inf
        for s, f in self.windows:
            if f <= s:
                raise ValueError(f"window ({s!r}, {f!r}) is empty")
            if s < prev_stop:
                raise ValueError("windows must be disjoint and ascending")
            prev_stop = f

    @classmethod
    def off(cls) -> "SwitchingClock":
        return cls(())

    @classmethod
    def running(cls, start: float = 0.0) -> "SwitchingClock":
        return cls(((start, math.inf),))

    @classmethod
    def completed(cls, duration: float) -> "SwitchingClock":
        """Interaction that already ran for `duration` before t=0."""
        if duration == 0:
            return cls(())
        return cls(((-duration, 0.0),))

    @classmethod
    def window(cls, start: float, stop: float) -> "SwitchingClock":
        return cls(((start, stop),))

    def __call__(self, t: float) -> float:
        return math.fsum(max(0.0, min(t, f) - s) for s, f in self.windows)


@dataclass(frozen=True)
class InteractionClock:
    """System and ancilla accumulated-time functions for one environment."""

    sys: SwitchingClock
    anc: SwitchingClock


@dataclass(frozen=True)
class Fig6Overrides:
    """Constants replacing the environment-2 functionals in the canonical
    dataset: Gamma_2 pinned to gamma2_const, Xi_2 to xi2_phase_const."""

    gamma2_const: float = 0.5
    xi2_phase_const: float = math.pi / 2.0


def _coth(x: np.ndarray) -> np.ndarray:
    """coth on x > 0; series below 1e-3 avoids the 0/0 plateau."""
    out = np.empty_like(x)
    small = x < 1e-3
    xs = x[small]
    out[small] = 1.0 / xs + xs / 3.0 - xs ** 3 / 45.0
    out[~small] = 1.0 / np.tanh(x[~small])
    return out


def _panel_cap(omega: float, max_freq: float) -> float:
    cap = omega
    if max_freq > 0:
        cap = min(cap, (2.0 * math.pi / max_freq) / 8.0)
    return cap


def gamma(cfg: OhmicBathConfig, clock: InteractionClock, i: int, t: float) -> float:
    """Decoherence exponent Gamma_i(t); zero whenever t_i(t) is."""
    if t < 0:
        raise ValueError("t must be >= 0")
    A, omega = cfg.coupling(i)
    T = clock.sys(t)
    if A == 0.0 or T == 0.0:
        return 0.0
    beta = cfg.beta

    def integrand(w):
        return (A * np.exp(-w / omega) * _coth(2.0 * w / beta)
                * 2.0 * np.sin(0.5 * w * T) ** 2)

    return adaptive_quad(integrand, 0.0, TAIL_FACTOR * omega,
                         panel_width_cap=_panel_cap(omega, T))


def xi_phase(cfg: OhmicBathConfig, clock: InteractionClock, i: int, t: float) -> float:
    """Phase functional Xi_i(t); zero whenever either clock reads zero."""
    if t < 0:
        raise ValueError("t must be >= 0")
    A, omega = cfg.coupling(i)
    T, Tp = clock.sys(t), clock.anc(t)
    if A == 0.0 or T == 0.0 or Tp == 0.0:
        return 0.0

    def integrand(w):
        return (A * np.exp(-w / omega)
                * (2.0 * np.sin(w * (T - Tp)) - 2.0 * np.sin(w * T)
                   + 2.0 * np.sin(w * Tp)))

    max_freq = max(abs(T - Tp), T, Tp)
    return adaptive_quad(integrand, 0.0, TAIL_FACTOR * omega,
                         panel_width_cap=_panel_cap(omega, max_freq))


def eval_boson_factors(cfg: OhmicBathConfig,
                       clocks: tuple[InteractionClock, InteractionClock],
                       overrides: Fig6Overrides | None,
                       t: float) -> tuple[float, float]:
    """(kappa1, lambda12) at time t; overrides pin the environment-2 terms."""
    g1 = gamma(cfg, clocks[0], 1, t)
    x1 = xi_phase(cfg, clocks[0], 1, t)
    if overrides is not None:
        g2, x2 = overrides.gamma2_const, overrides.xi2_phase_const
    else:
        g2 = gamma(cfg, clocks[1], 2, t)
        x2 = xi_phase(cfg, clocks[1], 2, t)
    kappa1 = abs(math.exp(-g1) * math.cos(x1))
    lambda12 = abs(math.exp(-g1 - g2) * math.cos(x1 + x2))
    return kappa1, lambda12


def fig6_setup() -> tuple[OhmicBathConfig, tuple[InteractionClock, InteractionClock],
                          Fig6Overrides]:
    """Canonical-dataset configuration: A1=1, Omega1=1 (chosen), beta=0.2,
    system clock running from 0, ancilla clocks completed for 1 time unit,
    environment-2 functionals pinned to Gamma2=0.5 and Xi2=pi/2."""
    cfg = OhmicBathConfig(A1=1.0, A2=1.0, Omega1=1.0, Omega2=1.0, beta=0.2)
    clock1 = InteractionClock(sys=SwitchingClock.running(),
                              anc=SwitchingClock.completed(1.0))
    clock2 = InteractionClock(sys=SwitchingClock.off(),
                              anc=SwitchingClock.completed(1.0))
    return cfg, (clock1, clock2), Fig6Overrides()


def scan_boson_factors(cfg: OhmicBathConfig,
                       clocks: tuple[InteractionClock, InteractionClock],
                       overrides: Fig6Overrides | None,
                       grid: Grid) -> dict[str, TimeSeries]:
    """kappa1 and lambda12 traces over a uniform grid."""
    times = grid.times()
    k1 = np.empty(times.size)
    l12 = np.empty(times.size)
    for i, t in enumerate(times):
        k1[i], l12[i] = eval_boson_factors(cfg, clocks, overrides, float(t))
    return {"kappa1": TimeSeries(grid.t0, grid.dt, k1),
            "lambda12": TimeSeries(grid.t0, grid.dt, l12)}
