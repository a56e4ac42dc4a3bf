"""Frequency-continuum environment scenarios.

Every factor trace here is a half-line Gaussian cosine transform

    |2 * Z1 * integral_0^inf exp(-(w - w0)^2) cos(P(t) w + C(t)) dw|

with a phase affine in both w and t.  A scenario bundles one (p, q, r, s)
kernel per factor, P = p*t + q and C = r*t + s, plus optional per-factor
constant overrides for factors that stay at 1.  Scenarios whose time axis
starts mid-protocol (after a coupling switch) are marked shifted_time; only
unshifted scenarios are required to start with all factors at 1.

Preset catalog (built-in scenario ids, coupling g where applicable):

    eq5   both local dynamics revive: envelope centered at w0=1, shared by
          both environments; k12 stays at 1.
    eq7   one Markovian, one reviving local dynamics: envelope at w0=0 with
          a unit frequency offset on environment 2.
    eq9   both local dynamics Markovian: envelope at w0=0, no offset.
    eq10  coupling-reduction protocol (3 -> 1 on environment 1 with the
          second at 2), time axis starting at the switch; k12 revives.
    eq11  coupling-increase protocol (1 -> 3 on environment 2 with the
          first at 2), same convention; k12 revives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .analysis import Grid, TimeSeries
from .core import DephasingFactors
from .quad import (DEFAULT_SETTINGS, GaussCosIntegrand, QuadratureSettings,
                   integrate_gauss_cos, normalization)

FACTOR_NAMES = ("k1", "k2", "k12", "l12")
COSINE_TRANSFORM = "cosine_transform"
COMPLEX_MODULUS = "complex_modulus"
PRESET_NAMES = ("eq5", "eq7", "eq9", "eq10", "eq11")


@dataclass(frozen=True)
class KernelPhase:
    """Phase coefficients: total phase (p*t + q)*w + (r*t + s)."""

    p: float
    q: float = 0.0
    r: float = 0.0
    s: float = 0.0

    def at(self, t: float) -> tuple[float, float]:
        return (self.p * t + self.q, self.r * t + self.s)


@dataclass(frozen=True)
class FrequencyScenario:
    """Half-line Gaussian envelope at w0 with one phase kernel per factor.

    constants maps factor names to fixed values that bypass quadrature.
    mode selects plain cosine transform or the complex modulus (cosine and
    sine parts added in quadrature).
    """

    w0: float
    kernels: dict[str, KernelPhase]
    constants: dict[str, float] = field(default_factory=dict)
    mode: str = COSINE_TRANSFORM
    shifted_time: bool = False
    name: str = "custom"

    def __post_init__(self):
        if self.mode not in (COSINE_TRANSFORM, COMPLEX_MODULUS):
            raise ValueError(f"unknown mode {self.mode!r}")
        for n in (*self.kernels, *self.constants):
            if n not in FACTOR_NAMES:
                raise ValueError(f"unknown factor {n!r}")
        for n in FACTOR_NAMES:
            if (n in self.kernels) == (n in self.constants):
                raise ValueError(f"factor {n!r} needs exactly one of kernel/constant")
        if not self.shifted_time:
            f0 = eval_factors(self, 0.0)
            if max(abs(abs(v) - 1.0) for v in
                   (f0.k1, f0.k2, f0.k12, f0.l12)) > 1e-9:
                raise ValueError("factors must equal 1 at t=0")

    @property
    def z1(self) -> float:
        return normalization(self.w0)

    def factor_term(self, name: str, t: float):
        """Either ('const', value) or ('phase', P, C) for one factor at t."""
        if name in self.constants:
            return ("const", self.constants[name])
        P, C = self.kernels[name].at(t)
        return ("phase", P, C)


@dataclass(frozen=True)
class CouplingSchedule:
    """Piecewise-constant coupling g(t); breakpoints are (time, value) with
    the first at t=0.  theta(t) = 2 * integral_0^t g is the accumulated
    dephasing phase per unit frequency."""

    breakpoints: tuple[tuple[float, float], ...]

    def __post_init__(self):
        bp = tuple((float(t), float(g)) for t, g in self.breakpoints)
        if not bp or bp[0][0] != 0.0:
            raise ValueError("schedule must start at t=0")
        times = [t for t, _ in bp]
        if any(t2 <= t1 for t1, t2 in zip(times, times[1:])):
            raise ValueError("breakpoint times must be strictly increasing")
        object.__setattr__(self, "breakpoints", bp)

    @classmethod
    def constant(cls, g: float) -> "CouplingSchedule":
        return cls(((0.0, g),))

    def value(self, t: float) -> float:
        g = self.breakpoints[0][1]
        for tk, gk in self.breakpoints:
            if tk <= t:
                g = gk
            else:
                break
        return g

    def theta(self, t: float) -> float:
        """2 * integral_0^t g(s) ds; continuous and piecewise linear."""
        if t < 0:
            raise ValueError("t must be >= 0")
        acc = 0.0
        for k, (tk, gk) in enumerate(self.breakpoints):
            t_next = self.breakpoints[k + 1][0] if k + 1 < len(self.breakpoints) else math.inf
            if t <= tk:
                break
            acc += 2.0 * gk * (min(t, t_next) - tk)
        return acc


@dataclass(frozen=True)
class DerivedScenario:
    """Scenario built from coupling schedules and frequency offsets.

    Environment i contributes the phase (w + c_i) * theta_i(t); the factors
    use phase_1, phase_2, their sum (l12) and their difference (k12).
    """

    c1: float
    c2: float
    sch1: CouplingSchedule
    sch2: CouplingSchedule
    w0: float
    mode: str = COSINE_TRANSFORM
    shifted_time: bool = False
    name: str = "derived"

    @property
    def z1(self) -> float:
        return normalization(self.w0)

    def factor_term(self, name: str, t: float):
        th1, th2 = self.sch1.theta(t), self.sch2.theta(t)
        if name == "k1":
            return ("phase", th1, self.c1 * th1)
        if name == "k2":
            return ("phase", th2, self.c2 * th2)
        if name == "l12":
            return ("phase", th1 + th2, self.c1 * th1 + self.c2 * th2)
        if name == "k12":
            return ("phase", th1 - th2, self.c1 * th1 - self.c2 * th2)
        raise ValueError(f"unknown factor {name!r}")


def scenario_preset(name: str, g: float | None = None) -> FrequencyScenario:
    """Built-in scenario by id; eq5/eq7/eq9 need the coupling g, the control
    presets eq10/eq11 have fixed couplings baked in."""
    if name in ("eq5", "eq7", "eq9"):
        if g is None:
            raise ValueError(f"preset {name!r} requires the coupling g")
        if name == "eq5":
            return FrequencyScenario(
                w0=1.0,
                kernels={"k1": KernelPhase(2 * g), "k2": KernelPhase(2 * g),
                         "l12": KernelPhase(4 * g)},
                constants={"k12": 1.0}, name=name)
        if name == "eq7":
            return FrequencyScenario(
                w0=0.0,
                kernels={"k1": KernelPhase(2 * g),
                         "k2": KernelPhase(2 * g, 0.0, 2 * g),
                         "l12": KernelPhase(4 * g, 0.0, 2 * g),
                         "k12": KernelPhase(0.0, 0.0, 2 * g)},
                name=name)
        return FrequencyScenario(
            w0=0.0,
            kernels={"k1": KernelPhase(2 * g), "k2": KernelPhase(2 * g),
                     "l12": KernelPhase(4 * g)},
            constants={"k12": 1.0}, name=name)
    if name in ("eq10", "eq11"):
        if g is not None:
            raise ValueError(f"preset {name!r} has fixed couplings")
        if name == "eq10":
            kernels = {"k1": KernelPhase(1.0, 3.0), "k2": KernelPhase(2.0, 2.0),
                       "l12": KernelPhase(3.0, 5.0), "k12": KernelPhase(-1.0, 1.0)}
        else:
            kernels = {"k1": KernelPhase(1.0, 2.0), "k2": KernelPhase(2.0, 1.0),
                       "l12": KernelPhase(5.0, 3.0), "k12": KernelPhase(-1.0, 1.0)}
        return FrequencyScenario(w0=0.0, kernels=kernels, shifted_time=True,
                                 name=name)
    raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")


def eval_factors(sc, t: float,
                 qs: QuadratureSettings = DEFAULT_SETTINGS) -> DephasingFactors:
    """Factor moduli of a scenario at one time (t means the shifted time for
    shifted_time scenarios)."""
    if t < 0:
        raise ValueError("t must be >= 0")
    vals = {}
    for name in FACTOR_NAMES:
        term = sc.factor_term(name, t)
        if term[0] == "const":
            vals[name] = term[1]
            continue
        _, P, C = term
        cos_part = 2.0 * sc.z1 * integrate_gauss_cos(
            GaussCosIntegrand(sc.w0, P, C), qs)
        if sc.mode == COMPLEX_MODULUS:
            sin_part = 2.0 * sc.z1 * integrate_gauss_cos(
                GaussCosIntegrand(sc.w0, P, C - 0.5 * math.pi), qs)
            vals[name] = math.hypot(cos_part, sin_part)
        else:
            vals[name] = abs(cos_part)
    return DephasingFactors(**vals)


def derive_kernels(c1: float, c2: float, sch1: CouplingSchedule,
                   sch2: CouplingSchedule, w0: float,
                   mode: str = COSINE_TRANSFORM) -> DerivedScenario:
    """Scenario whose kernels follow from per-environment frequency offsets
    c_i and coupling schedules; see DerivedScenario."""
    return DerivedScenario(c1=c1, c2=c2, sch1=sch1, sch2=sch2, w0=w0, mode=mode)


def scan_factors(sc, grid: Grid,
                 qs: QuadratureSettings = DEFAULT_SETTINGS) -> dict[str, TimeSeries]:
    """Factor traces over a uniform grid, one TimeSeries per factor name."""
    times = grid.times()
    rows = np.empty((times.size, len(FACTOR_NAMES)))
    for i, t in enumerate(times):
        f = eval_factors(sc, float(t), qs)
        rows[i] = (abs(f.k1), abs(f.k2), abs(f.k12), abs(f.l12))
    return {name: TimeSeries(grid.t0, grid.dt, rows[:, j])
            for j, name in enumerate(FACTOR_NAMES)}
