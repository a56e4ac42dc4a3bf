"""Non-Markovianity analysis on uniform-grid decoherence-factor traces.

Information backflow is witnessed by growth of a factor modulus: for a pair
of single-qubit states dephased by the same factor gamma, the trace distance
is sqrt(|b1-b2|^2 |gamma|^2 + (a1-a2+d2-d1)^2 / 4), so its derivative has the
sign of d|gamma|/dt whenever the coherences differ.  The BLP measure for the
dephasing family therefore collapses to the total variation of |gamma| over
its growth intervals (maximizer: antipodal equatorial states); the grid
maximizer below verifies that claim without assuming it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import QubitState

GROWTH_EPS = 1e-9
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Grid:
    """Uniform time grid [t0, t_max] with spacing dt."""

    t0: float = 0.0
    dt: float = 1e-3
    t_max: float = 3.0

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt!r}")
        if self.t_max <= self.t0:
            raise ValueError(f"empty grid: t_max={self.t_max!r} <= t0={self.t0!r}")

    def times(self) -> np.ndarray:
        n = int(math.floor((self.t_max - self.t0) / self.dt + 1e-9)) + 1
        return self.t0 + self.dt * np.arange(n)


@dataclass(frozen=True)
class TimeSeries:
    """Real values on a uniform grid starting at t0 with spacing dt."""

    t0: float
    dt: float
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if v.ndim != 1 or v.size < 3:
            raise ValueError("need at least 3 samples for derivative estimation")
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)

    def time_at(self, i: int) -> float:
        return self.t0 + self.dt * i


@dataclass(frozen=True)
class GrowthInterval:
    t_start: float
    t_end: float
    gain: float


@dataclass(frozen=True)
class BackflowReport:
    """Detected growth intervals of one factor trace.

    onset is the left endpoint of the first growth interval (parabolically
    refined when interior), or None for a trace with no growth.  Grid
    metadata is kept so reports from different grids cannot be compared.
    """

    onset: float | None
    intervals: tuple[GrowthInterval, ...]
    total_gain: float
    t0: float
    dt: float
    n: int

    def has_backflow(self) -> bool:
        return self.onset is not None


@dataclass(frozen=True)
class OnsetComparison:
    classification: str  # global-earlier | global-simultaneous | global-later | global-never
    onset_global: float | None
    onset_local1: float | None
    onset_local2: float | None


def trace_distance(s1: QubitState, s2: QubitState, gamma_mod: float) -> float:
    """Trace distance of two qubit states dephased by a common |gamma|."""
    if not 0.0 <= gamma_mod <= 1.0 + 1e-9:
        raise ValueError(f"gamma_mod={gamma_mod!r} outside [0, 1]")
    d1, d2 = 1.0 - s1.a, 1.0 - s2.a
    diag = (s1.a - s2.a + d2 - d1) / 2.0
    return math.sqrt(abs(s1.b - s2.b) ** 2 * gamma_mod ** 2 + diag ** 2)


def sigma_rate(series: TimeSeries, s1: QubitState, s2: QubitState, index: int) -> float:
    """Central-difference rate of the trace distance at an interior grid index."""
    if not 1 <= index <= len(series) - 2:
        raise IndexError(f"index {index} not interior to the grid")
    g = series.values
    d_prev = trace_distance(s1, s2, g[index - 1])
    d_next = trace_distance(s1, s2, g[index + 1])
    return (d_next - d_prev) / (2.0 * series.dt)


def _growth_runs(values: np.ndarray, eps: float) -> list[tuple[int, int]]:
    """Maximal runs of consecutive forward differences above eps*max|values|."""
    threshold = eps * float(np.max(np.abs(values))) if values.size else 0.0
    growing = np.diff(values) > threshold
    runs = []
    i = 0
    n = growing.size
    while i < n:
        if growing[i]:
            j = i
            while j + 1 < n and growing[j + 1]:
                j += 1
            runs.append((i, j + 1))
            i = j + 1
        i += 1
    return runs


def blp_measure_dephasing(series: TimeSeries, eps: float = GROWTH_EPS) -> float:
    """BLP non-Markovianity of a dephasing channel from its |gamma| trace.

    Equals the summed rise of |gamma| over its maximal growth runs; the state
    maximization is solved analytically (a1=a2, |b1-b2|=1).  eps is a
    relative threshold that keeps quadrature noise at the decay floor from
    registering as growth.
    """
    v = series.values
    return float(math.fsum(v[j] - v[i] for i, j in _growth_runs(v, eps)))


def blp_measure_grid(series: TimeSeries, m: int, eps: float = GROWTH_EPS) -> float:
    """Explicit maximization of the backflow integral over a state-pair grid.

    States are sampled as a on m points of [0, 1] and b = f*sqrt(a(1-a)) with
    f on m points of [-1, 1]; a common phase rotation of both coherences
    leaves the trace distance invariant, so the real slice contains the
    maximizing pairs.  Always <= blp_measure_dephasing, converging to it as
    m grows.
    """
    if m < 5:
        raise ValueError("need at least 5 states per axis")
    a = np.linspace(0.0, 1.0, m)
    f = np.linspace(-1.0, 1.0, m)
    b = (f[None, :] * np.sqrt(a * (1.0 - a))[:, None]).ravel()
    a = np.repeat(a, m)
    # pair differences: c = a1 - a2, B = |b1 - b2|
    c = (a[:, None] - a[None, :]).ravel()
    B = np.abs(b[:, None] - b[None, :]).ravel()
    runs = _growth_runs(series.values, eps)
    if not runs:
        return 0.0
    v = series.values
    # trace distance is monotone in |gamma|, so growth runs of the distance
    # coincide with growth runs of the trace for every pair
    total = np.zeros_like(c)
    for i, j in runs:
        total += (np.sqrt(c ** 2 + (B * v[j]) ** 2)
                  - np.sqrt(c ** 2 + (B * v[i]) ** 2))
    return float(np.max(total))


def detect_backflow(series: TimeSeries, eps: float = GROWTH_EPS) -> BackflowReport:
    """Locate growth intervals of a factor trace.

    Growth means a forward difference above eps*max(series).  The onset is
    the left endpoint of the first interval; when that endpoint is interior
    it is refined by a three-point parabola through the local minimum.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    v = series.values
    runs = _growth_runs(v, eps)
    intervals = tuple(
        GrowthInterval(series.time_at(i), series.time_at(j), float(v[j] - v[i]))
        for i, j in runs)
    onset = None
    if runs:
        i0 = runs[0][0]
        onset = series.time_at(i0)
        if 1 <= i0 <= len(series) - 2:
            onset = _parabolic_vertex(series, i0)
    total = float(math.fsum(iv.gain for iv in intervals))
    return BackflowReport(onset=onset, intervals=intervals, total_gain=total,
                          t0=series.t0, dt=series.dt, n=len(series))


def _parabolic_vertex(series: TimeSeries, i: int) -> float:
    """Vertex of the parabola through points i-1, i, i+1; falls back to t_i."""
    v = series.values
    denom = v[i + 1] - 2.0 * v[i] + v[i - 1]
    if denom <= 0:
        return series.time_at(i)
    shift = 0.5 * (v[i - 1] - v[i + 1]) / denom
    shift = max(-1.0, min(1.0, shift))
    return series.time_at(i) + shift * series.dt


def compare_onsets(local1: BackflowReport, local2: BackflowReport,
                   global12: BackflowReport) -> OnsetComparison:
    """Order the global backflow onset against the two local ones.

    Simultaneity is granted within one grid step.  Reports must share a grid.
    """
    for other in (local2, global12):
        if (local1.t0, local1.dt, local1.n) != (other.t0, other.dt, other.n):
            raise ValueError("reports come from different grids")
    og, o1, o2 = global12.onset, local1.onset, local2.onset
    if og is None:
        cls = "global-never"
    else:
        local_min = min((o for o in (o1, o2) if o is not None), default=math.inf)
        if abs(og - local_min) <= local1.dt:
            cls = "global-simultaneous"
        elif og < local_min:
            cls = "global-earlier"
        else:
            cls = "global-later"
    return OnsetComparison(cls, og, o1, o2)


def golden_section_min(f, a: float, b: float, tol: float = 1e-6) -> float:
    """Golden-section refinement of a unimodal minimum bracketed by [a, b]."""
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b)
