"""Two spin-star baths in a correlated thermal state, evaluated exactly.

Each environment is a set of bath spins coupled to its qubit through
sigma^z only, so everything is diagonal: the factor traces are weighted
sums of pure phases over the 2^(n1+n2) classical spin assignments,

    kappa1  = |sum_s w_s exp(-2i Theta1 P1(s))|        P_i(s) = sum_j g_ij s_ij
    lambda12 = |sum_s w_s exp(-2i (Theta1 P1 + Theta2 P2))|

with thermal weights w_s from H = B1 S1 + B2 S2 + alpha S1 S2.  The bath
spin operators optionally include an intra-bath pair coupling
(J_i / B_i) sum_{m<n} s_m s_n ("self-correlation"); the pair set is the
complete graph, which keeps permutation symmetry.  kappa2 and kappa12
(phase difference) are computed alongside for the two-qubit map even though
only kappa1 and lambda12 appear in the canonical datasets.

When all couplings inside a bath are equal the sums collapse onto total-spin
sectors with binomial degeneracies, turning 2^(n1+n2) terms into
(n1+1)(n2+1); the fast path is validated against full enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .analysis import Grid, TimeSeries
from .core import DephasingFactors

MAX_SPINS = 24
PAIR_RULES = ("complete",)


@dataclass(frozen=True)
class SpinStarConfig:
    """Bath sizes, fields, inter-bath coupling alpha, intra-bath couplings
    J_i (0 disables self-correlation), inverse temperature and per-spin
    system-bath couplings."""

    n1: int
    n2: int
    B1: float
    B2: float
    alpha: float
    J1: float
    J2: float
    beta: float
    g1: tuple[float, ...] | None = None
    g2: tuple[float, ...] | None = None
    pair_rule: str = "complete"

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError("bath sizes must be >= 1")
        if self.n1 + self.n2 > MAX_SPINS:
            raise ValueError(f"n1+n2 = {self.n1 + self.n2} exceeds the "
                             f"exact-enumeration budget of {MAX_SPINS}")
        if self.beta < 0:
            raise ValueError("beta must be >= 0")
        if self.pair_rule not in PAIR_RULES:
            raise ValueError(f"unknown pair rule {self.pair_rule!r}")
        for J, B, i in ((self.J1, self.B1, 1), (self.J2, self.B2, 2)):
            if J != 0 and B == 0:
                raise ValueError(f"J{i} != 0 with B{i} = 0 is undefined (J/B scaling)")
        g1 = tuple(float(g) for g in (self.g1 if self.g1 is not None
                                      else (1.0,) * self.n1))
        g2 = tuple(float(g) for g in (self.g2 if self.g2 is not None
                                      else (1.0,) * self.n2))
        if len(g1) != self.n1 or len(g2) != self.n2:
            raise ValueError("coupling lists must match the bath sizes")
        object.__setattr__(self, "g1", g1)
        object.__setattr__(self, "g2", g2)

    def uniform_couplings(self) -> bool:
        return len(set(self.g1)) == 1 and len(set(self.g2)) == 1


@dataclass(frozen=True)
class ThetaPair:
    """Accumulated interaction angles per bath (before the g_ij weight)."""

    theta1: float
    theta2: float

    def __post_init__(self):
        if self.theta1 < 0 or self.theta2 < 0:
            raise ValueError("angles must be >= 0")


def _pair_sum(sigmas, rule: str) -> float:
    if rule == "complete":
        return float(sum(a * b for a, b in combinations(sigmas, 2)))
    raise ValueError(f"unknown pair rule {rule!r}")


def _collective_spin(sigmas, J: float, B: float, rule: str) -> float:
    s = 0.5 * float(sum(sigmas))
    if J != 0.0:
        s += (J / B) * _pair_sum(sigmas, rule)
    return s


def bath_energy(cfg: SpinStarConfig, assignment) -> float:
    """Thermal energy of one +-1 spin assignment (bath 1 spins first)."""
    sig = tuple(int(s) for s in assignment)
    if len(sig) != cfg.n1 + cfg.n2:
        raise ValueError(f"assignment length {len(sig)} != {cfg.n1 + cfg.n2}")
    if any(s not in (-1, 1) for s in sig):
        raise ValueError("spins must be +1 or -1")
    s1 = _collective_spin(sig[:cfg.n1], cfg.J1, cfg.B1, cfg.pair_rule)
    s2 = _collective_spin(sig[cfg.n1:], cfg.J2, cfg.B2, cfg.pair_rule)
    return cfg.B1 * s1 + cfg.B2 * s2 + cfg.alpha * s1 * s2


def _bit_sums(idx: np.ndarray, couplings, offset: int):
    """(weighted sum, plain sum) of spins encoded in the index bits."""
    weighted = np.zeros(idx.shape, dtype=float)
    plain = np.zeros(idx.shape, dtype=float)
    for j, g in enumerate(couplings):
        sigma = 1.0 - 2.0 * ((idx >> np.uint32(offset + j)) & np.uint32(1))
        weighted += g * sigma
        plain += sigma
    return weighted, plain


def _energies_from_m(cfg: SpinStarConfig, m1, m2):
    # complete-graph pair sum: sum_{m<n} s_m s_n = (M^2 - n) / 2
    s1 = 0.5 * m1 + (cfg.J1 / cfg.B1) * 0.5 * (m1 ** 2 - cfg.n1) if cfg.J1 != 0 else 0.5 * m1
    s2 = 0.5 * m2 + (cfg.J2 / cfg.B2) * 0.5 * (m2 ** 2 - cfg.n2) if cfg.J2 != 0 else 0.5 * m2
    return cfg.B1 * s1 + cfg.B2 * s2 + cfg.alpha * s1 * s2


def thermal_weights(cfg: SpinStarConfig) -> np.ndarray:
    """Normalized Boltzmann weights over all 2^(n1+n2) assignments, indexed
    by bits (bit j = spin j, 0 -> +1).  The minimum energy is subtracted
    before exponentiation to avoid overflow."""
    n = cfg.n1 + cfg.n2
    idx = np.arange(1 << n, dtype=np.uint32)
    _, m1 = _bit_sums(idx, cfg.g1, 0)
    _, m2 = _bit_sums(idx, cfg.g2, cfg.n1)
    energies = _energies_from_m(cfg, m1, m2)
    w = np.exp(-cfg.beta * (energies - energies.min()))
    return w / w.sum()


@dataclass(frozen=True)
class SpinStarTable:
    """Precomputed (weights, per-bath phase sums) for factor evaluation."""

    weights: np.ndarray
    p1: np.ndarray
    p2: np.ndarray

    def factors(self, th: ThetaPair) -> DephasingFactors:
        ph1 = np.exp(-2j * th.theta1 * self.p1)
        ph2 = np.exp(-2j * th.theta2 * self.p2)
        k1 = abs(np.sum(self.weights * ph1))
        k2 = abs(np.sum(self.weights * ph2))
        l12 = abs(np.sum(self.weights * ph1 * ph2))
        k12 = abs(np.sum(self.weights * ph1 * np.conj(ph2)))
        return DephasingFactors(k1, k2, k12, l12)


def build_table(cfg: SpinStarConfig, force_full: bool = False) -> SpinStarTable:
    """Reduced total-spin-sector table when couplings are uniform per bath,
    full enumeration otherwise (or when forced)."""
    if cfg.uniform_couplings() and not force_full:
        m1 = cfg.n1 - 2.0 * np.arange(cfg.n1 + 1)
        m2 = cfg.n2 - 2.0 * np.arange(cfg.n2 + 1)
        deg1 = np.array([math.comb(cfg.n1, k) for k in range(cfg.n1 + 1)], dtype=float)
        deg2 = np.array([math.comb(cfg.n2, k) for k in range(cfg.n2 + 1)], dtype=float)
        m1g, m2g = np.meshgrid(m1, m2, indexing="ij")
        deg = np.outer(deg1, deg2)
        energies = _energies_from_m(cfg, m1g, m2g)
        w = deg * np.exp(-cfg.beta * (energies - energies.min()))
        w /= w.sum()
        return SpinStarTable(w.ravel(), (cfg.g1[0] * m1g).ravel(),
                             (cfg.g2[0] * m2g).ravel())
    idx = np.arange(1 << (cfg.n1 + cfg.n2), dtype=np.uint32)
    p1, _ = _bit_sums(idx, cfg.g1, 0)
    p2, _ = _bit_sums(idx, cfg.g2, cfg.n1)
    return SpinStarTable(thermal_weights(cfg), p1, p2)


def eval_spinstar_factors(cfg: SpinStarConfig, th: ThetaPair,
                          table: SpinStarTable | None = None) -> DephasingFactors:
    """Exact factor quadruple at given interaction angles (no quadrature)."""
    if table is None:
        table = build_table(cfg)
    return table.factors(th)


def run_figure_scan(cfg: SpinStarConfig, theta2: float, grid: Grid,
                    force_full: bool = False) -> dict[str, TimeSeries]:
    """Factor traces with Theta1(t) = t and Theta2 fixed."""
    table = build_table(cfg, force_full=force_full)
    times = grid.times()
    rows = np.empty((times.size, 4))
    for i, t in enumerate(times):
        f = table.factors(ThetaPair(float(t), theta2))
        rows[i] = (abs(f.k1), abs(f.k2), abs(f.k12), abs(f.l12))
    names = ("kappa1", "kappa2", "kappa12", "lambda12")
    return {name: TimeSeries(grid.t0, grid.dt, rows[:, j])
            for j, name in enumerate(names)}


def fig7_config() -> tuple[SpinStarConfig, float]:
    """Self-correlated canonical dataset: n_i=5, alpha=4, beta=0.01, B_i=2,
    J_i=10, Theta2=0.2, unit couplings."""
    return (SpinStarConfig(n1=5, n2=5, B1=2.0, B2=2.0, alpha=4.0,
                           J1=10.0, J2=10.0, beta=0.01), 0.2)


def fig8_config() -> tuple[SpinStarConfig, float]:
    """Same baths without self-correlation (J_i=0) and Theta2=0.785."""
    return (SpinStarConfig(n1=5, n2=5, B1=2.0, B2=2.0, alpha=4.0,
                           J1=0.0, J2=0.0, beta=0.01), 0.785)
