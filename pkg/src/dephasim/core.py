"""Two-qubit and single-qubit dephasing-map algebra.

Basis order is fixed as |00>, |01>, |10>, |11> throughout; the dephasing map
multiplies each off-diagonal density-matrix entry by one decoherence factor
and leaves populations untouched:

    [[ |a|^2,     a b* k2,   a c* k1,   a d* k12 ],
     [ b a* k2*,  |b|^2,     b c* l12,  b d* k1  ],
     [ c a* k1*,  c b* l12*, |c|^2,     c d* k2  ],
     [ d a* k12*, d b* k1*,  d c* k2*,  |d|^2    ]]

Positivity of the output is not guaranteed for arbitrary factor quadruples;
failures are reported through PositivityWarning rather than an exception so
parameter scans can keep going.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12
MODULUS_TOL = 1e-9
EIG_TOL = 1e-9


class PositivityWarning(UserWarning):
    """A mapped density matrix has an eigenvalue below -1e-9."""


@dataclass(frozen=True)
class TwoQubitPureState:
    """Amplitudes (a, b, c, d) on |00>, |01>, |10>, |11>; must be normalized."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        norm = abs(self.a) ** 2 + abs(self.b) ** 2 + abs(self.c) ** 2 + abs(self.d) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: |psi|^2 = {norm!r}")

    @classmethod
    def normalized(cls, a, b, c, d) -> "TwoQubitPureState":
        n = math.sqrt(abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2 + abs(d) ** 2)
        if n == 0:
            raise ValueError("zero vector cannot be normalized")
        return cls(a / n, b / n, c / n, d / n)

    def amplitudes(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d], dtype=complex)

    def populations(self) -> tuple[float, float, float, float]:
        return (abs(self.a) ** 2, abs(self.b) ** 2,
                abs(self.c) ** 2, abs(self.d) ** 2)

    def projector(self) -> np.ndarray:
        psi = self.amplitudes()
        m = np.outer(psi, psi.conj())
        # populations written exactly; FMA-contracted complex products can
        # otherwise leave 1e-17 imaginary residue on the diagonal
        np.fill_diagonal(m, self.populations())
        return m


@dataclass(frozen=True)
class DephasingFactors:
    """Decoherence factors (k1, k2, k12, l12); each modulus must be <= 1.

    k1/k2 multiply the single-qubit coherences of qubit 1/2, k12 the
    |00><11| coherence and l12 the |01><10| one.  Complex values are allowed;
    the scenario evaluators in this package produce nonnegative moduli.
    """

    k1: complex
    k2: complex
    k12: complex
    l12: complex

    def __post_init__(self):
        for name, v in (("k1", self.k1), ("k2", self.k2),
                        ("k12", self.k12), ("l12", self.l12)):
            if abs(v) > 1.0 + MODULUS_TOL:
                raise ValueError(f"factor {name} has modulus {abs(v)!r} > 1")

    def compose(self, other: "DephasingFactors") -> "DephasingFactors":
        """Entrywise product; dephasing maps commute and multiply."""
        return DephasingFactors(self.k1 * other.k1, self.k2 * other.k2,
                                self.k12 * other.k12, self.l12 * other.l12)

    def moduli(self) -> tuple[float, float, float, float]:
        return (abs(self.k1), abs(self.k2), abs(self.k12), abs(self.l12))

    def mask(self) -> np.ndarray:
        """4x4 entrywise multiplier realizing the map on density matrices."""
        k1, k2, k12, l12 = self.k1, self.k2, self.k12, self.l12
        m = np.array([
            [1.0, k2, k1, k12],
            [np.conj(k2), 1.0, l12, k1],
            [np.conj(k1), np.conj(l12), 1.0, k2],
            [np.conj(k12), np.conj(k1), np.conj(k2), 1.0],
        ], dtype=complex)
        return m


IDENTITY_FACTORS = DephasingFactors(1.0, 1.0, 1.0, 1.0)


@dataclass(frozen=True)
class TwoQubitDensityMatrix:
    """4x4 density matrix in the |00>, |01>, |10>, |11> basis.

    Hermiticity and unit trace are enforced at construction; positivity is a
    separate check (see is_physical) because the map can produce indefinite
    output for unphysical factor combinations.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected 4x4 matrix, got {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > NORM_TOL:
            raise ValueError("matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > NORM_TOL or abs(np.trace(m).imag) > NORM_TOL:
            raise ValueError(f"trace is {np.trace(m)!r}, expected 1")
        object.__setattr__(self, "matrix", m)

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix)[0])

    def is_physical(self, tol: float = EIG_TOL) -> bool:
        return self.min_eigenvalue() >= -tol


@dataclass(frozen=True)
class QubitState:
    """Single-qubit state as population a of |0> and |1><0| coherence b.

    The |1> population is 1 - a.  Positivity requires |b|^2 <= a(1-a).
    """

    a: float
    b: complex

    def __post_init__(self):
        if not 0.0 <= self.a <= 1.0:
            raise ValueError(f"population a={self.a!r} outside [0, 1]")
        if abs(self.b) ** 2 > self.a * (1.0 - self.a) + 1e-12:
            raise ValueError(
                f"coherence |b|={abs(self.b)!r} violates positivity for a={self.a!r}")

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, np.conj(self.b)],
                         [self.b, 1.0 - self.a]], dtype=complex)


def apply_dephasing_map(state: TwoQubitPureState,
                        f: DephasingFactors) -> TwoQubitDensityMatrix:
    """Apply the two-qubit dephasing map to a pure state.

    Warns with PositivityWarning (and still returns the matrix) if the output
    has an eigenvalue below -1e-9, which signals an unphysical factor
    combination.
    """
    rho = state.projector() * f.mask()
    out = TwoQubitDensityMatrix(rho)
    if not out.is_physical():
        warnings.warn(
            f"dephasing output indefinite: min eigenvalue {out.min_eigenvalue():.3e}",
            PositivityWarning, stacklevel=2)
    return out


def dephase_density(rho: TwoQubitDensityMatrix,
                    f: DephasingFactors) -> TwoQubitDensityMatrix:
    """Entrywise map action on an already-mixed two-qubit state."""
    out = TwoQubitDensityMatrix(rho.matrix * f.mask())
    if not out.is_physical():
        warnings.warn(
            f"dephasing output indefinite: min eigenvalue {out.min_eigenvalue():.3e}",
            PositivityWarning, stacklevel=2)
    return out


def dephase_qubit(state: QubitState, gamma: complex) -> QubitState:
    """Single-qubit dephasing: population fixed, b -> b * conj(gamma)."""
    if abs(gamma) > 1.0 + MODULUS_TOL:
        raise ValueError(f"|gamma| = {abs(gamma)!r} exceeds 1")
    return QubitState(state.a, state.b * complex(gamma).conjugate())


def reduced_states(rho: TwoQubitDensityMatrix) -> tuple[QubitState, QubitState]:
    """Partial traces of a physical two-qubit state, as QubitState pair."""
    if not rho.is_physical():
        raise ValueError(
            f"cannot reduce unphysical state (min eigenvalue {rho.min_eigenvalue():.3e})")
    m = rho.matrix
    r1 = m.reshape(2, 2, 2, 2).trace(axis1=1, axis2=3)
    r2 = m.reshape(2, 2, 2, 2).trace(axis1=0, axis2=2)
    return (QubitState(_clip01(r1[0, 0].real), r1[1, 0]),
            QubitState(_clip01(r2[0, 0].real), r2[1, 0]))


def marginals(state: TwoQubitPureState) -> tuple[QubitState, QubitState]:
    """Single-qubit marginals of a pure two-qubit state."""
    return reduced_states(TwoQubitDensityMatrix(state.projector()))


def _clip01(x: float) -> float:
    # partial traces can land 1e-17 outside [0, 1]
    return min(1.0, max(0.0, x))
