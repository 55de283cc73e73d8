"""State-vector execution of power-query circuits.

Gates are either controlled powers of the queried operator, structured layers
(Hadamard on all control qubits, inverse Fourier transform on the control
register), or arbitrary dense unitaries.  The structured layers use
O(2^(c+t) * c) kernels so that c up to 20 stays feasible; only user-supplied
unitaries are stored dense.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import (
    EigenSpec,
    Phase,
    PhaseLike,
    RegisterLayout,
    scaled_phase,
    to_fraction,
    unit_phase,
)

__all__ = [
    "NORM_TOL",
    "PROB_TOL",
    "UNITARY_TOL",
    "Circuit",
    "FixedUnitary",
    "Gate",
    "HadamardLayer",
    "InverseQFT",
    "MeasurementDistribution",
    "PowerQuery",
    "StateVector",
    "apply_fixed_unitary",
    "apply_gate",
    "apply_hadamard_layer",
    "apply_inverse_qft",
    "apply_power_query",
    "hadamard_layer_matrix",
    "inverse_qft_matrix",
    "is_unitary",
    "measurement_distribution",
    "random_unitary",
    "run_circuit",
    "success_probability",
]

# Tolerance ladder: identity/norm checks, user-supplied unitarity, probabilities.
NORM_TOL = 1e-12
UNITARY_TOL = 1e-10
PROB_TOL = 1e-10

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


def is_unitary(matrix: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))) <= tol


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Unitary from QR of a complex Gaussian matrix, column phases fixed."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


@dataclass(frozen=True, eq=False)
class StateVector:
    """2^(c+t) complex amplitudes over control (x) target registers."""

    layout: RegisterLayout
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != self.layout.dim:
            raise ValueError(
                f"expected {self.layout.dim} amplitudes for layout {self.layout}, "
                f"got {amps.size}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @classmethod
    def basis_state(cls, layout: RegisterLayout, m: int, s: int = 1) -> "StateVector":
        amps = np.zeros(layout.dim, dtype=np.complex128)
        amps[layout.label(m, s)] = 1.0
        return cls(layout, amps)

    @classmethod
    def zero_state(cls, layout: RegisterLayout) -> "StateVector":
        """|0...0> on the controls, the marked eigenvector on the target."""
        return cls.basis_state(layout, 0, 1)


@dataclass(frozen=True)
class HadamardLayer:
    """Hadamard on every control qubit, identity on the target."""


@dataclass(frozen=True)
class InverseQFT:
    """Inverse discrete Fourier transform on the whole control register.

    Sign convention: |m> -> 2^(-c/2) sum_n e^{-2 pi i m n / 2^c} |n>, so a
    uniform phase gradient sum_m e^{2 pi i m r / 2^c}|m> maps to |r>.
    """


@dataclass(frozen=True)
class PowerQuery:
    """Apply the p-th power of the queried operator when control bit `line` is 1."""

    line: int
    power: int

    def __post_init__(self) -> None:
        if not isinstance(self.line, int) or self.line < 1:
            raise ValueError(f"control line must be a positive integer, got {self.line}")
        if not isinstance(self.power, int) or self.power < 0:
            raise ValueError(f"power must be a non-negative integer, got {self.power}")


@dataclass(frozen=True, eq=False)
class FixedUnitary:
    """Arbitrary dense unitary on the full register, in the simulation basis."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128)
        if not is_unitary(m):
            raise ValueError(f"matrix is not unitary within {UNITARY_TOL}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)


Gate = Union[HadamardLayer, InverseQFT, PowerQuery, FixedUnitary]


@dataclass(frozen=True, eq=False)
class Circuit:
    """Ordered gate list over a fixed register layout."""

    layout: RegisterLayout
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        gates = tuple(self.gates)
        for gate in gates:
            if isinstance(gate, PowerQuery) and gate.line > self.layout.c:
                raise ValueError(
                    f"power query on line {gate.line} exceeds c={self.layout.c}"
                )
            if isinstance(gate, FixedUnitary) and gate.matrix.shape != (
                self.layout.dim,
                self.layout.dim,
            ):
                raise ValueError(
                    f"fixed unitary of shape {gate.matrix.shape} does not match "
                    f"dimension {self.layout.dim}"
                )
        object.__setattr__(self, "gates", gates)

    def power_schedule(self) -> tuple[int, ...]:
        """The powers (p_1, ..., p_T) of the power queries, in circuit order."""
        return tuple(g.power for g in self.gates if isinstance(g, PowerQuery))

    @property
    def query_count(self) -> int:
        return sum(1 for g in self.gates if isinstance(g, PowerQuery))


def _require_same_layout(a: RegisterLayout, b: RegisterLayout) -> None:
    if a != b:
        raise ValueError(f"layout mismatch: {a} vs {b}")


def apply_power_query(
    state: StateVector, line: int, power: int, spec: EigenSpec
) -> StateVector:
    """Multiply the amplitude of (m, s) by e^{2 pi i p phi_s} when bit `line` of m is 1."""
    lay = state.layout
    _require_same_layout(lay, spec.layout)
    if not 1 <= line <= lay.c:
        raise ValueError(f"control line {line} out of range 1..{lay.c}")
    if not isinstance(power, int) or power < 0:
        raise ValueError(f"power must be a non-negative integer, got {power}")
    if power == 0:
        return state
    factors = np.array(
        [unit_phase(scaled_phase(phi, power)) for phi in spec.phases],
        dtype=np.complex128,
    )
    grid = state.amplitudes.reshape(lay.control_dim, lay.target_dim).copy()
    mask = ((np.arange(lay.control_dim) >> (lay.c - line)) & 1).astype(bool)
    grid[mask, :] *= factors
    return StateVector(lay, grid.reshape(-1))


def apply_hadamard_layer(state: StateVector) -> StateVector:
    """Hadamard on every control qubit (butterfly kernel, no dense matrix)."""
    lay = state.layout
    arr = state.amplitudes.reshape([2] * lay.c + [lay.target_dim])
    for axis in range(lay.c):
        arr = np.moveaxis(arr, axis, 0)
        arr = np.stack((arr[0] + arr[1], arr[0] - arr[1])) * _INV_SQRT2
        arr = np.moveaxis(arr, 0, axis)
    return StateVector(lay, arr.reshape(-1))


def apply_inverse_qft(state: StateVector) -> StateVector:
    """Inverse Fourier transform on the control register (see InverseQFT)."""
    lay = state.layout
    grid = state.amplitudes.reshape(lay.control_dim, lay.target_dim)
    out = np.fft.fft(grid, axis=0, norm="ortho")
    return StateVector(lay, out.reshape(-1))


def apply_fixed_unitary(state: StateVector, matrix) -> StateVector:
    """Dense matrix-vector product; rejects non-unitary matrices."""
    if isinstance(matrix, FixedUnitary):
        m = matrix.matrix
    else:
        m = np.asarray(matrix, dtype=np.complex128)
        if not is_unitary(m):
            raise ValueError(f"matrix is not unitary within {UNITARY_TOL}")
    if m.shape != (state.layout.dim, state.layout.dim):
        raise ValueError(
            f"matrix shape {m.shape} does not match dimension {state.layout.dim}"
        )
    return StateVector(state.layout, m @ state.amplitudes)


def apply_gate(state: StateVector, gate: Gate, spec: EigenSpec) -> StateVector:
    if isinstance(gate, PowerQuery):
        return apply_power_query(state, gate.line, gate.power, spec)
    if isinstance(gate, HadamardLayer):
        return apply_hadamard_layer(state)
    if isinstance(gate, InverseQFT):
        return apply_inverse_qft(state)
    if isinstance(gate, FixedUnitary):
        return apply_fixed_unitary(state, gate)
    raise TypeError(f"unknown gate {gate!r}")


def run_circuit(
    circuit: Circuit, spec: EigenSpec, initial: StateVector | None = None
) -> StateVector:
    """Fold the gate list left to right over the initial state (default |0>|q>)."""
    _require_same_layout(circuit.layout, spec.layout)
    state = initial if initial is not None else StateVector.zero_state(circuit.layout)
    _require_same_layout(circuit.layout, state.layout)
    if abs(state.norm() - 1.0) > 1e-9:
        raise ValueError(f"initial state is not normalized (norm {state.norm()})")
    for gate in circuit.gates:
        state = apply_gate(state, gate, spec)
    return state


@dataclass(frozen=True, eq=False)
class MeasurementDistribution:
    """Outcome probabilities p_k over all 2^(c+t) basis labels."""

    probabilities: np.ndarray

    def __post_init__(self) -> None:
        p = np.array(self.probabilities, dtype=float).reshape(-1)
        if np.any(p < -PROB_TOL):
            raise ValueError("negative probability")
        if abs(p.sum() - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {p.sum()}, not 1")
        p.flags.writeable = False
        object.__setattr__(self, "probabilities", p)

    def control_marginal(self, layout: RegisterLayout) -> np.ndarray:
        """Total probability per control value m."""
        if self.probabilities.size != layout.dim:
            raise ValueError("layout does not match distribution size")
        return self.probabilities.reshape(layout.control_dim, layout.target_dim).sum(axis=1)


def measurement_distribution(state: StateVector) -> MeasurementDistribution:
    return MeasurementDistribution(np.abs(state.amplitudes) ** 2)


def success_probability(
    dist: MeasurementDistribution,
    phi: PhaseLike,
    eps: PhaseLike,
    layout: RegisterLayout,
) -> float:
    """Probability that the outcome's phase estimate lands strictly within eps of phi."""
    eps_f = float(to_fraction(eps))
    if not 0.0 < eps_f <= 0.5:
        raise ValueError(f"eps must lie in (0, 1/2], got {eps_f}")
    if dist.probabilities.size != layout.dim:
        raise ValueError("layout does not match distribution size")
    phi_f = float(Phase.of(phi))
    marginal = dist.probabilities.reshape(layout.control_dim, layout.target_dim).sum(axis=1)
    estimates = np.arange(layout.control_dim) / layout.control_dim
    raw = np.abs(phi_f - estimates)
    distances = np.minimum(raw, 1.0 - raw)
    return float(marginal[distances < eps_f].sum())


def hadamard_layer_matrix(layout: RegisterLayout) -> np.ndarray:
    """Dense matrix of the control-register Hadamard layer (for small layouts)."""
    h = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) * _INV_SQRT2
    ctrl = functools.reduce(np.kron, [h] * layout.c)
    return np.kron(ctrl, np.eye(layout.target_dim, dtype=np.complex128))


def inverse_qft_matrix(layout: RegisterLayout) -> np.ndarray:
    """Dense matrix of the control-register inverse Fourier transform."""
    d = layout.control_dim
    exponents = np.outer(np.arange(d), np.arange(d)) % d  # reduce before exp
    ctrl = unit_phase(-exponents / d) / np.sqrt(d)
    return np.kron(ctrl, np.eye(layout.target_dim, dtype=np.complex128))
