"""Exact symbolic states: per-label trigonometric polynomials in the eigenphases.

Instead of numbers, every basis label carries a sparse polynomial
sum_j alpha_j * e^{2 pi i (j_1 phi_1 + ... + j_D phi_D)} with one frequency
component per eigenvector (D = 2^t).  Power queries shift frequency components,
fixed unitaries mix coefficient vectors one frequency at a time, and numeric
phases enter only at evaluation, which is why agreement with the numeric
engine at random phase vectors is such a strong check; the tests lean on it
heavily.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

import numpy as np

from .core import Phase, PhaseLike, RegisterLayout, unit_phase
from .engine import (
    Circuit,
    FixedUnitary,
    HadamardLayer,
    InverseQFT,
    PowerQuery,
    StateVector,
    hadamard_layer_matrix,
    inverse_qft_matrix,
    is_unitary,
    UNITARY_TOL,
)

__all__ = [
    "PRUNE_TOL",
    "MultiIndex",
    "SymbolicState",
    "TrigPoly",
    "evaluate",
    "frequency_support",
    "restrict_to_first_phase",
    "run_circuit_symbolic",
    "symbolic_fixed_unitary",
    "symbolic_initial",
    "symbolic_power_query",
]

# Coefficients below this are rounding noise from cancellations, not structure.
PRUNE_TOL = 1e-14

# Above this frequency magnitude, dot products with phases switch to exact
# rational reduction; below it the float path is accurate to far better than
# the cross-engine tolerance.
_FLOAT_EXACT_LIMIT = 2**16

MultiIndex = tuple[int, ...]


def _reduced_angle(jvec: MultiIndex, phis: Sequence[float]) -> float:
    if not jvec or max(jvec) < _FLOAT_EXACT_LIMIT:
        return float(np.dot(jvec, phis) % 1.0)
    total = Fraction(0)
    for j, phi in zip(jvec, phis):
        total += Fraction(float(phi)) * j
    return float(total % 1)


class TrigPoly:
    """Sparse map from frequency multi-index to complex coefficient."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: Mapping[MultiIndex, complex] | None = None):
        self.nvars = int(nvars)
        clean: dict[MultiIndex, complex] = {}
        for idx, val in (coeffs or {}).items():
            key = tuple(int(j) for j in idx)
            if len(key) != self.nvars:
                raise ValueError(f"multi-index {key} has wrong length, want {self.nvars}")
            if any(j < 0 for j in key):
                raise ValueError(f"multi-index components must be >= 0, got {key}")
            v = clean.get(key, 0j) + complex(val)
            clean[key] = v
        self.coeffs = {k: v for k, v in clean.items() if abs(v) >= PRUNE_TOL}

    @property
    def support(self) -> frozenset[MultiIndex]:
        return frozenset(self.coeffs)

    def items(self) -> Iterator[tuple[MultiIndex, complex]]:
        return iter(self.coeffs.items())

    def __len__(self) -> int:
        return len(self.coeffs)

    def evaluate(self, phases: Sequence[PhaseLike]) -> complex:
        phis = [float(Phase.of(p)) for p in phases]
        if len(phis) != self.nvars:
            raise ValueError(f"need {self.nvars} phases, got {len(phis)}")
        return sum(
            (coeff * unit_phase(_reduced_angle(jvec, phis)) for jvec, coeff in self.coeffs.items()),
            0j,
        )

    def __repr__(self) -> str:
        return f"TrigPoly(nvars={self.nvars}, terms={len(self.coeffs)})"


@dataclass(frozen=True, eq=False)
class SymbolicState:
    """Per basis label, a trig polynomial; stored per-frequency as coefficient vectors.

    `terms[j]` is the length-2^(c+t) vector of coefficients of
    e^{2 pi i (j . phi)} across all labels, the natural shape for applying a
    fixed unitary to every frequency at once.
    """

    layout: RegisterLayout
    terms: dict[MultiIndex, np.ndarray]

    def __post_init__(self) -> None:
        dim = self.layout.dim
        nvars = self.layout.target_dim
        clean: dict[MultiIndex, np.ndarray] = {}
        for idx, vec in self.terms.items():
            key = tuple(int(j) for j in idx)
            if len(key) != nvars or any(j < 0 for j in key):
                raise ValueError(f"bad multi-index {key} for t={self.layout.t}")
            v = np.array(vec, dtype=np.complex128).reshape(-1)
            if v.size != dim:
                raise ValueError("coefficient vector size does not match layout")
            v[np.abs(v) < PRUNE_TOL] = 0.0
            if np.any(v != 0):
                v.flags.writeable = False
                clean[key] = v
        object.__setattr__(self, "terms", clean)

    def poly_by_label(self, k: int) -> TrigPoly:
        if not 0 <= k < self.layout.dim:
            raise ValueError(f"basis label {k} out of range")
        return TrigPoly(
            self.layout.target_dim,
            {jvec: vec[k] for jvec, vec in self.terms.items()},
        )

    def poly(self, m: int, s: int) -> TrigPoly:
        return self.poly_by_label(self.layout.label(m, s))

    @property
    def term_count(self) -> int:
        return len(self.terms)


def frequency_support(sym: SymbolicState) -> frozenset[MultiIndex]:
    """Union of the per-label supports: every frequency carrying any coefficient."""
    return frozenset(sym.terms)


def symbolic_initial(u0: np.ndarray, initial: StateVector) -> SymbolicState:
    """State after the opening fixed unitary: one constant polynomial per label."""
    m = np.asarray(u0, dtype=np.complex128)
    if not is_unitary(m):
        raise ValueError(f"matrix is not unitary within {UNITARY_TOL}")
    lay = initial.layout
    if m.shape != (lay.dim, lay.dim):
        raise ValueError(f"matrix shape {m.shape} does not match dimension {lay.dim}")
    zero = (0,) * lay.target_dim
    return SymbolicState(lay, {zero: m @ initial.amplitudes})


def symbolic_power_query(sym: SymbolicState, line: int, power: int) -> SymbolicState:
    """Shift frequency component s by `power` for labels (m, s) with bit `line` set."""
    lay = sym.layout
    if not 1 <= line <= lay.c:
        raise ValueError(f"control line {line} out of range 1..{lay.c}")
    if not isinstance(power, int) or power < 0:
        raise ValueError(f"power must be a non-negative integer, got {power}")
    if power == 0:
        return sym
    td = lay.target_dim
    bit_set = np.array([lay.control_bit(m, line) == 1 for m in range(lay.control_dim)])
    label_bit = np.repeat(bit_set, td)
    eig = np.arange(lay.dim) % td
    keep = ~label_bit
    shift_masks = [label_bit & (eig == s) for s in range(td)]

    out: dict[MultiIndex, np.ndarray] = {}

    def accumulate(key: MultiIndex, vec: np.ndarray) -> None:
        if key in out:
            out[key] = out[key] + vec
        else:
            out[key] = vec

    for jvec, coeffs in sym.terms.items():
        kept = coeffs * keep
        if np.any(kept != 0):
            accumulate(jvec, kept)
        for s in range(td):
            part = coeffs * shift_masks[s]
            if np.any(part != 0):
                shifted = jvec[:s] + (jvec[s] + power,) + jvec[s + 1 :]
                accumulate(shifted, part)
    return SymbolicState(lay, out)


def symbolic_fixed_unitary(sym: SymbolicState, matrix) -> SymbolicState:
    """Apply a fixed unitary to the coefficient vector of every frequency at once."""
    if isinstance(matrix, FixedUnitary):
        m = matrix.matrix
    else:
        m = np.asarray(matrix, dtype=np.complex128)
        if not is_unitary(m):
            raise ValueError(f"matrix is not unitary within {UNITARY_TOL}")
    lay = sym.layout
    if m.shape != (lay.dim, lay.dim):
        raise ValueError(f"matrix shape {m.shape} does not match dimension {lay.dim}")
    keys = list(sym.terms)
    if not keys:
        return sym
    stacked = np.stack([sym.terms[k] for k in keys], axis=1)  # dim x nfreq
    mixed = m @ stacked
    return SymbolicState(lay, {k: mixed[:, i] for i, k in enumerate(keys)})


def evaluate(sym: SymbolicState, phases: Sequence[PhaseLike]) -> StateVector:
    """Substitute numeric phases and return the numeric state vector."""
    lay = sym.layout
    phis = [float(Phase.of(p)) for p in phases]
    if len(phis) != lay.target_dim:
        raise ValueError(f"need {lay.target_dim} phases, got {len(phis)}")
    amps = np.zeros(lay.dim, dtype=np.complex128)
    if not sym.terms:
        return StateVector(lay, amps)
    keys = list(sym.terms)
    small = [k for k in keys if max(k) < _FLOAT_EXACT_LIMIT]
    large = [k for k in keys if max(k) >= _FLOAT_EXACT_LIMIT]
    if small:
        jmat = np.array(small, dtype=float)
        angles = (jmat @ np.asarray(phis)) % 1.0
        factors = unit_phase(angles)
        stacked = np.stack([sym.terms[k] for k in small], axis=1)
        amps += stacked @ factors
    for k in large:
        amps += sym.terms[k] * unit_phase(_reduced_angle(k, phis))
    return StateVector(lay, amps)


def restrict_to_first_phase(
    poly: TrigPoly, fixed: Sequence[PhaseLike]
) -> dict[int, complex]:
    """Fix all phases but the first; return scalar frequency -> coefficient.

    The support of the result is contained in the subset sums of the schedule
    that produced the polynomial.
    """
    phis = [float(Phase.of(p)) for p in fixed]
    if len(phis) != poly.nvars - 1:
        raise ValueError(f"need {poly.nvars - 1} fixed phases, got {len(phis)}")
    out: dict[int, complex] = {}
    for jvec, coeff in poly.items():
        factor = unit_phase(_reduced_angle(jvec[1:], phis))
        key = jvec[0]
        out[key] = out.get(key, 0j) + coeff * factor
    return {k: v for k, v in out.items() if abs(v) >= PRUNE_TOL}


def run_circuit_symbolic(
    circuit: Circuit, initial: StateVector | None = None
) -> SymbolicState:
    """Fold the gate list symbolically; the result depends on no phase values."""
    lay = circuit.layout
    state = initial if initial is not None else StateVector.zero_state(lay)
    if state.layout != lay:
        raise ValueError(f"layout mismatch: {state.layout} vs {lay}")
    zero = (0,) * lay.target_dim
    sym = SymbolicState(lay, {zero: state.amplitudes.copy()})
    for gate in circuit.gates:
        if isinstance(gate, PowerQuery):
            sym = symbolic_power_query(sym, gate.line, gate.power)
        elif isinstance(gate, HadamardLayer):
            sym = symbolic_fixed_unitary(sym, hadamard_layer_matrix(lay))
        elif isinstance(gate, InverseQFT):
            sym = symbolic_fixed_unitary(sym, inverse_qft_matrix(lay))
        elif isinstance(gate, FixedUnitary):
            sym = symbolic_fixed_unitary(sym, gate)
        else:
            raise TypeError(f"unknown gate {gate!r}")
    return sym
