"""Shared helpers: independent dense-matrix oracles and random-circuit builders.

The oracles construct every gate as an explicit matrix straight from its
defining formula (index loops, string bit reads, no FFT or butterfly
shortcuts), so the engine's specialized kernels are always compared against a
second, independently written path.
"""

from __future__ import annotations

import cmath

import numpy as np

from pqlab.core import EigenSpec, RegisterLayout
from pqlab.engine import (
    Circuit,
    FixedUnitary,
    HadamardLayer,
    InverseQFT,
    PowerQuery,
    StateVector,
)


def kron_chain(mats):
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def oracle_hadamard_layer_matrix(layout: RegisterLayout) -> np.ndarray:
    h = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
    return np.kron(kron_chain([h] * layout.c), np.eye(layout.target_dim))


def oracle_inverse_qft_matrix(layout: RegisterLayout) -> np.ndarray:
    d = layout.control_dim
    ctrl = np.zeros((d, d), dtype=complex)
    for n in range(d):
        for m in range(d):
            ctrl[n, m] = cmath.exp(-2j * cmath.pi * n * m / d) / np.sqrt(d)
    return np.kron(ctrl, np.eye(layout.target_dim))


def oracle_power_query_matrix(
    layout: RegisterLayout, line: int, power: int, spec: EigenSpec
) -> np.ndarray:
    """Diagonal matrix; control bit read off the binary string of the label."""
    diag = np.ones(layout.dim, dtype=complex)
    for k in range(layout.dim):
        m, s = layout.split(k)
        bits = format(m, f"0{layout.c}b")
        if bits[line - 1] == "1":
            diag[k] = cmath.exp(2j * cmath.pi * power * float(spec.phases[s - 1]))
    return np.diag(diag)


def oracle_gate_matrix(gate, layout: RegisterLayout, spec: EigenSpec) -> np.ndarray:
    if isinstance(gate, HadamardLayer):
        return oracle_hadamard_layer_matrix(layout)
    if isinstance(gate, InverseQFT):
        return oracle_inverse_qft_matrix(layout)
    if isinstance(gate, PowerQuery):
        return oracle_power_query_matrix(layout, gate.line, gate.power, spec)
    if isinstance(gate, FixedUnitary):
        return np.array(gate.matrix)
    raise TypeError(f"unknown gate {gate!r}")


def oracle_run(circuit: Circuit, spec: EigenSpec, initial: StateVector | None = None) -> np.ndarray:
    state = initial.amplitudes if initial is not None else StateVector.zero_state(circuit.layout).amplitudes
    out = np.array(state, dtype=complex)
    for gate in circuit.gates:
        out = oracle_gate_matrix(gate, circuit.layout, spec) @ out
    return out


def rand_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def rand_state(layout: RegisterLayout, rng: np.random.Generator) -> StateVector:
    z = rng.standard_normal(layout.dim) + 1j * rng.standard_normal(layout.dim)
    return StateVector(layout, z / np.linalg.norm(z))


def make_random_circuit(
    rng: np.random.Generator,
    max_queries: int = 5,
    max_c: int = 4,
    max_t: int = 2,
    max_power: int = 8,
) -> Circuit:
    """Opening unitary, then alternating power queries and unitaries."""
    c = int(rng.integers(1, max_c + 1))
    t = int(rng.integers(1, max_t + 1))
    lay = RegisterLayout(c, t)
    n_queries = int(rng.integers(1, max_queries + 1))
    gates = [FixedUnitary(rand_unitary(lay.dim, rng))]
    for _ in range(n_queries):
        gates.append(
            PowerQuery(line=int(rng.integers(1, c + 1)), power=int(rng.integers(1, max_power + 1)))
        )
        gates.append(FixedUnitary(rand_unitary(lay.dim, rng)))
    return Circuit(lay, tuple(gates))
