"""Shared domain types: phases on the unit circle, register layouts, eigenphase specs.

A phase is stored as a fraction of a full turn (the x in e^{2*pi*i*x}), never in
radians, and the complex exponential is taken in exactly one place (`unit_phase`)
so there is a single spot where a 2*pi factor could go wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

__all__ = [
    "MAX_CONTROL_QUBITS",
    "MAX_TARGET_QUBITS",
    "EigenSpec",
    "Phase",
    "PhaseLike",
    "RegisterLayout",
    "circular_distance",
    "circular_distance_exact",
    "phase_of_outcome",
    "scaled_phase",
    "to_fraction",
    "unit_phase",
]

# Desk-scale caps: 2^(c+t) amplitudes must stay enumerable.
MAX_CONTROL_QUBITS = 20
MAX_TARGET_QUBITS = 4

PhaseLike = Union["Phase", float, Fraction, int, str]


def unit_phase(turns):
    """e^{2*pi*i*turns}; accepts scalars or arrays, elementwise."""
    out = np.exp(2j * np.pi * np.asarray(turns, dtype=float))
    return complex(out) if out.ndim == 0 else out


def to_fraction(value: PhaseLike) -> Fraction:
    """Exact rational view of a phase or precision parameter.

    Strings accept decimal ("0.125"), ratio ("1/30") and power ("2^-5") forms.
    Floats are snapped to the nearest rational with denominator <= 10^12 when
    that rational is within 10^-12, so 1/30 entered as a float is treated as
    the exact 1/30 rather than its binary approximation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Phase):
        value = value.value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        text = value.strip()
        if "^" in text:
            base, _, expo = text.partition("^")
            return Fraction(int(base)) ** int(expo)
        if "/" in text:
            num, _, den = text.partition("/")
            return Fraction(int(num), int(den))
        return Fraction(text)
    if isinstance(value, (float, np.floating)):
        exact = Fraction(float(value))
        snapped = exact.limit_denominator(10**12)
        if abs(snapped - exact) <= Fraction(1, 10**12):
            return snapped
        return exact
    raise TypeError(f"cannot interpret {value!r} as an exact fraction")


def scaled_phase(phase: PhaseLike, multiplier: int) -> float:
    """p * phi reduced modulo 1, exactly.

    The reduction happens in rational arithmetic on the exact binary value of
    the phase, so huge integer multipliers (64-bit powers) lose no precision
    before the final rounding to float.
    """
    if multiplier < 0:
        raise ValueError(f"multiplier must be >= 0, got {multiplier}")
    if isinstance(phase, Fraction):
        exact = phase
    else:
        exact = Fraction(float(phase))
    return float(exact * multiplier % 1)


@dataclass(frozen=True)
class Phase:
    """A phase as a fraction of a full turn, in [0, 1); arithmetic is modulo 1."""

    value: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.value < 1.0):
            raise ValueError(f"phase must lie in [0, 1), got {self.value!r}")

    @classmethod
    def of(cls, value: PhaseLike) -> "Phase":
        """Coerce to a Phase, wrapping into [0, 1)."""
        if isinstance(value, Phase):
            return value
        if isinstance(value, str):
            value = to_fraction(value)
        return cls(float(value) % 1.0)

    def __float__(self) -> float:
        return self.value


def circular_distance(a: PhaseLike, b: PhaseLike) -> float:
    """Distance on the unit circle: min(|a-b|, 1-|a-b|), in [0, 1/2]."""
    d = abs(float(a) % 1.0 - float(b) % 1.0)
    return min(d, 1.0 - d)


def circular_distance_exact(a: Fraction, b: Fraction) -> Fraction:
    """Rational circle distance, for strict boundary comparisons."""
    d = abs(a - b) % 1
    return min(d, 1 - d)


@dataclass(frozen=True)
class RegisterLayout:
    """c control qubits and t target qubits; basis label k = (m, s).

    m in 0..2^c-1 is the control value (bit 1 is the most significant, matching
    the |x_1 ... x_c> labelling of control lines), s in 1..2^t indexes the
    target eigenbasis.
    """

    c: int
    t: int

    def __post_init__(self) -> None:
        if not isinstance(self.c, int) or not isinstance(self.t, int):
            raise TypeError("qubit counts must be integers")
        if not 1 <= self.c <= MAX_CONTROL_QUBITS:
            raise ValueError(f"c must be in 1..{MAX_CONTROL_QUBITS}, got {self.c}")
        if not 1 <= self.t <= MAX_TARGET_QUBITS:
            raise ValueError(f"t must be in 1..{MAX_TARGET_QUBITS}, got {self.t}")

    @property
    def control_dim(self) -> int:
        return 1 << self.c

    @property
    def target_dim(self) -> int:
        return 1 << self.t

    @property
    def dim(self) -> int:
        return 1 << (self.c + self.t)

    def label(self, m: int, s: int) -> int:
        """Flat basis label for control value m and eigenvector index s (1-based)."""
        if not 0 <= m < self.control_dim:
            raise ValueError(f"control value {m} out of range for c={self.c}")
        if not 1 <= s <= self.target_dim:
            raise ValueError(f"eigenvector index {s} out of range for t={self.t}")
        return m * self.target_dim + (s - 1)

    def split(self, k: int) -> tuple[int, int]:
        """Inverse of `label`: k -> (m, s)."""
        if not 0 <= k < self.dim:
            raise ValueError(f"basis label {k} out of range for layout {self}")
        return k // self.target_dim, k % self.target_dim + 1

    def control_value(self, k: int) -> int:
        if not 0 <= k < self.dim:
            raise ValueError(f"basis label {k} out of range for layout {self}")
        return k // self.target_dim

    def control_bit(self, m: int, line: int) -> int:
        """Bit x_line of the control value m, line 1 being the most significant."""
        if not 1 <= line <= self.c:
            raise ValueError(f"control line {line} out of range 1..{self.c}")
        return (m >> (self.c - line)) & 1


def phase_of_outcome(k: int, layout: RegisterLayout) -> Phase:
    """Phase estimate read off a measurement outcome: the control value over 2^c.

    Only the control bits of k matter; the target part is ignored.
    """
    m = layout.control_value(k)
    return Phase(m / layout.control_dim)


@dataclass(frozen=True)
class EigenSpec:
    """The 2^t eigenphases of the queried operator, in a fixed eigenbasis.

    phases[0] is the distinguished phase of the marked eigenvector; the
    simulation basis is the eigenbasis, so the operator is diagonal here.
    """

    layout: RegisterLayout
    phases: tuple[Phase, ...]

    def __post_init__(self) -> None:
        phases = tuple(Phase.of(p) for p in self.phases)
        if len(phases) != self.layout.target_dim:
            raise ValueError(
                f"need {self.layout.target_dim} phases for t={self.layout.t}, "
                f"got {len(phases)}"
            )
        object.__setattr__(self, "phases", phases)

    @classmethod
    def from_values(cls, layout: RegisterLayout, values: Sequence[PhaseLike]) -> "EigenSpec":
        return cls(layout, tuple(Phase.of(v) for v in values))

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(p.value for p in self.phases)

    def phase(self, s: int) -> Phase:
        """Eigenphase of eigenvector s (1-based)."""
        if not 1 <= s <= self.layout.target_dim:
            raise ValueError(f"eigenvector index {s} out of range")
        return self.phases[s - 1]

    def with_first_phase(self, phi: PhaseLike) -> "EigenSpec":
        """Copy of the spec with the distinguished phase replaced."""
        return EigenSpec(self.layout, (Phase.of(phi),) + self.phases[1:])
