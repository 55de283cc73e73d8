"""Tests for the shared domain types and circle geometry."""

from fractions import Fraction

import numpy as np
import pytest

from pqlab.core import (
    EigenSpec,
    Phase,
    RegisterLayout,
    circular_distance,
    circular_distance_exact,
    phase_of_outcome,
    scaled_phase,
    to_fraction,
    unit_phase,
)


def test_circular_distance_identity():
    assert circular_distance(0.25, 0.25) == 0.0


def test_circular_distance_wraparound():
    assert circular_distance(0.9, 0.1) == pytest.approx(0.2, abs=1e-15)


def test_circular_distance_antipodal_maximum():
    assert circular_distance(0.0, 0.5) == 0.5


def test_circular_distance_symmetric_and_bounded():
    rng = np.random.default_rng(11)
    for _ in range(100):
        a, b = rng.random(2)
        d = circular_distance(a, b)
        assert d == circular_distance(b, a)
        assert 0.0 <= d <= 0.5


def test_circular_distance_triangle_inequality():
    rng = np.random.default_rng(3)
    for _ in range(100):
        a, b, c = rng.random(3)
        assert circular_distance(a, c) <= circular_distance(a, b) + circular_distance(b, c) + 1e-15


def test_circular_distance_exact_matches_float():
    pairs = [(Fraction(7, 15), Fraction(1, 2)), (Fraction(0), Fraction(9, 10))]
    for a, b in pairs:
        assert float(circular_distance_exact(a, b)) == pytest.approx(
            circular_distance(float(a), float(b)), abs=1e-15
        )
    assert circular_distance_exact(Fraction(7, 15), Fraction(1, 2)) == Fraction(1, 30)


def test_phase_rejects_out_of_range():
    with pytest.raises(ValueError):
        Phase(1.0)
    with pytest.raises(ValueError):
        Phase(-0.1)


def test_phase_of_wraps_modulo_one():
    assert Phase.of(1.25).value == 0.25
    assert Phase.of(Fraction(5, 4)).value == 0.25
    assert Phase.of("3/8").value == 0.375


def test_phase_of_outcome_examples():
    layout = RegisterLayout(3, 1)
    assert float(phase_of_outcome(layout.label(2, 1), layout)) == 0.25
    assert float(phase_of_outcome(layout.label(0, 2), layout)) == 0.0
    assert float(phase_of_outcome(layout.label(7, 1), layout)) == 0.875


def test_phase_of_outcome_ignores_target_register():
    layout = RegisterLayout(3, 2)
    for m in range(layout.control_dim):
        estimates = {
            float(phase_of_outcome(layout.label(m, s), layout))
            for s in range(1, layout.target_dim + 1)
        }
        assert estimates == {m / layout.control_dim}


def test_phase_of_outcome_rejects_out_of_range():
    layout = RegisterLayout(2, 1)
    with pytest.raises(ValueError):
        phase_of_outcome(layout.dim, layout)
    with pytest.raises(ValueError):
        phase_of_outcome(-1, layout)


def test_layout_label_split_roundtrip():
    layout = RegisterLayout(3, 2)
    for k in range(layout.dim):
        m, s = layout.split(k)
        assert layout.label(m, s) == k


def test_layout_control_bit_is_msb_first():
    layout = RegisterLayout(3, 1)
    # m = 6 = 110 in binary: x_1 = 1, x_2 = 1, x_3 = 0
    assert layout.control_bit(6, 1) == 1
    assert layout.control_bit(6, 2) == 1
    assert layout.control_bit(6, 3) == 0


def test_layout_caps():
    with pytest.raises(ValueError):
        RegisterLayout(0, 1)
    with pytest.raises(ValueError):
        RegisterLayout(21, 1)
    with pytest.raises(ValueError):
        RegisterLayout(3, 5)


def test_eigenspec_length_checked():
    layout = RegisterLayout(2, 1)
    with pytest.raises(ValueError):
        EigenSpec.from_values(layout, (0.1,))
    spec = EigenSpec.from_values(layout, (0.1, 0.9))
    assert spec.values == (0.1, 0.9)
    assert float(spec.phase(2)) == 0.9


def test_eigenspec_with_first_phase():
    layout = RegisterLayout(2, 1)
    spec = EigenSpec.from_values(layout, (0.1, 0.9))
    swapped = spec.with_first_phase(0.5)
    assert swapped.values == (0.5, 0.9)
    assert spec.values == (0.1, 0.9)  # original untouched


def test_scaled_phase_small():
    assert scaled_phase(0.25, 3) == 0.75


def test_scaled_phase_reduces_huge_multipliers_exactly():
    phi = 3 / 2**20
    p = 2**40 + 1
    # exact integer arithmetic: (p * 3) mod 2^20 = 3
    assert scaled_phase(phi, p) == 3 / 2**20


def test_scaled_phase_rejects_negative_multiplier():
    with pytest.raises(ValueError):
        scaled_phase(0.1, -1)


def test_to_fraction_forms():
    assert to_fraction("2^-5") == Fraction(1, 32)
    assert to_fraction("1/30") == Fraction(1, 30)
    assert to_fraction("0.125") == Fraction(1, 8)
    assert to_fraction(0.25) == Fraction(1, 4)
    assert to_fraction(1 / 30) == Fraction(1, 30)  # float input snaps


def test_unit_phase_quarter_turn():
    assert unit_phase(0.25) == pytest.approx(1j, abs=1e-15)
    vals = unit_phase(np.array([0.0, 0.5]))
    assert vals[0] == pytest.approx(1.0, abs=1e-15)
    assert vals[1] == pytest.approx(-1.0, abs=1e-15)
