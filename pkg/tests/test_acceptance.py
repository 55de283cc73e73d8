"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion lines.
Tolerances are pinned here; nothing is deferred to later calibration.
"""

from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from pqlab.cli import EXIT_OK, main as cli_main
from pqlab.core import EigenSpec, RegisterLayout
from pqlab.engine import (
    FixedUnitary,
    HadamardLayer,
    InverseQFT,
    PowerQuery,
    apply_gate,
    apply_power_query,
    measurement_distribution,
    run_circuit,
    success_probability,
)
from pqlab.freqsets import (
    cardinality_bound_audit,
    difference_set,
    min_queries_bound,
    multi_index_set,
    subset_sums,
)
from pqlab.lab import (
    build_qpe_circuit,
    dft_orthogonality_residual,
    dft_frequency_audit,
    empirical_min_T,
    fraction_good_buckets,
    full_width_half_max,
)
from pqlab.report import read_table
from pqlab.symbolic import evaluate, frequency_support, run_circuit_symbolic

from conftest import make_random_circuit, rand_state, rand_unitary


@contextmanager
def criterion(num: int, text: str):
    try:
        yield
    except Exception:
        print(f"[acceptance {num}] FAIL - {text}")
        raise
    print(f"[acceptance {num}] PASS - {text}")


def test_criterion_1_symbolic_matches_numeric_on_random_circuits():
    with criterion(1, "symbolic evaluation matches the numeric engine on 200 random circuits"):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            circuit = make_random_circuit(rng, max_queries=5, max_c=4, max_t=2, max_power=8)
            lay = circuit.layout
            sym = run_circuit_symbolic(circuit)
            reachable = multi_index_set(circuit.power_schedule(), lay.t)
            assert frequency_support(sym) <= reachable
            for _ in range(20):
                phases = rng.random(lay.target_dim)
                numeric = run_circuit(circuit, EigenSpec.from_values(lay, phases))
                symbolic = evaluate(sym, phases)
                assert float(np.max(np.abs(symbolic.amplitudes - numeric.amplitudes))) <= 1e-9


def test_criterion_2_exact_phase_estimation_succeeds_deterministically():
    with criterion(2, "exact k-bit phases are recovered with probability 1.0 within 1e-12"):
        for queries in range(1, 7):
            circuit = build_qpe_circuit(queries)
            lay = circuit.layout
            eps = Fraction(1, 2 ** (queries + 1))
            for r in range(2**queries):
                phi = r / 2**queries
                spec = EigenSpec.from_values(lay, (phi, 0.0))
                dist = measurement_distribution(run_circuit(circuit, spec))
                assert success_probability(dist, phi, eps, lay) == pytest.approx(
                    1.0, abs=1e-12
                )


def test_criterion_3_peak_width_halves_per_added_query(tmp_path):
    with criterion(3, "emitted curves peak at 0.25 with value 1.0 and width ratio 2 within 10%"):
        widths = {}
        for queries, bucket in ((2, 1), (3, 2)):  # bucket centers at phase 1/4
            out = tmp_path / f"curve{queries}.csv"
            code = cli_main(
                ["qpe-curve", "--T", str(queries), "--bucket", str(bucket),
                 "--grid", "512", "--out", str(out), "--no-plot"]
            )
            assert code == EXIT_OK
            _, rows = read_table(out)
            points = [(row[0], row[1]) for row in rows]
            peak_phi, peak = max(points, key=lambda p: p[1])
            assert peak == pytest.approx(1.0, abs=1e-12)
            assert peak_phi == 0.25
            widths[queries] = full_width_half_max(points)
        ratio = widths[2] / widths[3]
        assert abs(ratio - 2.0) <= 0.2


def test_criterion_4_difference_set_growth_formulas():
    with criterion(4, "difference-set sizes follow the doubling and unit growth laws exactly"):
        for queries in range(1, 11):
            doubling = tuple(2**j for j in range(queries))
            assert len(difference_set(subset_sums(doubling))) == 2 ** (queries + 1) - 1
            unit = (1,) * queries
            assert len(difference_set(subset_sums(unit))) == 2 * queries + 1


def test_criterion_5_set_size_bounds_and_query_floor():
    with criterion(5, "exhaustive size bounds hold and empirical minima respect the query floor"):
        audit = cardinality_bound_audit(3, 8)
        assert audit.ok
        for row in audit.rows:
            assert row.max_subset_sums <= 2**row.queries
            assert row.max_differences <= 4**row.queries
        for k in range(3, 9):
            eps = Fraction(1, 2**k)
            bound = min_queries_bound(eps)
            search = empirical_min_T(eps)
            assert search.found is not None
            assert search.found >= bound


def test_criterion_6_aliased_frequency_classes_all_present():
    with criterion(6, "every bucket carries all N aliased frequency classes and the DFT identity holds"):
        audit = dft_frequency_audit(build_qpe_circuit(3), Fraction(1, 16))
        assert audit.grid_size == 8
        for ba in audit.bucket_audits:
            assert ba.nonzero_classes == 8
            assert ba.dft_error <= 1e-9
        good = fraction_good_buckets(build_qpe_circuit(3), Fraction(1, 16))
        assert good == 1.0
        assert good >= 2 / 3


def test_criterion_7_engine_hygiene():
    with criterion(7, "norm, additivity, and Fourier orthogonality hold at 1e-12 scale"):
        rng = np.random.default_rng(7)
        lay = RegisterLayout(4, 2)
        spec = EigenSpec.from_values(lay, tuple(rng.random(lay.target_dim)))
        pool = [FixedUnitary(rand_unitary(lay.dim, rng)) for _ in range(16)]

        applications = 0
        for _ in range(10):  # fresh chains bound cumulative drift
            state = rand_state(lay, rng)
            for _ in range(1000):
                kind = int(rng.integers(0, 4))
                if kind == 0:
                    gate = PowerQuery(
                        line=int(rng.integers(1, lay.c + 1)),
                        power=int(rng.integers(0, 9)),
                    )
                elif kind == 1:
                    gate = HadamardLayer()
                elif kind == 2:
                    gate = InverseQFT()
                else:
                    gate = pool[int(rng.integers(0, len(pool)))]
                state = apply_gate(state, gate, spec)
                applications += 1
                assert abs(state.norm() - 1.0) < 1e-12
        assert applications == 10_000

        for _ in range(200):
            s0 = rand_state(lay, rng)
            a, b = int(rng.integers(0, 40)), int(rng.integers(0, 40))
            line = int(rng.integers(1, lay.c + 1))
            chained = apply_power_query(apply_power_query(s0, line, a, spec), line, b, spec)
            direct = apply_power_query(s0, line, a + b, spec)
            assert float(np.max(np.abs(chained.amplitudes - direct.amplitudes))) < 1e-12

        assert dft_orthogonality_residual(64) < 1e-12
