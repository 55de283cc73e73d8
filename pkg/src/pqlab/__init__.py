"""Power-query phase estimation laboratory.

A numeric state-vector engine and an exact symbolic trig-polynomial engine for
circuits built from controlled operator powers, plus the integer-set
combinatorics that bound how many such queries any estimator needs.
"""

from .core import (
    EigenSpec,
    Phase,
    RegisterLayout,
    circular_distance,
    phase_of_outcome,
    to_fraction,
    unit_phase,
)
from .engine import (
    Circuit,
    FixedUnitary,
    HadamardLayer,
    InverseQFT,
    MeasurementDistribution,
    PowerQuery,
    StateVector,
    apply_fixed_unitary,
    apply_hadamard_layer,
    apply_inverse_qft,
    apply_power_query,
    measurement_distribution,
    random_unitary,
    run_circuit,
    success_probability,
)
from .freqsets import (
    cardinality_bound_audit,
    difference_set,
    min_queries_bound,
    multi_index_set,
    necessary_condition,
    subset_sums,
)
from .lab import (
    Bucket,
    FrequencyAudit,
    GridInstance,
    bucket_probability_curve,
    buckets,
    build_qpe_circuit,
    dft_frequency_audit,
    empirical_min_T,
    fraction_good_buckets,
    grid_family,
    make_grid_instance,
)
from .symbolic import (
    SymbolicState,
    TrigPoly,
    evaluate,
    frequency_support,
    restrict_to_first_phase,
    run_circuit_symbolic,
    symbolic_fixed_unitary,
    symbolic_initial,
    symbolic_power_query,
)

__version__ = "0.1.0"

__all__ = [
    "Bucket",
    "Circuit",
    "EigenSpec",
    "FixedUnitary",
    "FrequencyAudit",
    "GridInstance",
    "HadamardLayer",
    "InverseQFT",
    "MeasurementDistribution",
    "Phase",
    "PowerQuery",
    "RegisterLayout",
    "StateVector",
    "SymbolicState",
    "TrigPoly",
    "apply_fixed_unitary",
    "apply_hadamard_layer",
    "apply_inverse_qft",
    "apply_power_query",
    "bucket_probability_curve",
    "buckets",
    "build_qpe_circuit",
    "cardinality_bound_audit",
    "circular_distance",
    "dft_frequency_audit",
    "difference_set",
    "empirical_min_T",
    "evaluate",
    "fraction_good_buckets",
    "frequency_support",
    "grid_family",
    "make_grid_instance",
    "measurement_distribution",
    "min_queries_bound",
    "multi_index_set",
    "necessary_condition",
    "phase_of_outcome",
    "random_unitary",
    "restrict_to_first_phase",
    "run_circuit",
    "run_circuit_symbolic",
    "subset_sums",
    "success_probability",
    "symbolic_fixed_unitary",
    "symbolic_initial",
    "symbolic_power_query",
    "to_fraction",
    "unit_phase",
]
