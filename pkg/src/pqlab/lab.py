"""Concrete experiments: the standard phase-estimation circuit, hard-instance
grids, outcome buckets, probability curves, and the aliased-frequency audit.

The hard instances place the distinguished eigenphase on an N-point grid with
N = 1/(2 eps); buckets collect the outcomes whose estimate lands strictly
within eps of a grid point.  Curves are sampled with the numeric engine; the
frequency content of each bucket's probability is extracted exactly with the
symbolic engine and cross-checked against an N-point inverse DFT of the
sampled curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .core import (
    EigenSpec,
    MAX_CONTROL_QUBITS,
    Phase,
    PhaseLike,
    RegisterLayout,
    circular_distance_exact,
    to_fraction,
    unit_phase,
)
from .engine import (
    Circuit,
    HadamardLayer,
    InverseQFT,
    PowerQuery,
    measurement_distribution,
    run_circuit,
)
from .symbolic import restrict_to_first_phase, run_circuit_symbolic

__all__ = [
    "SUCCESS_THRESHOLD",
    "Bucket",
    "BucketAudit",
    "FrequencyAudit",
    "GridInstance",
    "MinQueriesSearch",
    "bucket_probability_curve",
    "buckets",
    "build_qpe_circuit",
    "dft_orthogonality_residual",
    "dft_frequency_audit",
    "empirical_min_T",
    "fraction_good_buckets",
    "full_width_half_max",
    "grid_family",
    "grid_points",
    "make_grid_instance",
]

# Required success probability of a compliant estimator.
SUCCESS_THRESHOLD = 0.75


def build_qpe_circuit(T: int, t: int = 1) -> Circuit:
    """The textbook estimation circuit with T control qubits.

    Hadamards on all controls, then powers 1, 2, ..., 2^(T-1) controlled by
    lines T, T-1, ..., 1 (so the most significant control line carries the
    largest power), then the inverse Fourier transform on the control register.
    """
    if not isinstance(T, int) or not 1 <= T <= MAX_CONTROL_QUBITS:
        raise ValueError(f"T must be in 1..{MAX_CONTROL_QUBITS}, got {T!r}")
    layout = RegisterLayout(T, t)
    gates: list = [HadamardLayer()]
    gates += [PowerQuery(line=T - i, power=2**i) for i in range(T)]
    gates.append(InverseQFT())
    return Circuit(layout, tuple(gates))


def grid_points(eps: PhaseLike) -> int:
    """N with 2*eps = 1/N; rejects eps whose inverse grid is not integral."""
    frac = to_fraction(eps)
    if not 0 < frac <= Fraction(1, 2):
        raise ValueError(f"eps must lie in (0, 1/2], got {frac}")
    inverse = 1 / (2 * frac)
    if inverse.denominator != 1:
        raise ValueError(f"1/(2*eps) must be an integer, got {inverse}")
    return int(inverse)


@dataclass(frozen=True)
class GridInstance:
    """A hard instance: the distinguished phase pinned to index/grid_size.

    The index and grid size are kept as exact integers so bucket membership
    can be decided with rational arithmetic; the float spec is for the engines.
    """

    index: int
    grid_size: int
    eps: Fraction
    spec: EigenSpec

    @property
    def phase_exact(self) -> Fraction:
        return Fraction(self.index, self.grid_size)


def make_grid_instance(
    r: int,
    eps: PhaseLike,
    layout: RegisterLayout,
    other_phases: Sequence[PhaseLike] | None = None,
) -> GridInstance:
    """Instance with distinguished phase 2*r*eps = r/N; other phases default to 0."""
    frac = to_fraction(eps)
    n = grid_points(frac)
    if not isinstance(r, int) or not 0 <= r < n:
        raise ValueError(f"grid index must be in 0..{n - 1}, got {r!r}")
    rest = tuple(other_phases) if other_phases is not None else ()
    if not rest:
        rest = (0.0,) * (layout.target_dim - 1)
    if len(rest) != layout.target_dim - 1:
        raise ValueError(
            f"need {layout.target_dim - 1} other phases, got {len(rest)}"
        )
    spec = EigenSpec.from_values(layout, (float(Fraction(r, n)),) + tuple(rest))
    return GridInstance(index=r, grid_size=n, eps=frac, spec=spec)


def grid_family(
    eps: PhaseLike,
    layout: RegisterLayout,
    other_phases: Sequence[PhaseLike] | None = None,
) -> list[GridInstance]:
    n = grid_points(eps)
    return [make_grid_instance(r, eps, layout, other_phases) for r in range(n)]


@dataclass(frozen=True)
class Bucket:
    """Outcomes whose phase estimate lies strictly within eps of grid point index."""

    index: int
    members: frozenset[int]


def buckets(layout: RegisterLayout, eps: PhaseLike) -> list[Bucket]:
    """One bucket per grid point; distances exactly eps are excluded.

    Membership is decided in rational arithmetic, so boundary outcomes are
    classified exactly, and buckets of distinct grid points are disjoint.
    """
    frac = to_fraction(eps)
    n = grid_points(frac)
    cd = layout.control_dim
    out = []
    for r in range(n):
        center = Fraction(r, n)
        control_values = [
            m for m in range(cd)
            if circular_distance_exact(center, Fraction(m, cd)) < frac
        ]
        members = frozenset(
            layout.label(m, s)
            for m in control_values
            for s in range(1, layout.target_dim + 1)
        )
        out.append(Bucket(index=r, members=members))
    return out


def bucket_probability_curve(
    circuit: Circuit,
    bucket: Bucket,
    spec: EigenSpec,
    phi_grid: Sequence[PhaseLike],
) -> list[tuple[float, float]]:
    """Total bucket probability as the distinguished phase sweeps the given grid."""
    members = sorted(bucket.members)
    points = []
    for phi in phi_grid:
        swept = spec.with_first_phase(phi)
        dist = measurement_distribution(run_circuit(circuit, swept))
        mass = float(dist.probabilities[members].sum())
        points.append((float(Phase.of(phi)), mass))
    return points


def full_width_half_max(points: Sequence[tuple[float, float]]) -> float:
    """Width of the tallest peak at half its height, by linear interpolation.

    Expects the peak to lie away from the ends of the sampled interval.
    """
    xs = np.array([p[0] for p in points])
    ys = np.array([p[1] for p in points])
    peak = int(np.argmax(ys))
    half = ys[peak] / 2.0

    def crossing(start: int, step: int) -> float:
        i = start
        while 0 <= i + step < len(ys) and ys[i + step] >= half:
            i += step
        j = i + step
        if not 0 <= j < len(ys):
            raise ValueError("half-maximum crossing runs off the sampled grid")
        # linear interpolation between (xs[i], ys[i]) and (xs[j], ys[j])
        frac = (ys[i] - half) / (ys[i] - ys[j])
        return float(xs[i] + frac * (xs[j] - xs[i]))

    left = crossing(peak, -1)
    right = crossing(peak, +1)
    return right - left


def _grid_curve_matrix(
    circuit: Circuit,
    eps: PhaseLike,
    other_phases: Sequence[PhaseLike] | None,
) -> tuple[list[Bucket], np.ndarray]:
    """probabilities[r, n] = bucket r mass with the distinguished phase at n/N."""
    lay = circuit.layout
    frac = to_fraction(eps)
    n = grid_points(frac)
    bks = buckets(lay, frac)
    member_idx = [np.array(sorted(b.members), dtype=int) for b in bks]
    probs = np.zeros((n, n))
    base = make_grid_instance(0, frac, lay, other_phases).spec
    for gp in range(n):
        spec = base.with_first_phase(float(Fraction(gp, n)))
        dist = measurement_distribution(run_circuit(circuit, spec))
        for b in bks:
            idx = member_idx[b.index]
            probs[b.index, gp] = float(dist.probabilities[idx].sum()) if idx.size else 0.0
    return bks, probs


@dataclass(frozen=True)
class BucketAudit:
    """Frequency content of one bucket's probability curve.

    eta maps each integer frequency to its coefficient (extracted symbolically);
    gamma holds the per-(l, l') products it was assembled from.  aliased[k] is
    the sum of eta over frequencies congruent to k mod N, which the N-point
    inverse DFT of the sampled curve must reproduce (times N).
    """

    index: int
    eta: dict[int, complex]
    gamma: dict[tuple[int, int], complex]
    aliased: np.ndarray
    sampled: np.ndarray
    dft: np.ndarray
    dft_error: float
    offdiagonal_mass: float
    concentrated: bool
    nonzero_classes: int

    def reconstruct(self, phi: PhaseLike) -> complex:
        """Evaluate sum_m eta_m e^{2 pi i m phi}; real up to rounding."""
        x = float(Phase.of(phi))
        return sum(
            (v * unit_phase((m * x) % 1.0) for m, v in self.eta.items()), 0j
        )


@dataclass(frozen=True)
class FrequencyAudit:
    layout: RegisterLayout
    eps: Fraction
    grid_size: int
    bucket_audits: tuple[BucketAudit, ...]
    fraction_good: float
    ok: bool


def dft_frequency_audit(
    circuit: Circuit,
    eps: PhaseLike,
    other_phases: Sequence[PhaseLike] | None = None,
    dft_tol: float = 1e-9,
    zero_tol: float = 1e-12,
) -> FrequencyAudit:
    """Extract each bucket's frequency coefficients and verify the aliasing identity.

    For every bucket the symbolic engine yields the scalar-frequency expansion
    of each member amplitude; products of those coefficients give the curve's
    frequency content eta.  The N-point inverse DFT of the numerically sampled
    curve must equal N times the aliased eta sums (within dft_tol).  Buckets
    whose off-grid-point mass is below the success threshold must have all N
    aliased classes nonzero; `ok` reports both checks.
    """
    lay = circuit.layout
    frac = to_fraction(eps)
    n = grid_points(frac)
    rest = tuple(other_phases) if other_phases is not None else (0.0,) * (lay.target_dim - 1)
    if len(rest) != lay.target_dim - 1:
        raise ValueError(f"need {lay.target_dim - 1} other phases, got {len(rest)}")

    bks, probs = _grid_curve_matrix(circuit, frac, rest)
    sym = run_circuit_symbolic(circuit)

    grid = np.arange(n)
    audits = []
    for b in bks:
        eta: dict[int, complex] = {}
        gamma: dict[tuple[int, int], complex] = {}
        for k_label in sorted(b.members):
            beta = restrict_to_first_phase(sym.poly_by_label(k_label), rest)
            for l, bl in beta.items():
                for lp, blp in beta.items():
                    prod = bl * np.conjugate(blp)
                    gamma[(l, lp)] = gamma.get((l, lp), 0j) + prod
                    m = l - lp
                    eta[m] = eta.get(m, 0j) + prod

        sampled = probs[b.index]
        dft = np.array(
            [np.sum(sampled * unit_phase(-((k * grid) % n) / n)) for k in range(n)]
        )
        aliased = np.zeros(n, dtype=np.complex128)
        for m, v in eta.items():
            aliased[m % n] += v
        dft_error = float(np.max(np.abs(dft - n * aliased))) if n else 0.0
        offdiag = float(sampled.sum() - sampled[b.index])
        audits.append(
            BucketAudit(
                index=b.index,
                eta=eta,
                gamma=gamma,
                aliased=aliased,
                sampled=sampled,
                dft=dft,
                dft_error=dft_error,
                offdiagonal_mass=offdiag,
                concentrated=offdiag < SUCCESS_THRESHOLD,
                nonzero_classes=int(np.sum(np.abs(aliased) > zero_tol)),
            )
        )

    fraction_good = sum(a.concentrated for a in audits) / n
    ok = all(a.dft_error <= dft_tol for a in audits) and all(
        a.nonzero_classes == n for a in audits if a.concentrated
    )
    return FrequencyAudit(
        layout=lay,
        eps=frac,
        grid_size=n,
        bucket_audits=tuple(audits),
        fraction_good=fraction_good,
        ok=ok,
    )


def fraction_good_buckets(
    circuit: Circuit,
    eps: PhaseLike,
    other_phases: Sequence[PhaseLike] | None = None,
) -> float:
    """Fraction of grid points whose bucket keeps its off-point mass below 3/4.

    Any estimator meeting the success condition on the whole grid family makes
    this at least 2/3.
    """
    frac = to_fraction(eps)
    n = grid_points(frac)
    _, probs = _grid_curve_matrix(circuit, frac, other_phases)
    good = sum(
        1
        for r in range(n)
        if float(probs[r].sum() - probs[r, r]) < SUCCESS_THRESHOLD
    )
    return good / n


@dataclass(frozen=True)
class MinQueriesSearch:
    """Result of searching for the smallest query count that resolves eps.

    found is None when the search space was exhausted without success (reported,
    not raised); worst_success records the weakest grid instance per tried T.
    """

    eps: Fraction
    found: int | None
    worst_success: dict[int, float]


def empirical_min_T(
    eps: PhaseLike,
    family: Callable[[int], Circuit] | None = None,
    t: int = 1,
    max_T: int = 12,
    other_phases: Sequence[PhaseLike] | None = None,
) -> MinQueriesSearch:
    """Smallest T for which family(T) succeeds on every grid instance.

    The default family is the standard estimation circuit (a bare circuit for
    T = 0).  Success is measured exactly through bucket membership.
    """
    frac = to_fraction(eps)
    n = grid_points(frac)

    def default_family(T: int) -> Circuit:
        if T == 0:
            return Circuit(RegisterLayout(1, t), ())
        return build_qpe_circuit(T, t)

    make = family if family is not None else default_family
    worst_success: dict[int, float] = {}
    found = None
    for T in range(max_T + 1):
        circuit = make(T)
        bks = buckets(circuit.layout, frac)
        member_idx = [np.array(sorted(b.members), dtype=int) for b in bks]
        worst = 1.0
        base = make_grid_instance(0, frac, circuit.layout, other_phases).spec
        for r in range(n):
            spec = base.with_first_phase(float(Fraction(r, n)))
            dist = measurement_distribution(run_circuit(circuit, spec))
            idx = member_idx[r]
            success = float(dist.probabilities[idx].sum()) if idx.size else 0.0
            worst = min(worst, success)
        worst_success[T] = worst
        if worst >= SUCCESS_THRESHOLD:
            found = T
            break
    return MinQueriesSearch(eps=frac, found=found, worst_success=worst_success)


def dft_orthogonality_residual(max_n: int) -> float:
    """Worst deviation of sum_j e^{2 pi i d j / n} from its exact value (n or 0).

    Covers every difference d = m - k for all (m, k) pairs and every n up to
    max_n.  Exponent products are reduced mod n in integer arithmetic first.
    """
    worst = 0.0
    for n in range(1, max_n + 1):
        j = np.arange(n)
        for d in range(-(n - 1), n):
            s = np.sum(unit_phase(((d * j) % n) / n))
            target = float(n) if d % n == 0 else 0.0
            worst = max(worst, float(abs(s - target)))
    return worst
