"""Integer-set combinatorics of power schedules.

A schedule (p_1, ..., p_T) of query powers determines which frequency
multi-indices a circuit can reach, which scalar frequencies survive fixing all
phases but the first (the subset sums of the schedule), and which frequencies
the outcome probabilities can contain (pairwise differences of subset sums).
The size of the difference set is what limits achievable precision.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .core import PhaseLike, to_fraction

__all__ = [
    "MAX_SCHEDULE_LEN",
    "CardinalityAudit",
    "CardinalityRow",
    "ConditionReport",
    "cardinality_bound_audit",
    "difference_set",
    "min_queries_bound",
    "multi_index_set",
    "necessary_condition",
    "precision_threshold",
    "subset_sums",
    "validate_schedule",
]

MAX_SCHEDULE_LEN = 30

MultiIndex = tuple[int, ...]


def validate_schedule(schedule: Sequence[int]) -> tuple[int, ...]:
    """Normalize to a tuple of positive integers (a zero power is a wasted query)."""
    powers = tuple(schedule)
    for p in powers:
        if not isinstance(p, (int, np.integer)) or isinstance(p, bool) or p < 1:
            raise ValueError(f"schedule powers must be integers >= 1, got {p!r}")
    return tuple(int(p) for p in powers)


def _eps_fraction(eps: PhaseLike) -> Fraction:
    frac = to_fraction(eps)
    if not 0 < frac <= Fraction(1, 2):
        raise ValueError(f"eps must lie in (0, 1/2], got {frac}")
    return frac


def precision_threshold(eps: PhaseLike) -> int:
    """floor(1 / (2 eps)): the weakest integer frequency count consistent with eps."""
    return int(1 / (2 * _eps_fraction(eps)))


def multi_index_set(
    schedule: Sequence[int], t: int, max_terms: int = 1_000_000
) -> set[MultiIndex]:
    """All frequency multi-indices reachable after the schedule, by direct recursion.

    Starts from the all-zero index; each query either leaves an index alone or
    adds its power to exactly one of the 2^t components.
    """
    powers = validate_schedule(schedule)
    if not isinstance(t, (int, np.integer)) or t < 1:
        raise ValueError(f"t must be a positive integer, got {t!r}")
    dim = 1 << int(t)
    current: set[MultiIndex] = {(0,) * dim}
    for p in powers:
        if len(current) * (dim + 1) > max_terms:
            raise ValueError(
                f"multi-index set would exceed {max_terms} entries; "
                f"shorten the schedule or lower t"
            )
        nxt = set(current)
        for jvec in current:
            for s in range(dim):
                nxt.add(jvec[:s] + (jvec[s] + p,) + jvec[s + 1 :])
        current = nxt
    return current


def subset_sums(schedule: Sequence[int]) -> list[int]:
    """Sorted set of all subset sums of the schedule, including the empty sum 0."""
    powers = validate_schedule(schedule)
    if len(powers) > MAX_SCHEDULE_LEN:
        raise ValueError(f"schedule longer than {MAX_SCHEDULE_LEN} queries")
    sums = {0}
    for p in powers:
        sums |= {s + p for s in sums}
    return sorted(sums)


def difference_set(values: Iterable[int], max_pairs: int = 16_000_000) -> list[int]:
    """Sorted set of pairwise differences; symmetric about 0 and contains 0."""
    vals = sorted({int(v) for v in values})
    if not vals:
        raise ValueError("difference set of an empty set is undefined")
    if len(vals) ** 2 > max_pairs:
        raise ValueError(f"{len(vals)}^2 pairs exceed the {max_pairs} guard")
    if max(abs(vals[0]), abs(vals[-1])) < 2**62:
        arr = np.array(vals, dtype=np.int64)
        diffs = np.unique(arr[:, None] - arr[None, :])
        return [int(d) for d in diffs]
    out = {a - b for a in vals for b in vals}
    return sorted(out)


@dataclass(frozen=True)
class ConditionReport:
    """Whether a schedule can possibly reach precision eps, with the set sizes."""

    schedule: tuple[int, ...]
    subset_sum_count: int
    difference_count: int
    threshold: int
    satisfied: bool

    def __bool__(self) -> bool:
        return self.satisfied


def necessary_condition(schedule: Sequence[int], eps: PhaseLike) -> ConditionReport:
    """Check |difference set| >= floor(1/(2 eps)); necessary, not sufficient."""
    powers = validate_schedule(schedule)
    threshold = precision_threshold(eps)
    sums = subset_sums(powers)
    diffs = difference_set(sums)
    return ConditionReport(
        schedule=powers,
        subset_sum_count=len(sums),
        difference_count=len(diffs),
        threshold=threshold,
        satisfied=len(diffs) >= threshold,
    )


def min_queries_bound(eps: PhaseLike) -> int:
    """Smallest T not excluded by 4^T >= 1/(2 eps): ceil(log4(1/(2 eps)))."""
    target = 1 / (2 * _eps_fraction(eps))
    t = 0
    while Fraction(4) ** t < target:
        t += 1
    return t


@dataclass(frozen=True)
class CardinalityRow:
    queries: int
    schedules_checked: int
    max_subset_sums: int
    max_subset_sums_schedule: tuple[int, ...]
    subset_sums_bound: int
    max_differences: int
    max_differences_schedule: tuple[int, ...]
    differences_bound: int

    @property
    def ok(self) -> bool:
        return (
            self.max_subset_sums <= self.subset_sums_bound
            and self.max_differences <= self.differences_bound
        )


@dataclass(frozen=True)
class CardinalityAudit:
    max_power: int
    rows: tuple[CardinalityRow, ...]

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows)


def cardinality_bound_audit(
    max_queries: int, max_power: int, enum_guard: int = 1_000_000
) -> CardinalityAudit:
    """Exhaustively confirm |subset sums| <= 2^T and |differences| <= 4^T.

    Enumerates every schedule with T <= max_queries and powers in 1..max_power;
    reports the maximizing schedules per T.  A failure here would falsify the
    implementation, not the bound.
    """
    if max_queries < 0 or max_power < 1:
        raise ValueError("need max_queries >= 0 and max_power >= 1")
    if max_power**max_queries > enum_guard:
        raise ValueError(f"{max_power}^{max_queries} schedules exceed the enumeration guard")
    rows = []
    for t in range(max_queries + 1):
        best_sums: tuple[int, tuple[int, ...]] = (0, ())
        best_diffs: tuple[int, tuple[int, ...]] = (0, ())
        count = 0
        for powers in itertools.product(range(1, max_power + 1), repeat=t):
            count += 1
            sums = subset_sums(powers)
            diffs = difference_set(sums)
            if len(sums) > best_sums[0]:
                best_sums = (len(sums), powers)
            if len(diffs) > best_diffs[0]:
                best_diffs = (len(diffs), powers)
        rows.append(
            CardinalityRow(
                queries=t,
                schedules_checked=count,
                max_subset_sums=best_sums[0],
                max_subset_sums_schedule=best_sums[1],
                subset_sums_bound=2**t,
                max_differences=best_diffs[0],
                max_differences_schedule=best_diffs[1],
                differences_bound=4**t,
            )
        )
    return CardinalityAudit(max_power=max_power, rows=tuple(rows))
