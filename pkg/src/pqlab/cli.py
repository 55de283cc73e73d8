"""Batch experiment runner.

Each subcommand validates its configuration, computes one experiment, writes a
deterministic delimited table (plus a rendered figure next to it), and prints a
short summary.  Exit codes: 0 success, 1 an assertion checked by the experiment
failed, 2 invalid configuration.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import report
from .core import (
    EigenSpec,
    MAX_CONTROL_QUBITS,
    MAX_TARGET_QUBITS,
    RegisterLayout,
    phase_of_outcome,
    to_fraction,
)
from .engine import (
    Circuit,
    FixedUnitary,
    HadamardLayer,
    InverseQFT,
    PowerQuery,
    StateVector,
    apply_gate,
    apply_power_query,
    measurement_distribution,
    random_unitary,
    run_circuit,
    success_probability,
)
from .freqsets import (
    difference_set,
    min_queries_bound,
    necessary_condition,
    subset_sums,
    validate_schedule,
)
from .lab import (
    bucket_probability_curve,
    buckets,
    build_qpe_circuit,
    dft_orthogonality_residual,
    dft_frequency_audit,
    empirical_min_T,
    full_width_half_max,
    grid_points,
)
from .symbolic import evaluate, run_circuit_symbolic

__all__ = ["ConfigError", "ExperimentConfig", "main", "run_experiment"]

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_CONFIG = 2

MAX_GRID = 1_000_000


class ConfigError(ValueError):
    """Invalid experiment configuration; message names the violated precondition."""


@dataclass
class ExperimentConfig:
    kind: str
    queries: int | None = None          # --T
    schedule: tuple[int, ...] | None = None
    eps: Fraction | None = None
    eps_list: tuple[Fraction, ...] | None = None
    phi: Fraction | None = None
    other_phases: tuple[Fraction, ...] | None = None
    bucket: int | None = None
    grid: int = 512
    target_qubits: int = 1              # --t
    seed: int = 7
    max_queries: int = 12               # --max-T
    out: Path | None = None
    fmt: str = "csv"
    plot: bool = True


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None,
                        help="key = value file supplying defaults; flags win")
    common.add_argument("--out", type=str, default=None,
                        help="output table path; figure lands next to it as .png")
    common.add_argument("--format", dest="format", type=str, default=None,
                        choices=["csv", "json"], help="output format (default csv)")
    common.add_argument("--no-plot", dest="no_plot", action="store_true",
                        help="skip figure rendering")
    common.add_argument("--T", dest="T", type=int, default=None,
                        help="number of power queries / control qubits")
    common.add_argument("--eps", type=str, default=None,
                        help="precision; accepts 2^-k, decimal, or a/b forms")
    common.add_argument("--schedule", type=str, default=None,
                        help="comma-separated query powers, e.g. 1,2,4")
    common.add_argument("--grid", type=int, default=None,
                        help="number of sweep points for curves")
    common.add_argument("--t", dest="t", type=int, default=None,
                        help="target qubits (default 1)")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for randomized self-checks")
    common.add_argument("--bucket", type=int, default=None,
                        help="bucket index for curve experiments")
    common.add_argument("--phi", type=str, default=None,
                        help="distinguished eigenphase for simulate")
    common.add_argument("--other-phases", dest="other_phases", type=str, default=None,
                        help="comma-separated phases of the remaining eigenvectors")
    common.add_argument("--max-T", dest="max_T", type=int, default=None,
                        help="largest query count tried by searches (default 12)")

    parser = argparse.ArgumentParser(
        prog="pqlab",
        description="Power-query phase estimation laboratory",
    )
    sub = parser.add_subparsers(dest="kind", required=True)
    sub.add_parser("simulate", parents=[common],
                   help="run one circuit and emit its outcome distribution")
    sub.add_parser("freqset", parents=[common],
                   help="subset sums and pairwise differences of a schedule")
    sub.add_parser("qpe-curve", parents=[common],
                   help="bucket probability as the eigenphase sweeps a grid")
    sub.add_parser("audit", parents=[common],
                   help="aliased-frequency audit of every bucket")
    sub.add_parser("bound-sweep", parents=[common],
                   help="query-count lower bound vs. empirical minimum over eps")
    sub.add_parser("selftest", parents=[common],
                   help="randomized engine hygiene checks")
    return parser


def _load_config_file(path: str) -> dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    data: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        data[key.strip().replace("-", "_")] = value.strip()
    return data


def _parse_eps(text: str) -> Fraction:
    try:
        frac = to_fraction(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"eps: cannot parse {text!r}") from exc
    if not 0 < frac <= Fraction(1, 2):
        raise ConfigError(f"eps must lie in (0, 1/2], got {frac}")
    return frac


def _parse_eps_list(text: str) -> tuple[Fraction, ...]:
    if ".." in text:
        lo, _, hi = text.partition("..")
        a, b = _parse_eps(lo), _parse_eps(hi)
        values = []
        k = a
        while k >= b:
            values.append(k)
            k = k / 2
        if not values or values[-1] != b:
            raise ConfigError(
                f"eps range {text!r} must step by powers of two from {a} down to {b}"
            )
        return tuple(values)
    return tuple(_parse_eps(part) for part in text.split(","))


def _parse_phase(text: str, name: str) -> Fraction:
    try:
        frac = to_fraction(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"{name}: cannot parse {text!r}") from exc
    return frac % 1


def _parse_schedule_text(text: str) -> tuple[int, ...]:
    try:
        powers = tuple(int(part) for part in text.split(","))
        return validate_schedule(powers)
    except ValueError as exc:
        raise ConfigError(f"schedule: {exc}") from exc


def _merged(args: argparse.Namespace, key: str, file_cfg: dict[str, str]):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return file_cfg.get(key)


def parse_config(args: argparse.Namespace) -> ExperimentConfig:
    file_cfg = _load_config_file(args.config) if args.config else {}

    def get(key: str):
        return _merged(args, key, file_cfg)

    def get_int(key: str, default: int | None) -> int | None:
        raw = get(key)
        if raw is None:
            return default
        try:
            return int(raw)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{key} must be an integer, got {raw!r}") from exc

    cfg = ExperimentConfig(kind=args.kind)
    cfg.queries = get_int("T", None)
    cfg.grid = get_int("grid", 512)
    cfg.target_qubits = get_int("t", 1)
    cfg.seed = get_int("seed", 7)
    cfg.bucket = get_int("bucket", None)
    cfg.max_queries = get_int("max_T", 12)

    raw_schedule = get("schedule")
    if raw_schedule is not None:
        cfg.schedule = _parse_schedule_text(str(raw_schedule))
    raw_eps = get("eps")
    if raw_eps is not None:
        if cfg.kind == "bound-sweep":
            cfg.eps_list = _parse_eps_list(str(raw_eps))
        else:
            cfg.eps = _parse_eps(str(raw_eps))
    raw_phi = get("phi")
    if raw_phi is not None:
        cfg.phi = _parse_phase(str(raw_phi), "phi")
    raw_other = get("other_phases")
    if raw_other is not None:
        cfg.other_phases = tuple(
            _parse_phase(part, "other-phases") for part in str(raw_other).split(",")
        )

    raw_out = get("out")
    if raw_out is not None:
        cfg.out = Path(str(raw_out))
    raw_fmt = get("format")
    if raw_fmt is not None:
        if raw_fmt not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {raw_fmt!r}")
        cfg.fmt = str(raw_fmt)
    if getattr(args, "no_plot", False) or str(file_cfg.get("plot", "")).lower() == "false":
        cfg.plot = False

    # Guard caps before any allocation happens.
    if cfg.queries is not None and not 1 <= cfg.queries <= MAX_CONTROL_QUBITS:
        raise ConfigError(f"T must be in 1..{MAX_CONTROL_QUBITS}, got {cfg.queries}")
    if not 1 <= cfg.target_qubits <= MAX_TARGET_QUBITS:
        raise ConfigError(f"t must be in 1..{MAX_TARGET_QUBITS}, got {cfg.target_qubits}")
    if cfg.schedule is not None and len(cfg.schedule) > MAX_CONTROL_QUBITS:
        raise ConfigError(
            f"schedule length {len(cfg.schedule)} exceeds {MAX_CONTROL_QUBITS} control qubits"
        )
    if not 2 <= cfg.grid <= MAX_GRID:
        raise ConfigError(f"grid must be in 2..{MAX_GRID}, got {cfg.grid}")
    if cfg.max_queries < 0 or cfg.max_queries > MAX_CONTROL_QUBITS:
        raise ConfigError(f"max-T must be in 0..{MAX_CONTROL_QUBITS}, got {cfg.max_queries}")
    return cfg


def _emit(cfg: ExperimentConfig, header: list[str], rows: list[list], payload: dict) -> None:
    if cfg.out is None:
        sys.stdout.write(report.table_text(header, rows))
        return
    if cfg.fmt == "json":
        report.write_json(cfg.out, payload)
    else:
        report.write_table(cfg.out, header, rows)


def _schedule_circuit(schedule: tuple[int, ...], t: int) -> Circuit:
    """Standard-shape circuit for an arbitrary schedule: p_i controlled by line T+1-i."""
    T = len(schedule)
    layout = RegisterLayout(T, t)
    gates: list = [HadamardLayer()]
    gates += [PowerQuery(line=T - i, power=p) for i, p in enumerate(schedule)]
    gates.append(InverseQFT())
    return Circuit(layout, tuple(gates))


def _grid_points_checked(eps: Fraction) -> int:
    try:
        return grid_points(eps)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _other_phase_values(cfg: ExperimentConfig, layout: RegisterLayout) -> tuple[float, ...]:
    needed = layout.target_dim - 1
    if cfg.other_phases is None:
        return (0.0,) * needed
    if len(cfg.other_phases) != needed:
        raise ConfigError(
            f"other-phases needs {needed} values for t={layout.t}, got {len(cfg.other_phases)}"
        )
    return tuple(float(p) for p in cfg.other_phases)


def _run_simulate(cfg: ExperimentConfig) -> int:
    if cfg.schedule is not None:
        circuit = _schedule_circuit(cfg.schedule, cfg.target_qubits)
    elif cfg.queries is not None:
        circuit = build_qpe_circuit(cfg.queries, cfg.target_qubits)
    else:
        raise ConfigError("simulate needs --T or --schedule")
    layout = circuit.layout
    phi = cfg.phi if cfg.phi is not None else Fraction(0)
    others = _other_phase_values(cfg, layout)
    spec = EigenSpec.from_values(layout, (float(phi),) + others)
    dist = measurement_distribution(run_circuit(circuit, spec))

    header = ["k", "m", "s", "phi_hat", "prob"]
    rows = []
    for k in range(layout.dim):
        m, s = layout.split(k)
        rows.append([k, m, s, float(phase_of_outcome(k, layout)), float(dist.probabilities[k])])
    payload = {
        "schedule": list(circuit.power_schedule()),
        "phi": str(phi),
        "columns": header,
        "rows": rows,
    }
    print(f"simulate: schedule={list(circuit.power_schedule())} phi={phi}")
    if cfg.eps is not None:
        win = success_probability(dist, float(phi), cfg.eps, layout)
        payload["success_probability"] = win
        print(f"success probability within eps={cfg.eps}: {win:.15g}")
    _emit(cfg, header, rows, payload)
    if cfg.out is not None and cfg.plot:
        marginal = dist.control_marginal(layout)
        report.render_bar_figure(
            report.figure_path(cfg.out),
            list(range(layout.control_dim)),
            marginal,
            xlabel="control value",
            ylabel="probability",
            title=f"outcome distribution, schedule {list(circuit.power_schedule())}",
        )
    return EXIT_OK


def _run_freqset(cfg: ExperimentConfig) -> int:
    if cfg.schedule is None:
        raise ConfigError("freqset needs --schedule")
    sums = subset_sums(cfg.schedule)
    diffs = difference_set(sums)
    n_queries = len(cfg.schedule)
    header = ["set", "value"]
    rows = [["sums", v] for v in sums] + [["diffs", v] for v in diffs]
    payload = {
        "schedule": list(cfg.schedule),
        "subset_sums": sums,
        "differences": diffs,
        "subset_sum_count": len(sums),
        "difference_count": len(diffs),
        "subset_sum_bound": 2**n_queries,
        "difference_bound": 4**n_queries,
    }
    print(
        f"freqset: schedule={list(cfg.schedule)} |L|={len(sums)} (<= {2**n_queries}) "
        f"|M|={len(diffs)} (<= {4**n_queries})"
    )
    if cfg.eps is not None:
        cond = necessary_condition(cfg.schedule, cfg.eps)
        payload["threshold"] = cond.threshold
        payload["satisfied"] = cond.satisfied
        verdict = "meets" if cond.satisfied else "cannot meet"
        print(
            f"necessary condition at eps={cfg.eps}: |M|={cond.difference_count} "
            f"vs threshold {cond.threshold} -> {verdict} the precision requirement"
        )
    _emit(cfg, header, rows, payload)
    if cfg.out is not None and cfg.plot:
        report.render_set_figure(
            report.figure_path(cfg.out),
            {"subset sums": sums, "differences": diffs},
            xlabel="integer frequency",
            title=f"frequency sets of schedule {list(cfg.schedule)}",
        )
    return EXIT_OK


def _run_qpe_curve(cfg: ExperimentConfig) -> int:
    if cfg.queries is None:
        raise ConfigError("qpe-curve needs --T")
    T = cfg.queries
    eps = cfg.eps if cfg.eps is not None else Fraction(1, 2 ** (T + 1))
    n = _grid_points_checked(eps)
    bucket_index = cfg.bucket if cfg.bucket is not None else n // 4
    if not 0 <= bucket_index < n:
        raise ConfigError(f"bucket must be in 0..{n - 1}, got {bucket_index}")
    circuit = build_qpe_circuit(T, cfg.target_qubits)
    others = _other_phase_values(cfg, circuit.layout)
    spec = EigenSpec.from_values(circuit.layout, (0.0,) + others)
    bucket = buckets(circuit.layout, eps)[bucket_index]
    phis = [Fraction(i, cfg.grid) for i in range(cfg.grid)]
    points = bucket_probability_curve(circuit, bucket, spec, phis)

    header = ["phi", "p_B_r"]
    rows = [[x, y] for x, y in points]
    peak_phi, peak = max(points, key=lambda p: p[1])
    width = full_width_half_max(points)
    payload = {
        "T": T,
        "eps": str(eps),
        "bucket": bucket_index,
        "peak_phi": peak_phi,
        "peak_value": peak,
        "fwhm": width,
        "columns": header,
        "rows": rows,
    }
    print(
        f"qpe-curve: T={T} bucket={bucket_index} peak {peak:.15g} at phi={peak_phi:.15g}, "
        f"fwhm={width:.6g}"
    )
    _emit(cfg, header, rows, payload)
    if cfg.out is not None and cfg.plot:
        report.render_curve_figure(
            report.figure_path(cfg.out),
            {f"T={T}": ([x for x, _ in points], [y for _, y in points])},
            xlabel="eigenphase (fraction of a turn)",
            ylabel="bucket probability",
            title=f"bucket {bucket_index} probability, T={T}",
        )
    return EXIT_OK


def _run_audit(cfg: ExperimentConfig) -> int:
    if cfg.queries is None:
        raise ConfigError("audit needs --T")
    T = cfg.queries
    eps = cfg.eps if cfg.eps is not None else Fraction(1, 2 ** (T + 1))
    _grid_points_checked(eps)
    circuit = build_qpe_circuit(T, cfg.target_qubits)
    others = _other_phase_values(cfg, circuit.layout)
    audit = dft_frequency_audit(circuit, eps, others)

    header = ["r", "m", "eta_real", "eta_imag"]
    rows = []
    for ba in audit.bucket_audits:
        for m in sorted(ba.eta):
            rows.append([ba.index, m, ba.eta[m].real, ba.eta[m].imag])
    payload = {
        "T": T,
        "eps": str(eps),
        "grid_size": audit.grid_size,
        "fraction_good": audit.fraction_good,
        "ok": audit.ok,
        "buckets": [
            {
                "r": ba.index,
                "nonzero_classes": ba.nonzero_classes,
                "offdiagonal_mass": ba.offdiagonal_mass,
                "concentrated": ba.concentrated,
                "dft_error": ba.dft_error,
                "eta": {str(m): [ba.eta[m].real, ba.eta[m].imag] for m in sorted(ba.eta)},
            }
            for ba in audit.bucket_audits
        ],
    }
    for ba in audit.bucket_audits:
        print(
            f"bucket {ba.index}: nonzero classes {ba.nonzero_classes}/{audit.grid_size}, "
            f"off-point mass {ba.offdiagonal_mass:.6g}, dft error {ba.dft_error:.3g}"
        )
    print(f"fraction of concentrated buckets: {audit.fraction_good:.15g}")
    _emit(cfg, header, rows, payload)
    if cfg.out is not None and cfg.plot:
        magnitudes = np.array([np.abs(ba.aliased) for ba in audit.bucket_audits])
        report.render_matrix_figure(
            report.figure_path(cfg.out),
            magnitudes,
            xlabel="frequency class (mod N)",
            ylabel="bucket",
            title=f"aliased frequency magnitude, T={T}",
        )
    if not audit.ok:
        print("FAILED: aliasing identity or nonzero-class check did not hold", file=sys.stderr)
        return EXIT_ASSERTION
    return EXIT_OK


def _run_bound_sweep(cfg: ExperimentConfig) -> int:
    if cfg.eps_list is None:
        raise ConfigError("bound-sweep needs --eps (a range like 2^-3..2^-8 or a comma list)")
    header = ["eps", "N", "T_lower_bound", "T_empirical", "ok"]
    rows: list[list] = []
    all_ok = True
    for eps in cfg.eps_list:
        n = _grid_points_checked(eps)
        bound = min_queries_bound(eps)
        search = empirical_min_T(eps, t=cfg.target_qubits, max_T=cfg.max_queries)
        ok = search.found is not None and search.found >= bound
        all_ok = all_ok and ok
        empirical: int | str = search.found if search.found is not None else ""
        rows.append([float(eps), n, bound, empirical, ok])
        shown = search.found if search.found is not None else "not found"
        print(f"eps={eps}: lower bound {bound}, empirical {shown}")
    payload = {"columns": header, "rows": rows, "ok": all_ok}
    _emit(cfg, header, rows, payload)
    if cfg.out is not None and cfg.plot:
        xs = [float(-np.log2(float(e))) for e in cfg.eps_list]
        bounds = [row[2] for row in rows]
        empiricals = [row[3] if row[3] != "" else np.nan for row in rows]
        report.render_sweep_figure(
            report.figure_path(cfg.out),
            xs,
            {"lower bound": bounds, "empirical minimum": empiricals},
            xlabel="log2(1/eps)",
            ylabel="queries T",
            title="query count: bound vs. empirical",
        )
    if not all_ok:
        print("FAILED: an empirical minimum fell below the lower bound", file=sys.stderr)
        return EXIT_ASSERTION
    return EXIT_OK


def _random_circuit(rng: np.random.Generator) -> Circuit:
    """Opening unitary, then random query/unitary pairs on a small layout."""
    c = int(rng.integers(1, 4))
    t = int(rng.integers(1, 3))
    lay = RegisterLayout(c, t)
    n_queries = int(rng.integers(1, 5))
    gates: list = [_fixed(rng, lay)]
    for _ in range(n_queries):
        gates.append(PowerQuery(line=int(rng.integers(1, c + 1)), power=int(rng.integers(1, 9))))
        gates.append(_fixed(rng, lay))
    return Circuit(lay, tuple(gates))


def _fixed(rng: np.random.Generator, lay: RegisterLayout) -> FixedUnitary:
    return FixedUnitary(random_unitary(lay.dim, rng))


def _run_selftest(cfg: ExperimentConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    results: list[tuple[str, bool, str]] = []

    def check(name: str, passed: bool, detail: str) -> None:
        results.append((name, passed, detail))
        print(f"{'ok  ' if passed else 'FAIL'} {name}: {detail}")

    # Norm preservation across random gates.
    lay = RegisterLayout(3, 2)
    spec = EigenSpec.from_values(lay, tuple(rng.random(lay.target_dim)))
    pool = [FixedUnitary(random_unitary(lay.dim, rng)) for _ in range(8)]
    state = StateVector(lay, _random_amplitudes(lay.dim, rng))
    worst = 0.0
    for i in range(200):
        kind = i % 4
        if kind == 0:
            gate = PowerQuery(line=int(rng.integers(1, lay.c + 1)), power=int(rng.integers(0, 9)))
        elif kind == 1:
            gate = HadamardLayer()
        elif kind == 2:
            gate = InverseQFT()
        else:
            gate = pool[int(rng.integers(0, len(pool)))]
        state = apply_gate(state, gate, spec)
        worst = max(worst, abs(state.norm() - 1.0))
    check("norm preservation", worst < 1e-12, f"max drift {worst:.3g}")

    # Power additivity and commutation.
    worst_add = 0.0
    worst_comm = 0.0
    for _ in range(50):
        s0 = StateVector(lay, _random_amplitudes(lay.dim, rng))
        a, b = int(rng.integers(0, 9)), int(rng.integers(0, 9))
        line = int(rng.integers(1, lay.c + 1))
        one = apply_power_query(apply_power_query(s0, line, a, spec), line, b, spec)
        two = apply_power_query(s0, line, a + b, spec)
        worst_add = max(worst_add, float(np.max(np.abs(one.amplitudes - two.amplitudes))))
        l2 = line % lay.c + 1
        ab = apply_power_query(apply_power_query(s0, line, a, spec), l2, b, spec)
        ba = apply_power_query(apply_power_query(s0, l2, b, spec), line, a, spec)
        worst_comm = max(worst_comm, float(np.max(np.abs(ab.amplitudes - ba.amplitudes))))
    check("power additivity", worst_add < 1e-12, f"max deviation {worst_add:.3g}")
    check("query commutation", worst_comm < 1e-12, f"max deviation {worst_comm:.3g}")

    # Exact-phase estimation concentrates on the encoded value.
    worst_exact = 1.0
    for T in range(1, 6):
        circuit = build_qpe_circuit(T)
        for r in range(2**T):
            s = EigenSpec.from_values(circuit.layout, (r / 2**T, 0.0))
            dist = measurement_distribution(run_circuit(circuit, s))
            worst_exact = min(worst_exact, float(dist.control_marginal(circuit.layout)[r]))
    check("exact-phase estimation", worst_exact > 1 - 1e-12, f"min peak {worst_exact:.15g}")

    # Fourier orthogonality.
    residual = dft_orthogonality_residual(32)
    check("dft orthogonality", residual < 1e-12, f"max residual {residual:.3g}")

    # Symbolic engine agrees with the numeric engine.
    worst_cross = 0.0
    for _ in range(10):
        circuit = _random_circuit(rng)
        sym = run_circuit_symbolic(circuit)
        for _ in range(5):
            phases = tuple(rng.random(circuit.layout.target_dim))
            num = run_circuit(circuit, EigenSpec.from_values(circuit.layout, phases))
            symv = evaluate(sym, phases)
            worst_cross = max(
                worst_cross, float(np.max(np.abs(num.amplitudes - symv.amplitudes)))
            )
    check("symbolic/numeric agreement", worst_cross < 1e-9, f"max deviation {worst_cross:.3g}")

    header = ["check", "passed", "detail"]
    rows = [[name, passed, detail] for name, passed, detail in results]
    payload = {"checks": [{"name": n, "passed": p, "detail": d} for n, p, d in results]}
    if cfg.out is not None:
        _emit(cfg, header, rows, payload)
    failed = [name for name, passed, _ in results if not passed]
    if failed:
        print(f"FAILED: {', '.join(failed)}", file=sys.stderr)
        return EXIT_ASSERTION
    return EXIT_OK


def _random_amplitudes(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


_RUNNERS = {
    "simulate": _run_simulate,
    "freqset": _run_freqset,
    "qpe-curve": _run_qpe_curve,
    "audit": _run_audit,
    "bound-sweep": _run_bound_sweep,
    "selftest": _run_selftest,
}


def run_experiment(cfg: ExperimentConfig) -> int:
    runner = _RUNNERS.get(cfg.kind)
    if runner is None:
        raise ConfigError(f"unknown experiment kind {cfg.kind!r}")
    return runner(cfg)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = parse_config(args)
        return run_experiment(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
