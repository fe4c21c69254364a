"""Experiment orchestration, statistics, and result persistence.

``run_synthetic_experiment`` sweeps the planted model over a grid of
(planted size, separation) cells; ``run_real_experiment`` applies the
knockout model to a real graph's largest connected component. Both
score every algorithm output by its density ratio against the optimum
at the true weights and return an ``ExperimentRecord`` whose rows
serialize to a fixed CSV schema.

Runs are deterministic: a master seed derives one substream per
(purpose, cell, realization, repeat), so two runs of the same config
produce byte-identical rows apart from the runtime column.
"""

from __future__ import annotations

import csv
import json
import os
import time
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Union

import numpy as np

from .errors import BudgetExceededError
from .generators import gen_knockout, gen_planted, make_simulated_oracle
from .graph import Graph, largest_connected_component
from .io import parse_instance
from .robust import (
    DEFAULT_SAMPLE_CAP,
    ratio_at,
    solve_lower_bound,
    solve_random_weights,
    solve_with_sampling,
)
from .solvers import solve_exact

__all__ = [
    "SCHEMA_VERSION",
    "CSV_FIELDS",
    "ALGORITHMS",
    "SyntheticConfig",
    "TrialRow",
    "AggregateRow",
    "ExperimentRecord",
    "run_synthetic_experiment",
    "run_real_experiment",
    "emit_results",
    "load_results",
    "desk_synthetic_config",
    "paper_scale_synthetic_config",
]

SCHEMA_VERSION = 1

CSV_FIELDS = (
    "model", "n", "p", "n_prime", "alpha", "gamma", "epsilon",
    "seed", "algorithm", "trial", "ratio", "runtime_s", "oracle_calls",
)

ALGORITHMS = ("random", "lower_bound", "sampling")


@dataclass(frozen=True)
class TrialRow:
    """One algorithm invocation on one instance."""

    model: str
    n: int
    p: float | None
    n_prime: int | None
    alpha: float | None
    gamma: float
    epsilon: float
    seed: int
    algorithm: str
    trial: int
    ratio: float
    runtime_s: float
    oracle_calls: int

    def cell(self):
        return (self.model, self.n, self.p, self.n_prime, self.alpha,
                self.gamma, self.epsilon)


@dataclass(frozen=True)
class AggregateRow:
    """Per-cell, per-algorithm mean or standard deviation over trials."""

    model: str
    n: int
    p: float | None
    n_prime: int | None
    alpha: float | None
    gamma: float
    epsilon: float
    seed: int
    algorithm: str
    stat: str  # "mean" or "std"
    ratio: float
    runtime_s: float
    oracle_calls: float


@dataclass(frozen=True)
class ExperimentRecord:
    """Everything one experiment produced: config, trial rows, and the
    aggregates recomputable from them."""

    config: dict
    trials: tuple[TrialRow, ...]

    def aggregates(self) -> tuple[AggregateRow, ...]:
        groups: dict[tuple, list[TrialRow]] = {}
        for row in self.trials:
            groups.setdefault(row.cell() + (row.algorithm,), []).append(row)
        master_seed = int(self.config.get("seed", 0))
        out: list[AggregateRow] = []
        for key in sorted(groups, key=_group_sort_key):
            rows = groups[key]
            ratios = np.array([r.ratio for r in rows], dtype=float)
            runtimes = np.array([r.runtime_s for r in rows], dtype=float)
            calls = np.array([r.oracle_calls for r in rows], dtype=float)
            model, n, p, n_prime, alpha, gamma, epsilon, algorithm = key
            for stat, reducer in (("mean", np.mean), ("std", np.std)):
                out.append(AggregateRow(
                    model=model, n=n, p=p, n_prime=n_prime, alpha=alpha,
                    gamma=gamma, epsilon=epsilon, seed=master_seed,
                    algorithm=algorithm, stat=stat,
                    ratio=float(reducer(ratios)),
                    runtime_s=float(reducer(runtimes)),
                    oracle_calls=float(reducer(calls)),
                ))
        return tuple(out)

    def mean_ratio(self, algorithm: str, **cell_filters) -> float:
        """Mean ratio of an algorithm over trials matching the filters."""
        values = [
            r.ratio for r in self.trials
            if r.algorithm == algorithm
            and all(getattr(r, k) == v for k, v in cell_filters.items())
        ]
        if not values:
            raise ValueError("no trials match")
        return float(np.mean(values))


def _group_sort_key(key):
    return tuple((x is None, x) for x in key)


def _derive_seed(master: int, *key) -> int:
    ss = np.random.SeedSequence(int(master), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(2, dtype=np.uint64)[0] % (2**63))


@dataclass(frozen=True)
class SyntheticConfig:
    """Grid definition for the planted-model sweep."""

    n: int = 500
    p: float = 0.01
    n_primes: tuple[int, ...] = (50, 100, 150, 200)
    alphas: tuple[float, ...] = tuple(round(0.1 * i, 1) for i in range(10))
    realizations: int = 10
    repeats: int = 10
    gamma: float = 0.1
    epsilon: float = 0.5
    seed: int = 0
    sample_cap: int = DEFAULT_SAMPLE_CAP
    restrict_sampling: bool = False

    def as_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = "synthetic"
        d["schema_version"] = SCHEMA_VERSION
        return d


def paper_scale_synthetic_config(seed: int = 0) -> SyntheticConfig:
    """Full-scale sweep preset (hours of compute; not used by tests)."""
    return SyntheticConfig(seed=seed)


def desk_synthetic_config(seed: int = 0) -> SyntheticConfig:
    """Desk-scale sweep preset that finishes in minutes."""
    return SyntheticConfig(
        n=120, p=0.05, n_primes=(15, 30),
        realizations=5, repeats=5, seed=seed,
    )


def run_synthetic_experiment(config: SyntheticConfig) -> ExperimentRecord:
    """Sweep the planted model over every (n_prime, alpha) cell.

    Per realization: the lower-bound solver runs once, and the random
    baseline and the sampling solver run ``repeats`` times each with
    fresh substreams. A sampling run that trips the budget cap is
    recorded with a NaN ratio instead of aborting the sweep.
    """
    rows: list[TrialRow] = []
    for i_np, n_prime in enumerate(config.n_primes):
        for i_a, alpha in enumerate(config.alphas):
            for real in range(config.realizations):
                inst_seed = _derive_seed(config.seed, 0, i_np, i_a, real)
                inst = gen_planted(config.n, config.p, n_prime, alpha, inst_seed)
                rows.extend(_run_instance(
                    inst, model="planted", p=config.p, n_prime=n_prime,
                    alpha=alpha, gamma=config.gamma, epsilon=config.epsilon,
                    repeats=config.repeats, inst_seed=inst_seed,
                    trial_base=real * config.repeats, lb_trial=real,
                    master=config.seed, stream_key=(i_np, i_a, real),
                    sample_cap=config.sample_cap,
                    restrict_sampling=config.restrict_sampling,
                ))
    rows.sort(key=_row_sort_key)
    return ExperimentRecord(config=config.as_dict(), trials=tuple(rows))


def run_real_experiment(
    graph: Union[Graph, str, os.PathLike],
    gamma: float,
    epsilon: float,
    repeats: int = 10,
    seed: int = 0,
    *,
    sample_cap: int = DEFAULT_SAMPLE_CAP,
    restrict_sampling: bool = False,
    model_name: str = "knockout",
) -> ExperimentRecord:
    """Knockout-model run on a real graph.

    The graph is restricted to its largest connected component before
    the knockout instance is drawn. Oracle-call totals are recorded per
    trial; divide by the edge count for the per-edge average.
    """
    if isinstance(graph, Graph):
        g0 = graph
        source = "<in-memory>"
    else:
        parsed = parse_instance(graph)
        g0 = parsed[0] if isinstance(parsed, tuple) else parsed.graph
        source = os.fspath(graph)
    cc = largest_connected_component(g0)
    g = cc.graph
    inst_seed = _derive_seed(seed, 0)
    inst = gen_knockout(g, inst_seed)
    rows = _run_instance(
        inst, model=model_name, p=None, n_prime=None, alpha=None,
        gamma=gamma, epsilon=epsilon, repeats=repeats, inst_seed=inst_seed,
        trial_base=0, lb_trial=0, master=seed, stream_key=(0, 0, 0),
        sample_cap=sample_cap, restrict_sampling=restrict_sampling,
    )
    rows.sort(key=_row_sort_key)
    config = {
        "kind": "real",
        "schema_version": SCHEMA_VERSION,
        "source": source,
        "n": g.n,
        "m": g.m,
        "component_of": g0.n,
        "gamma": gamma,
        "epsilon": epsilon,
        "repeats": repeats,
        "seed": seed,
        "sample_cap": sample_cap,
        "restrict_sampling": restrict_sampling,
    }
    return ExperimentRecord(config=config, trials=tuple(rows))


def _row_sort_key(row: TrialRow):
    return (_group_sort_key(row.cell()), row.algorithm, row.trial)


def _run_instance(inst, *, model, p, n_prime, alpha, gamma, epsilon, repeats,
                  inst_seed, trial_base, lb_trial, master, stream_key,
                  sample_cap, restrict_sampling) -> list[TrialRow]:
    g = inst.graph
    optimum = solve_exact(g, inst.w_true).density_value

    def row(algorithm, trial, ratio, runtime, calls):
        return TrialRow(
            model=model, n=g.n, p=p, n_prime=n_prime, alpha=alpha,
            gamma=gamma, epsilon=epsilon, seed=inst_seed,
            algorithm=algorithm, trial=trial, ratio=ratio,
            runtime_s=runtime, oracle_calls=calls,
        )

    rows: list[TrialRow] = []

    t0 = time.perf_counter()
    lb = solve_lower_bound(g, inst.space)
    lb_time = time.perf_counter() - t0
    lb_ratio = ratio_at(g, inst.w_true, lb.solution, optimum=optimum)
    rows.append(row("lower_bound", lb_trial, lb_ratio, lb_time, 0))

    for rep in range(repeats):
        trial = trial_base + rep
        rand_seed = _derive_seed(master, 1, *stream_key, rep)
        t0 = time.perf_counter()
        rnd = solve_random_weights(g, inst.space, rand_seed)
        rnd_time = time.perf_counter() - t0
        rnd_ratio = ratio_at(g, inst.w_true, rnd.solution, optimum=optimum)
        rows.append(row("random", trial, rnd_ratio, rnd_time, 0))

        oracle_seed = _derive_seed(master, 2, *stream_key, rep)
        oracle = make_simulated_oracle(inst, oracle_seed)
        t0 = time.perf_counter()
        try:
            outcome = solve_with_sampling(
                g, inst.space, oracle, gamma, epsilon,
                sample_cap=sample_cap, restrict_sampling=restrict_sampling,
            )
        except BudgetExceededError:
            rows.append(row("sampling", trial, float("nan"),
                            time.perf_counter() - t0, 0))
            continue
        samp_time = time.perf_counter() - t0
        samp_ratio = ratio_at(g, inst.w_true, outcome.solution, optimum=optimum)
        rows.append(row("sampling", trial, samp_ratio, samp_time,
                        outcome.total_calls))
    return rows


def _format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        # plain-float repr; numpy scalars would repr as np.float64(...)
        return repr(float(value))
    return str(value)


def _trial_csv_record(row: TrialRow) -> list[str]:
    return [_format_value(v) for v in (
        row.model, row.n, row.p, row.n_prime, row.alpha, row.gamma,
        row.epsilon, row.seed, row.algorithm, row.trial, row.ratio,
        row.runtime_s, row.oracle_calls,
    )]


def _aggregate_csv_record(row: AggregateRow) -> list[str]:
    return [_format_value(v) for v in (
        row.model, row.n, row.p, row.n_prime, row.alpha, row.gamma,
        row.epsilon, row.seed, row.algorithm, row.stat, row.ratio,
        row.runtime_s, row.oracle_calls,
    )]


def emit_results(record: ExperimentRecord, path, fmt: str = "csv") -> list[Path]:
    """Write trial rows plus aggregate rows, and a text summary next to them.

    ``fmt`` is ``csv`` (header, trial rows, aggregate rows with the
    stat name in the trial column) or ``json-lines`` (one object per
    row). Returns the written paths. Floats use ``repr`` so identical
    records produce identical bytes.
    """
    path = Path(path)
    aggregates = record.aggregates()
    if fmt == "csv":
        with path.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(CSV_FIELDS)
            for row in record.trials:
                writer.writerow(_trial_csv_record(row))
            for agg in aggregates:
                writer.writerow(_aggregate_csv_record(agg))
    elif fmt == "json-lines":
        with path.open("w", encoding="utf-8") as handle:
            for row in record.trials:
                handle.write(json.dumps(
                    {"kind": "trial", **asdict(row)}, sort_keys=True) + "\n")
            for agg in aggregates:
                handle.write(json.dumps(
                    {"kind": "aggregate", **asdict(agg)}, sort_keys=True) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")

    summary_path = path.with_name(path.stem + ".summary.txt")
    summary_path.write_text(render_summary(record), encoding="utf-8")
    return [path, summary_path]


def render_summary(record: ExperimentRecord) -> str:
    lines = [f"results schema v{SCHEMA_VERSION}",
             f"config: {json.dumps(record.config, sort_keys=True)}",
             f"trials: {len(record.trials)}", ""]
    header = (f"{'cell':<40} {'algorithm':<12} {'mean ratio':>10} "
              f"{'std':>10} {'mean time(s)':>12} {'mean calls':>12}")
    lines.append(header)
    lines.append("-" * len(header))
    aggs = record.aggregates()
    means = {((a.model, a.n, a.p, a.n_prime, a.alpha, a.gamma, a.epsilon),
              a.algorithm, a.stat): a for a in aggs}
    cells = sorted({k[0] for k in means}, key=_group_sort_key)
    for cell in cells:
        model, n, p, n_prime, alpha, gamma, epsilon = cell
        label = f"{model} n={n}"
        if n_prime is not None:
            label += f" n'={n_prime}"
        if alpha is not None:
            label += f" a={alpha}"
        for algorithm in ALGORITHMS:
            mean = means.get((cell, algorithm, "mean"))
            std = means.get((cell, algorithm, "std"))
            if mean is None:
                continue
            lines.append(
                f"{label:<40} {algorithm:<12} {mean.ratio:>10.4f} "
                f"{std.ratio:>10.4f} {mean.runtime_s:>12.4f} "
                f"{mean.oracle_calls:>12.1f}"
            )
    return "\n".join(lines) + "\n"


def _from_csv_token(token: str):
    return None if token == "" else token


def load_results(path) -> tuple[list[TrialRow], list[AggregateRow]]:
    """Read back a CSV written by ``emit_results``."""
    trials: list[TrialRow] = []
    aggregates: list[AggregateRow] = []
    with Path(path).open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if tuple(header) != CSV_FIELDS:
            raise ValueError(f"unexpected CSV header {header!r}")
        for rec in reader:
            (model, n, p, n_prime, alpha, gamma, epsilon,
             seed, algorithm, trial, ratio, runtime_s, calls) = rec
            common = dict(
                model=model, n=int(n),
                p=None if p == "" else float(p),
                n_prime=None if n_prime == "" else int(n_prime),
                alpha=None if alpha == "" else float(alpha),
                gamma=float(gamma), epsilon=float(epsilon), seed=int(seed),
                algorithm=algorithm,
            )
            if trial in ("mean", "std"):
                aggregates.append(AggregateRow(
                    **common, stat=trial, ratio=float(ratio),
                    runtime_s=float(runtime_s), oracle_calls=float(calls),
                ))
            else:
                trials.append(TrialRow(
                    **common, trial=int(trial), ratio=float(ratio),
                    runtime_s=float(runtime_s), oracle_calls=int(calls),
                ))
    return trials, aggregates
