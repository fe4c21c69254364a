"""Command-line interface.

One subcommand per operation: solvers (``solve``, ``peel``,
``preprocess``), robust algorithms (``alg1``, ``alg2``, ``baseline``),
instance generators (``gen-planted``, ``gen-knockout``), evaluation
(``eval-ratio``), and the experiment drivers (``exp-synthetic``,
``exp-real``).

Exit codes: 0 success, 2 parse error, 3 precondition error, 4 sampling
budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import time

import numpy as np

from . import experiments
from .errors import BudgetExceededError, ParseError
from .generators import UncertainInstance, gen_knockout, gen_planted, make_simulated_oracle
from .graph import largest_connected_component
from .io import parse_instance, write_instance
from .robust import (
    DEFAULT_SAMPLE_CAP,
    ratio_at,
    ratio_guarantee,
    solve_lower_bound,
    solve_random_weights,
    solve_with_sampling,
)
from .solvers import balalau_preprocess, greedy_peel, solve_exact

__all__ = ["main", "build_parser"]


def _load(path):
    """Parse ``path``; returns (graph, weights-or-None, instance-or-None)."""
    parsed = parse_instance(path)
    if isinstance(parsed, tuple):
        graph, weights = parsed
        return graph, weights, None
    return parsed.graph, None, parsed


def _point_weights(path):
    """A concrete weight vector: file weights, or true weights of an instance."""
    graph, weights, inst = _load(path)
    if weights is not None:
        return graph, weights
    if inst.w_true is not None:
        return graph, inst.w_true
    raise ValueError(
        "input carries only intervals; a 2-, 3-, or 5-column edge list is needed"
    )


def _instance(path) -> UncertainInstance:
    graph, weights, inst = _load(path)
    if inst is None:
        raise ValueError("input has no intervals; use a 4- or 5-column edge list")
    return inst


def _emit_record(record: dict, args) -> None:
    if args.format == "json-lines":
        text = json.dumps(record, sort_keys=True) + "\n"
    else:
        buf = _io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(record.keys())
        writer.writerow(["" if v is None else v for v in record.values()])
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _solution_record(result, runtime) -> dict:
    return {
        "density": result.density_value,
        "size": len(result.solution),
        "vertices": " ".join(str(v) for v in sorted(result.solution)),
        "iterations": result.iterations,
        "reduced_to": result.reduced_to,
        "runtime_s": runtime,
    }


def _cmd_solve(args) -> int:
    graph, weights = _point_weights(args.input)
    t0 = time.perf_counter()
    result = solve_exact(graph, weights, tol=args.tol)
    _emit_record(_solution_record(result, time.perf_counter() - t0), args)
    return 0


def _cmd_peel(args) -> int:
    graph, weights = _point_weights(args.input)
    t0 = time.perf_counter()
    result = greedy_peel(graph, weights)
    _emit_record(_solution_record(result, time.perf_counter() - t0), args)
    return 0


def _cmd_preprocess(args) -> int:
    graph, weights = _point_weights(args.input)
    t0 = time.perf_counter()
    red = balalau_preprocess(graph, weights)
    runtime = time.perf_counter() - t0
    _emit_record({
        "n_before": graph.n,
        "m_before": graph.m,
        "n_after": red.graph.n,
        "m_after": red.graph.m,
        "kept_vertices": " ".join(str(int(v)) for v in red.vertex_ids),
        "runtime_s": runtime,
    }, args)
    return 0


def _cmd_alg1(args) -> int:
    inst = _instance(args.input)
    t0 = time.perf_counter()
    result = solve_lower_bound(inst.graph, inst.space)
    runtime = time.perf_counter() - t0
    record = _solution_record(result, runtime)
    if float(inst.space.lower.min()) > 0.0:
        record["guaranteed_ratio"] = ratio_guarantee(inst.space)
    _emit_record(record, args)
    return 0


def _cmd_alg2(args) -> int:
    inst = _instance(args.input)
    if inst.w_true is None:
        raise ValueError(
            "sampling needs true weights to simulate the oracle; "
            "use a 5-column edge list"
        )
    oracle = make_simulated_oracle(inst, args.seed)
    t0 = time.perf_counter()
    outcome = solve_with_sampling(
        inst.graph, inst.space, oracle, args.gamma, args.epsilon,
        sample_cap=args.sample_cap, restrict_sampling=args.reduce,
    )
    runtime = time.perf_counter() - t0
    record = {
        "density_at_contracted_lower": float(
            np.dot(outcome.w_out_space.lower,
                   _induced_mask(inst.graph, outcome.solution))
            / len(outcome.solution)
        ),
        "size": len(outcome.solution),
        "vertices": " ".join(str(v) for v in sorted(outcome.solution)),
        "base_density": outcome.base_density,
        "delta": outcome.delta,
        "total_calls": outcome.total_calls,
        "avg_calls_per_edge": outcome.total_calls / max(inst.graph.m, 1),
        "max_out_width": float(outcome.w_out_space.widths().max())
        if inst.graph.m else 0.0,
        "true_in_out_space": inst.space.contains(inst.w_true)
        and outcome.w_out_space.contains(inst.w_true),
        "runtime_s": runtime,
    }
    _emit_record(record, args)
    return 0


def _induced_mask(graph, solution):
    members = np.zeros(graph.n, dtype=bool)
    members[list(solution)] = True
    return (members[graph.u] & members[graph.v]).astype(float)


def _cmd_baseline(args) -> int:
    inst = _instance(args.input)
    t0 = time.perf_counter()
    result = solve_random_weights(inst.graph, inst.space, args.seed)
    _emit_record(_solution_record(result, time.perf_counter() - t0), args)
    return 0


def _cmd_gen_planted(args) -> int:
    inst = gen_planted(args.n, args.p, args.n_prime, args.alpha, args.seed)
    target = args.out or sys.stdout
    write_instance(inst, target, header_comments=[
        f"planted instance n={args.n} p={args.p} "
        f"n_prime={args.n_prime} alpha={args.alpha}",
    ])
    return 0


def _cmd_gen_knockout(args) -> int:
    graph, _, inst0 = _load(args.input)
    if args.largest_cc:
        graph = largest_connected_component(graph).graph
    inst = gen_knockout(graph, args.seed)
    target = args.out or sys.stdout
    write_instance(inst, target, header_comments=[
        f"knockout instance from {args.input}",
        f"knocked_out_set={' '.join(str(v) for v in sorted(inst.planted_set))}",
    ])
    return 0


def _cmd_eval_ratio(args) -> int:
    graph, weights = _point_weights(args.input)
    vertices = [int(tok) for tok in args.vertices.replace(",", " ").split()]
    t0 = time.perf_counter()
    value = ratio_at(graph, weights, vertices)
    _emit_record({
        "ratio": value,
        "size": len(set(vertices)),
        "runtime_s": time.perf_counter() - t0,
    }, args)
    return 0


def _cmd_exp_synthetic(args) -> int:
    if args.out is None:
        raise ValueError("--out is required for experiment commands")
    if args.preset == "paper-scale":
        config = experiments.paper_scale_synthetic_config(seed=args.seed)
    else:
        config = experiments.desk_synthetic_config(seed=args.seed)
    fields = config.as_dict()
    for key in ("kind", "schema_version"):
        fields.pop(key)
    if args.n is not None:
        fields["n"] = args.n
    if args.p is not None:
        fields["p"] = args.p
    if args.n_prime:
        fields["n_primes"] = tuple(args.n_prime)
    if args.alpha:
        fields["alphas"] = tuple(args.alpha)
    if args.trials is not None:
        fields["realizations"] = args.trials
    if args.repeats is not None:
        fields["repeats"] = args.repeats
    fields["gamma"] = args.gamma
    fields["epsilon"] = args.epsilon
    fields["sample_cap"] = args.sample_cap
    fields["restrict_sampling"] = args.reduce
    fields["n_primes"] = tuple(fields["n_primes"])
    fields["alphas"] = tuple(fields["alphas"])
    record = experiments.run_synthetic_experiment(
        experiments.SyntheticConfig(**fields))
    paths = experiments.emit_results(record, args.out, fmt=args.format_results)
    print(f"wrote {paths[0]} and {paths[1]}")
    return 0


def _cmd_exp_real(args) -> int:
    if args.out is None:
        raise ValueError("--out is required for experiment commands")
    record = experiments.run_real_experiment(
        args.input, args.gamma, args.epsilon, repeats=args.repeats,
        seed=args.seed, sample_cap=args.sample_cap,
        restrict_sampling=args.reduce,
    )
    paths = experiments.emit_results(record, args.out, fmt=args.format_results)
    print(f"wrote {paths[0]} and {paths[1]}")
    return 0


def _add_common(sub):
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--tol", type=float, default=0.0,
                     help="solver improvement tolerance")
    sub.add_argument("--format", dest="format", default="csv",
                     choices=("csv", "json-lines"))
    sub.add_argument("--out", default=None, help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="robustdense",
        description="Densest subgraph discovery under edge-weight uncertainty.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, needs_input=True, **kwargs):
        p = sub.add_parser(name, **kwargs)
        if needs_input:
            p.add_argument("input", help="edge-list file")
        _add_common(p)
        p.set_defaults(func=func)
        return p

    add("solve", _cmd_solve, help="exact densest subgraph at a weight vector")
    add("peel", _cmd_peel, help="greedy peeling approximation")
    add("preprocess", _cmd_preprocess, help="degree-threshold reduction")
    add("alg1", _cmd_alg1, help="solve at the interval lower bounds")

    p = add("alg2", _cmd_alg2, help="sampling solver with interval contraction")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--sample-cap", type=int, default=DEFAULT_SAMPLE_CAP)
    p.add_argument("--reduce", action="store_true",
                   help="sample only edges surviving reduction at the upper bounds")

    add("baseline", _cmd_baseline, help="solve at uniformly random weights")

    p = add("gen-planted", _cmd_gen_planted, needs_input=False,
            help="generate a planted instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--n-prime", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)

    p = add("gen-knockout", _cmd_gen_knockout, help="generate a knockout instance")
    p.add_argument("--largest-cc", action="store_true",
                   help="restrict to the largest connected component first")

    p = add("eval-ratio", _cmd_eval_ratio, help="score a vertex set at a weight vector")
    p.add_argument("--vertices", required=True,
                   help="comma- or space-separated vertex ids")

    p = add("exp-synthetic", _cmd_exp_synthetic, needs_input=False,
            help="planted-model sweep")
    p.add_argument("--preset", choices=("desk", "paper-scale"), default="desk")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--n-prime", type=int, action="append", default=None)
    p.add_argument("--alpha", type=float, action="append", default=None)
    p.add_argument("--trials", type=int, default=None,
                   help="graph realizations per cell")
    p.add_argument("--repeats", type=int, default=None,
                   help="randomized-algorithm runs per realization")
    p.add_argument("--gamma", type=float, default=0.1)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--sample-cap", type=int, default=DEFAULT_SAMPLE_CAP)
    p.add_argument("--reduce", action="store_true")

    p = add("exp-real", _cmd_exp_real, help="knockout-model run on a real graph")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--sample-cap", type=int, default=DEFAULT_SAMPLE_CAP)
    p.add_argument("--reduce", action="store_true")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "format"):
        args.format_results = args.format
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 4
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
