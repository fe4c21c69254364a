"""Densest subgraph discovery under edge-weight uncertainty.

Exact and approximate densest-subgraph engines, robust solvers over
interval weight spaces (a conservative lower-bound solve and a
sampling-calibrated one), the random instance models used to evaluate
them, and a reproducible experiment harness with a CLI.
"""

from .errors import BudgetExceededError, ParseError
from .graph import (
    Graph,
    InducedSubgraph,
    WeightSpace,
    density,
    induced_subgraph,
    induced_weight,
    largest_connected_component,
    validate_space,
    validate_weights,
    weighted_degree,
    weighted_degrees,
)
from .solvers import (
    DensestResult,
    balalau_preprocess,
    greedy_peel,
    solve_bruteforce,
    solve_exact,
)
from .robust import (
    SamplingOracle,
    SamplingOutcome,
    adversarial_spike,
    ratio_at,
    ratio_guarantee,
    sample_count,
    solve_lower_bound,
    solve_random_weights,
    solve_with_sampling,
)
from .generators import (
    SimulatedOracle,
    UncertainInstance,
    gen_erdos_renyi,
    gen_knockout,
    gen_planted,
    make_simulated_oracle,
)
from .io import parse_instance, parse_text, write_graph, write_instance
from .datasets import bundled_names, load_bundled

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "ParseError",
    "Graph",
    "InducedSubgraph",
    "WeightSpace",
    "density",
    "induced_subgraph",
    "induced_weight",
    "largest_connected_component",
    "validate_space",
    "validate_weights",
    "weighted_degree",
    "weighted_degrees",
    "DensestResult",
    "balalau_preprocess",
    "greedy_peel",
    "solve_bruteforce",
    "solve_exact",
    "SamplingOracle",
    "SamplingOutcome",
    "adversarial_spike",
    "ratio_at",
    "ratio_guarantee",
    "sample_count",
    "solve_lower_bound",
    "solve_random_weights",
    "solve_with_sampling",
    "SimulatedOracle",
    "UncertainInstance",
    "gen_erdos_renyi",
    "gen_knockout",
    "gen_planted",
    "make_simulated_oracle",
    "parse_instance",
    "parse_text",
    "write_graph",
    "write_instance",
    "bundled_names",
    "load_bundled",
]
