"""Densest-subgraph discovery when edge weights are only known to lie in
per-edge intervals.

A candidate set is judged by its robust ratio: the worst case, over
admissible weight vectors, of its density divided by the optimal
density at that vector. The worst case over the whole box is never
evaluated exactly; ``ratio_at`` scores a set at one designated vector,
and ``adversarial_spike`` builds the single-edge worst-case vectors
used to witness upper bounds.

Two solvers are provided. ``solve_lower_bound`` solves once at the
interval lower bounds; when every lower bound is positive its robust
ratio is at least ``ratio_guarantee(space)``. ``solve_with_sampling``
buys a much stronger guarantee from an edge-weight sampling oracle: it
contracts each interval around an empirical mean with enough samples
that, with probability at least ``1 - gamma``, the true weights stay
inside the contracted box, on which the returned set has robust ratio
at least ``1 - epsilon``.
"""

from __future__ import annotations

import abc
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import BudgetExceededError
from .graph import (
    Graph,
    WeightSpace,
    density,
    validate_space,
    validate_weights,
)
from .solvers import DensestResult, balalau_preprocess, solve_exact

__all__ = [
    "SamplingOracle",
    "SamplingOutcome",
    "sample_count",
    "solve_lower_bound",
    "solve_with_sampling",
    "solve_random_weights",
    "ratio_at",
    "ratio_guarantee",
    "adversarial_spike",
]

DEFAULT_SAMPLE_CAP = 10**8


class SamplingOracle(abc.ABC):
    """Edge-weight sampling oracle.

    ``query(e)`` returns an independent draw from a distribution
    supported on the edge's interval whose mean is the unknown true
    weight. Implementations provide ``_draw``; this base class keeps an
    exact per-edge call tally that is never reset.
    """

    def __init__(self, edge_count: int):
        self._calls = np.zeros(int(edge_count), dtype=np.int64)

    @abc.abstractmethod
    def _draw(self, edge: int, count: int) -> np.ndarray:
        """Next ``count`` values of the edge's sample stream."""

    @property
    def edge_count(self) -> int:
        return int(self._calls.size)

    @property
    def call_counts(self) -> np.ndarray:
        return self._calls.copy()

    @property
    def total_calls(self) -> int:
        return int(self._calls.sum())

    def query(self, edge: int) -> float:
        self._calls[edge] += 1
        return float(self._draw(int(edge), 1)[0])

    def query_block(self, edge: int, count: int) -> np.ndarray:
        """Batch form of ``query``; counts exactly like ``count`` single calls."""
        count = int(count)
        if count < 0:
            raise ValueError("sample count must be nonnegative")
        self._calls[edge] += count
        return self._draw(int(edge), count)


@dataclass(frozen=True, eq=False)
class SamplingOutcome:
    """Result of the sampling solver.

    ``w_out_space`` is contained in the input space; every sampled edge
    ends with interval width at most ``2 * delta``. ``sample_counts``
    holds the per-edge draws (0 where the input interval was already a
    point), and ``base_density`` is the optimal density at the input
    lower bounds that calibrated both ``delta`` and the counts.
    """

    w_out_space: WeightSpace
    solution: frozenset[int]
    sample_counts: np.ndarray
    delta: float
    base_density: float
    total_calls: int


def sample_count(m: int, width: float, gamma: float, epsilon: float,
                 base_density: float) -> int:
    """Draws needed on one edge so that, after contracting every interval
    to the empirical mean plus or minus ``delta``, a union bound over the
    ``m`` edges keeps the true vector inside with probability ``1 - gamma``.

    Hoeffding's inequality for ``t`` draws supported on an interval of
    this ``width`` gives per-edge failure probability ``gamma / m`` once
    ``t`` reaches ``m * width^2 * ln(2m / gamma)`` over
    ``(epsilon * base_density)^2``, rounded up. Width-zero intervals
    need no samples.
    """
    if width < 0.0:
        raise ValueError("interval width must be nonnegative")
    if width == 0.0:
        return 0
    value = (m * width * width * math.log(2.0 * m / gamma)
             / (epsilon * epsilon * base_density * base_density))
    return int(math.ceil(value))


def solve_lower_bound(g: Graph, space: WeightSpace) -> DensestResult:
    """Densest subgraph at the interval lower bounds.

    The most conservative admissible weights; monotonicity of density in
    the weights turns optimality here into the ``ratio_guarantee`` bound
    whenever all lower bounds are positive.
    """
    validate_space(g, space)
    return solve_exact(g, space.lower)


def solve_with_sampling(
    g: Graph,
    space: WeightSpace,
    oracle: SamplingOracle,
    gamma: float,
    epsilon: float,
    *,
    sample_cap: int = DEFAULT_SAMPLE_CAP,
    restrict_sampling: bool = False,
) -> SamplingOutcome:
    """Contract the weight space around sampled means, then solve at the
    contracted lower bounds.

    For each edge whose interval is not already a point, draws
    ``sample_count(...)`` values, averages them, and intersects the
    interval with the average plus or minus
    ``delta = epsilon * base_density / sqrt(2m)``. The true weight
    vector stays inside the contracted space with probability at least
    ``1 - gamma``, and the returned set has robust ratio at least
    ``1 - epsilon`` on that space.

    ``sample_cap`` bounds the per-edge budget; exceeding it raises
    ``BudgetExceededError`` before any oracle call is made. With
    ``restrict_sampling`` only edges that survive degree-threshold
    reduction at the interval upper bounds are sampled; the rest keep
    their input intervals, which leaves the containment guarantee
    untouched but is a heuristic beyond the calibrated procedure.
    """
    validate_space(g, space)
    if oracle.edge_count != g.m:
        raise ValueError(
            f"oracle covers {oracle.edge_count} edges, graph has {g.m}"
        )
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie strictly between 0 and 1")
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    if g.m == 0 or float(space.lower.max()) <= 0.0:
        raise ValueError("at least one interval lower bound must be positive")

    base = solve_exact(g, space.lower)
    base_density = base.density_value
    m = g.m
    delta = epsilon * base_density / math.sqrt(2.0 * m)

    widths = space.widths()
    log_term = math.log(2.0 * m / gamma)
    denom = epsilon * epsilon * base_density * base_density
    counts = np.ceil(m * widths * widths * log_term / denom)
    counts = np.where(widths > 0.0, counts, 0.0).astype(np.int64)

    if restrict_sampling:
        survivors = balalau_preprocess(g, space.upper)
        keep = np.zeros(m, dtype=bool)
        keep[survivors.edge_ids] = True
        counts = np.where(keep, counts, 0)

    worst = int(counts.max()) if m else 0
    if worst > sample_cap:
        edge = int(np.argmax(counts))
        raise BudgetExceededError(edge, worst, sample_cap)

    lower_out = space.lower.copy()
    upper_out = space.upper.copy()
    for edge in np.nonzero(counts)[0]:
        e = int(edge)
        draws = oracle.query_block(e, int(counts[e]))
        mean = float(draws.mean())
        lower_out[e] = max(space.lower[e], mean - delta)
        upper_out[e] = min(space.upper[e], mean + delta)

    out_space = WeightSpace(lower_out, upper_out)
    final = solve_exact(g, lower_out)
    return SamplingOutcome(
        w_out_space=out_space,
        solution=final.solution,
        sample_counts=counts,
        delta=delta,
        base_density=base_density,
        total_calls=int(counts.sum()),
    )


def solve_random_weights(g: Graph, space: WeightSpace, seed) -> DensestResult:
    """Baseline: solve at one weight vector drawn uniformly from the box.

    The vector is ``lower + (upper - lower) * U`` with one uniform draw
    per edge in edge order, so a seed fully determines the run.
    """
    validate_space(g, space)
    rng = np.random.default_rng(seed)
    w = space.lower + space.widths() * rng.random(g.m)
    return solve_exact(g, w)


def ratio_at(g: Graph, w_ref, s: Iterable[int], *,
             optimum: float | None = None) -> float:
    """Density of ``s`` at ``w_ref`` divided by the optimal density there.

    Lies in ``[0, 1]`` up to float rounding. Pass ``optimum`` to reuse a
    precomputed ``solve_exact(g, w_ref).density_value`` when scoring
    many sets at the same vector. A zero optimal density only happens
    when all weights are zero, where every set scores 1.
    """
    w_ref = validate_weights(g, w_ref)
    members = frozenset(int(x) for x in s)
    if not members:
        raise ValueError("cannot score the empty set")
    numerator = density(g, w_ref, members)
    opt = solve_exact(g, w_ref).density_value if optimum is None else float(optimum)
    if opt <= 0.0:
        if numerator <= 0.0:
            return 1.0
        raise ValueError("optimal density is zero but the set has positive density")
    return numerator / opt


def ratio_guarantee(space: WeightSpace) -> float:
    """Guaranteed robust ratio of the lower-bound solution: one over the
    largest upper-to-lower bound ratio across edges.

    Undefined when some lower bound is zero.
    """
    if space.m == 0:
        raise ValueError("empty weight space")
    if float(space.lower.min()) <= 0.0:
        raise ValueError("guarantee requires every lower bound to be positive")
    return float(1.0 / (space.upper / space.lower).max())


def adversarial_spike(g: Graph, space: WeightSpace, s: Iterable[int]) -> np.ndarray:
    """Worst-case weight vector against ``s``: one edge at its upper
    bound, everything else at the lower bounds.

    The spiked edge is the smallest-id edge not induced by ``s``; when
    ``s`` covers every edge (in particular when ``s`` is all vertices)
    the smallest-id edge is used instead.
    """
    validate_space(g, space)
    if g.m == 0:
        raise ValueError("graph has no edges to spike")
    members = np.zeros(g.n, dtype=bool)
    ids = [int(x) for x in s]
    if ids and (min(ids) < 0 or max(ids) >= g.n):
        raise ValueError(f"vertex id outside [0, {g.n})")
    members[ids] = True
    uncovered = np.nonzero(~(members[g.u] & members[g.v]))[0]
    spike = int(uncovered[0]) if uncovered.size else 0
    w = space.lower.copy()
    w[spike] = space.upper[spike]
    return w
