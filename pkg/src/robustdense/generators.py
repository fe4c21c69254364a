"""Random instance models and the simulated sampling oracle.

Both models attach an interval weight space and a hidden true weight
vector to a graph. The planted model grows an Erdos-Renyi graph and
gives the edges inside a chosen vertex subset high intervals and high
true weights, with a separation knob ``alpha``. The knockout model
starts from a real graph, finds its unweighted densest subgraph, and
then suppresses exactly those edges' true weights while keeping the
intervals only mildly informative, so structure-only methods are drawn
to a set that is no longer dense under the true weights.

A master seed derives independent substreams per purpose (graph,
subset choice, intervals, true weights), so regenerating an instance
never perturbs sibling draws.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, WeightSpace
from .robust import SamplingOracle
from .solvers import solve_exact

__all__ = [
    "UncertainInstance",
    "gen_erdos_renyi",
    "gen_planted",
    "gen_knockout",
    "SimulatedOracle",
    "make_simulated_oracle",
]

MODEL_TAGS = ("planted", "knockout", "manual")


@dataclass(frozen=True, eq=False)
class UncertainInstance:
    """A graph with its interval weight space and (optionally hidden)
    true weights, plus the generating model's metadata."""

    graph: Graph
    space: WeightSpace
    w_true: np.ndarray | None
    planted_set: frozenset[int] | None
    model_tag: str
    seed: int | None

    def __post_init__(self):
        if self.model_tag not in MODEL_TAGS:
            raise ValueError(f"unknown model tag {self.model_tag!r}")
        if self.space.m != self.graph.m:
            raise ValueError(
                f"weight space covers {self.space.m} edges, graph has {self.graph.m}"
            )
        if self.w_true is not None:
            arr = np.array(self.w_true, dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, "w_true", arr)
            if not self.space.contains(arr):
                raise ValueError("true weight vector lies outside the weight space")
        if self.planted_set is not None:
            bad = [v for v in self.planted_set if not 0 <= v < self.graph.n]
            if bad:
                raise ValueError(f"planted vertex {bad[0]} outside [0, {self.graph.n})")


def _substreams(seed, count: int) -> list[np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.default_rng(c) for c in children]


def _uniform(rng: np.random.Generator, low, high) -> np.ndarray:
    """Uniform draws on closed intervals ``[low_i, high_i]``.

    Inverted bounds cannot arise from the models; they signal a bug, so
    they raise instead of swapping.
    """
    low = np.asarray(low, dtype=float)
    high = np.asarray(high, dtype=float)
    if np.any(low > high):
        raise ValueError("uniform bounds are inverted")
    return low + (high - low) * rng.random(np.broadcast(low, high).shape)


def gen_erdos_renyi(n: int, p: float, seed) -> Graph:
    """Erdos-Renyi graph: each unordered pair kept independently with
    probability ``p``; edge list in lexicographic order."""
    n = int(n)
    if n < 1:
        raise ValueError("need at least one vertex")
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    iu, iv = np.triu_indices(n, k=1)
    mask = rng.random(iu.size) < p
    edges = list(zip(iu[mask].tolist(), iv[mask].tolist()))
    return Graph(n, edges)


def _edge_in_set(g: Graph, members: np.ndarray) -> np.ndarray:
    if g.m == 0:
        return np.zeros(0, dtype=bool)
    return members[g.u] & members[g.v]


def gen_planted(n: int, p: float, n_prime: int, alpha: float, seed) -> UncertainInstance:
    """Planted dense-region instance.

    Edges inside the planted subset get intervals
    ``[uniform(0.1 + alpha, 1.0), 1.0]`` and true weights in
    ``[max(lower, 0.9), 1.0]``; the rest get ``[0.1,
    uniform(0.1, 1.0 - alpha)]`` and true weights in
    ``[0.1, min(upper, 0.2)]``. Larger ``alpha`` separates the two
    interval populations further; at 0.9 both collapse to points.
    """
    n_prime = int(n_prime)
    if not 0.0 <= alpha <= 0.9:
        raise ValueError("alpha must lie in [0, 0.9]")
    if not 0 <= n_prime <= n:
        raise ValueError("planted size must lie in [0, n]")
    seed = int(seed)
    rng_graph, rng_subset, rng_iv, rng_true = _substreams(seed, 4)

    g = gen_erdos_renyi(n, p, rng_graph)
    chosen = rng_subset.choice(n, size=n_prime, replace=False)
    members = np.zeros(n, dtype=bool)
    members[chosen] = True
    inside = _edge_in_set(g, members)

    m = g.m
    base = rng_iv.random(m)
    # the spans 1.0 - (0.1 + alpha) and (1.0 - alpha) - 0.1 both equal
    # 0.9 - alpha, and that form is exactly 0.0 at alpha = 0.9
    span = 0.9 - alpha
    lower = np.where(inside, (0.1 + alpha) + span * base, 0.1)
    upper = np.where(inside, 1.0, 0.1 + span * base)

    base_true = rng_true.random(m)
    lo_true = np.where(inside, np.maximum(lower, 0.9), 0.1)
    hi_true = np.where(inside, 1.0, np.minimum(upper, 0.2))
    if np.any(lo_true > hi_true):
        raise ValueError("uniform bounds are inverted")
    w_true = lo_true + (hi_true - lo_true) * base_true

    return UncertainInstance(
        graph=g,
        space=WeightSpace(lower, upper),
        w_true=w_true,
        planted_set=frozenset(int(x) for x in chosen),
        model_tag="planted",
        seed=seed,
    )


def gen_knockout(g: Graph, seed) -> UncertainInstance:
    """Knockout instance on an existing graph.

    The unweighted densest subgraph's edges get intervals
    ``[0.1, uniform(0.1, 0.9)]`` but true weights squeezed into
    ``[0.1, min(upper, 0.11)]``; all other edges get
    ``[uniform(0.2, 1.0), 1.0]`` with true weights in
    ``[max(lower, 0.99), 1.0]``.
    """
    if g.n == 0:
        raise ValueError("graph has no vertices")
    seed = int(seed)
    star = solve_exact(g, np.ones(g.m)).solution
    members = np.zeros(g.n, dtype=bool)
    members[list(star)] = True
    inside = _edge_in_set(g, members)

    rng_iv, rng_true = _substreams(seed, 2)
    m = g.m
    base = rng_iv.random(m)
    lower = np.where(inside, 0.1, 0.2 + 0.8 * base)
    upper = np.where(inside, 0.1 + 0.8 * base, 1.0)

    base_true = rng_true.random(m)
    lo_true = np.where(inside, 0.1, np.maximum(lower, 0.99))
    hi_true = np.where(inside, np.minimum(upper, 0.11), 1.0)
    if np.any(lo_true > hi_true):
        raise ValueError("uniform bounds are inverted")
    w_true = lo_true + (hi_true - lo_true) * base_true

    return UncertainInstance(
        graph=g,
        space=WeightSpace(lower, upper),
        w_true=w_true,
        planted_set=frozenset(star),
        model_tag="knockout",
        seed=seed,
    )


class SimulatedOracle(SamplingOracle):
    """Uniform sampling oracle centered on the true weights.

    Each edge draws uniformly from ``true +- min(true - lower,
    upper - true)``, the widest symmetric window inside the interval, so
    the mean is exactly the true weight and the support never leaves the
    interval. Every edge owns an independent substream keyed by
    ``(seed, edge)``: the values an edge sees do not depend on how
    queries interleave across edges.
    """

    def __init__(self, space: WeightSpace, w_true, seed):
        w_true = np.asarray(w_true, dtype=float)
        if not space.contains(w_true):
            raise ValueError("true weight vector lies outside the weight space")
        super().__init__(space.m)
        half = np.minimum(w_true - space.lower, space.upper - w_true)
        self._low = w_true - half
        self._high = w_true + half
        self._seed = seed
        self._rngs: dict[int, np.random.Generator] = {}

    def _draw(self, edge: int, count: int) -> np.ndarray:
        rng = self._rngs.get(edge)
        if rng is None:
            rng = np.random.default_rng(
                np.random.SeedSequence(self._seed, spawn_key=(edge,))
            )
            self._rngs[edge] = rng
        low, high = self._low[edge], self._high[edge]
        if high <= low:
            return np.full(count, low)
        return rng.uniform(low, high, count)


def make_simulated_oracle(inst: UncertainInstance, seed) -> SimulatedOracle:
    if inst.w_true is None:
        raise ValueError("instance has no true weight vector to simulate")
    return SimulatedOracle(inst.space, inst.w_true, int(seed))
