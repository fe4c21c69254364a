"""Core graph, weight, and density primitives.

Vertices are dense integers ``0..n-1`` and edges are indexed by their
position in the edge list, so per-edge quantities (weights, interval
bounds) live in plain numpy arrays aligned with ``Graph.edges``.
All types are immutable after construction; the operations are pure
functions and safe to use concurrently.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "Graph",
    "WeightSpace",
    "InducedSubgraph",
    "validate_weights",
    "validate_space",
    "induced_weight",
    "density",
    "weighted_degree",
    "weighted_degrees",
    "induced_subgraph",
    "largest_connected_component",
]


class Graph:
    """Simple undirected graph: no self-loops, no duplicate edges.

    Endpoints are canonicalized to ``u < v`` but edge ids keep the
    construction order, so callers can index weight arrays by position
    in ``edges``.
    """

    __slots__ = ("n", "edges", "u", "v", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) has an endpoint outside [0, {n})")
            if a > b:
                a, b = b, a
            if (a, b) in seen:
                raise ValueError(f"duplicate edge ({a}, {b})")
            seen.add((a, b))
            canon.append((a, b))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(canon)
        m = len(canon)
        self.u = np.fromiter((e[0] for e in canon), dtype=np.intp, count=m)
        self.v = np.fromiter((e[1] for e in canon), dtype=np.intp, count=m)
        self.u.setflags(write=False)
        self.v.setflags(write=False)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for eid, (a, b) in enumerate(canon):
            adj[a].append((b, eid))
            adj[b].append((a, eid))
        # per-vertex tuples of (neighbor, edge id)
        self.adj: tuple[tuple[tuple[int, int], ...], ...] = tuple(
            tuple(nbrs) for nbrs in adj
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True, eq=False)
class WeightSpace:
    """Per-edge closed intervals ``[lower_e, upper_e]`` of admissible weights."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.array(self.lower, dtype=float)
        hi = np.array(self.upper, dtype=float)
        if lo.ndim != 1 or lo.shape != hi.shape:
            raise ValueError("interval bounds must be 1-d arrays of equal length")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ValueError("interval bounds must be finite")
        if lo.size and float(lo.min()) < 0.0:
            raise ValueError("lower bounds must be nonnegative")
        bad = np.nonzero(lo > hi)[0]
        if bad.size:
            e = int(bad[0])
            raise ValueError(
                f"edge {e}: lower bound {lo[e]} exceeds upper bound {hi[e]}"
            )
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def m(self) -> int:
        return int(self.lower.size)

    @classmethod
    def degenerate(cls, w) -> "WeightSpace":
        """The single-point space with ``lower == upper == w``."""
        arr = np.asarray(w, dtype=float)
        return cls(arr.copy(), arr.copy())

    def contains(self, w) -> bool:
        arr = np.asarray(w, dtype=float)
        if arr.shape != self.lower.shape:
            raise ValueError(
                f"weight vector has shape {arr.shape}, expected {self.lower.shape}"
            )
        return bool(np.all(self.lower <= arr) and np.all(arr <= self.upper))

    def widths(self) -> np.ndarray:
        return self.upper - self.lower


def validate_weights(g: Graph, w) -> np.ndarray:
    """Coerce ``w`` to a float array aligned with ``g`` and sanity-check it."""
    arr = np.asarray(w, dtype=float)
    if arr.shape != (g.m,):
        raise ValueError(f"weight vector has shape {arr.shape}, expected ({g.m},)")
    if not np.all(np.isfinite(arr)):
        raise ValueError("weights must be finite")
    if arr.size and float(arr.min()) < 0.0:
        raise ValueError("weights must be nonnegative")
    return arr


def validate_space(g: Graph, space: WeightSpace) -> WeightSpace:
    if space.m != g.m:
        raise ValueError(f"weight space covers {space.m} edges, graph has {g.m}")
    return space


def _member_mask(n: int, s: Iterable[int]) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    ids = np.fromiter((int(x) for x in s), dtype=np.intp)
    if ids.size:
        if int(ids.min()) < 0 or int(ids.max()) >= n:
            raise ValueError(f"vertex id outside [0, {n})")
        mask[ids] = True
    return mask


def induced_weight(g: Graph, w, s: Iterable[int]) -> float:
    """Total weight of the edges with both endpoints in ``s``."""
    w = validate_weights(g, w)
    mask = _member_mask(g.n, s)
    if g.m == 0:
        return 0.0
    both = mask[g.u] & mask[g.v]
    return float(w[both].sum())


def density(g: Graph, w, s: Iterable[int]) -> float:
    """Induced weight of ``s`` divided by ``|s|``; undefined for the empty set."""
    members = frozenset(int(x) for x in s)
    if not members:
        raise ValueError("density of the empty set is undefined")
    return induced_weight(g, w, members) / len(members)


def weighted_degree(g: Graph, w, v: int) -> float:
    """Sum of the weights of the edges incident to ``v``."""
    w = validate_weights(g, w)
    v = int(v)
    if not 0 <= v < g.n:
        raise ValueError(f"vertex id {v} outside [0, {g.n})")
    return float(sum(w[eid] for _, eid in g.adj[v]))


def weighted_degrees(g: Graph, w) -> np.ndarray:
    """All weighted degrees at once, as a length-``n`` float array."""
    w = validate_weights(g, w)
    deg = np.zeros(g.n, dtype=float)
    if g.m:
        np.add.at(deg, g.u, w)
        np.add.at(deg, g.v, w)
    return deg


@dataclass(frozen=True, eq=False)
class InducedSubgraph:
    """A vertex-induced subgraph plus index maps back to the parent graph.

    ``vertex_ids[new_vertex]`` and ``edge_ids[new_edge]`` give the parent
    ids; both are sorted so the reduction is deterministic.
    """

    graph: Graph
    vertex_ids: np.ndarray
    edge_ids: np.ndarray

    def map_weights(self, w) -> np.ndarray:
        return np.asarray(w, dtype=float)[self.edge_ids]

    def lift(self, s: Iterable[int]) -> frozenset[int]:
        """Translate a vertex set of the subgraph into parent-graph ids."""
        ids = self.vertex_ids
        return frozenset(int(ids[int(v)]) for v in s)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> InducedSubgraph:
    keep = sorted({int(v) for v in vertices})
    if keep and (keep[0] < 0 or keep[-1] >= g.n):
        raise ValueError(f"vertex id outside [0, {g.n})")
    old_to_new = {old: new for new, old in enumerate(keep)}
    edges = []
    edge_ids = []
    for eid, (a, b) in enumerate(g.edges):
        if a in old_to_new and b in old_to_new:
            edges.append((old_to_new[a], old_to_new[b]))
            edge_ids.append(eid)
    return InducedSubgraph(
        Graph(len(keep), edges),
        np.asarray(keep, dtype=np.intp),
        np.asarray(edge_ids, dtype=np.intp),
    )


def largest_connected_component(g: Graph) -> InducedSubgraph:
    """Induced subgraph on the largest component; earliest one wins ties."""
    if g.n == 0:
        raise ValueError("graph has no vertices")
    seen = [False] * g.n
    best: list[int] = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for nbr, _ in g.adj[x]:
                if not seen[nbr]:
                    seen[nbr] = True
                    comp.append(nbr)
                    queue.append(nbr)
        if len(comp) > len(best):
            best = comp
    return induced_subgraph(g, best)
