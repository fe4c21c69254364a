"""Densest-subgraph solvers.

Three engines over the same contract, maximizing induced weight per
vertex over nonempty vertex sets:

* ``solve_exact``: parametric min-cut refinement, exact up to the float
  tolerance of the cut decisions.
* ``greedy_peel``: minimum-weighted-degree peeling, never worse than
  half the optimum.
* ``solve_bruteforce``: subset enumeration, the verification oracle for
  small graphs.

``balalau_preprocess`` shrinks a graph without changing the optimal
density and is applied inside ``solve_exact``.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import (
    Graph,
    InducedSubgraph,
    density,
    induced_subgraph,
    validate_weights,
    weighted_degrees,
)
from .maxflow import FlowNetwork

__all__ = [
    "DensestResult",
    "greedy_peel",
    "balalau_preprocess",
    "solve_bruteforce",
    "solve_exact",
]

BRUTE_FORCE_LIMIT = 25


@dataclass(frozen=True)
class DensestResult:
    """A solver's chosen vertex set with its density and run diagnostics.

    ``density_value`` is always recomputed from the returned set, so it
    matches ``density(g, w, solution)`` bit for bit. ``iterations``
    counts parametric rounds and is 0 for the non-flow solvers.
    """

    solution: frozenset[int]
    density_value: float
    iterations: int
    preprocessed_from: int
    reduced_to: int


def greedy_peel(g: Graph, w) -> DensestResult:
    """Peel a minimum-weighted-degree vertex until none remain and return
    the densest prefix of the removal sequence.

    Ties go to the smallest vertex id, so runs are deterministic. Uses a
    lazy binary heap: stale entries are skipped on pop.
    """
    if g.n == 0:
        raise ValueError("graph has no vertices")
    w = validate_weights(g, w)
    n = g.n
    wdeg = weighted_degrees(g, w).tolist()
    alive = [True] * n
    heap: list[tuple[float, int]] = [(wdeg[v], v) for v in range(n)]
    heapq.heapify(heap)

    removal_order: list[int] = []
    current_total = float(w.sum())
    best_density = -1.0
    best_removed = 0
    remaining = n
    while remaining > 0:
        d = current_total / remaining
        if d > best_density:
            best_density = d
            best_removed = len(removal_order)
        while True:
            key, v = heapq.heappop(heap)
            if alive[v] and key == wdeg[v]:
                break
        alive[v] = False
        removal_order.append(v)
        for nbr, eid in g.adj[v]:
            if alive[nbr]:
                wdeg[nbr] -= w[eid]
                current_total -= w[eid]
                heapq.heappush(heap, (wdeg[nbr], nbr))
        remaining -= 1

    dropped = set(removal_order[:best_removed])
    solution = frozenset(v for v in range(n) if v not in dropped)
    return DensestResult(solution, density(g, w, solution), 0, g.n, g.n)


def _threshold_reduce(g: Graph, w: np.ndarray, threshold: float) -> InducedSubgraph:
    """Iteratively drop vertices with weighted degree strictly below
    ``threshold``, cascading as neighbors lose weight."""
    n = g.n
    wdeg = weighted_degrees(g, w).tolist()
    alive = [True] * n
    queue = deque(v for v in range(n) if wdeg[v] < threshold)
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for nbr, eid in g.adj[v]:
            if alive[nbr]:
                was = wdeg[nbr]
                wdeg[nbr] = was - w[eid]
                if wdeg[nbr] < threshold <= was:
                    queue.append(nbr)
    keep = [v for v in range(n) if alive[v]]
    if not keep:
        # only reachable when the threshold argument is misused; keep the
        # identity reduction rather than an empty graph
        keep = list(range(n))
    return induced_subgraph(g, keep)


def balalau_preprocess(g: Graph, w) -> InducedSubgraph:
    """Reduce ``g`` by discarding every vertex whose weighted degree is
    strictly below the peeling density, repeated to a fixed point.

    Every maximum-density vertex set has all weighted degrees at least
    the optimal density, which is at least the peeling density, so the
    optimal density of the reduced graph equals the original one.
    """
    if g.n == 0:
        raise ValueError("graph has no vertices")
    w = validate_weights(g, w)
    peel = greedy_peel(g, w)
    return _threshold_reduce(g, w, peel.density_value)


_POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.int64)


def solve_bruteforce(g: Graph, w, *, chunk: int = 1 << 20) -> DensestResult:
    """Exhaustive maximizer over all nonempty vertex subsets.

    Exact by construction and independent of the flow solver; refuses
    graphs with more than 25 vertices because the enumeration is 2^n.
    """
    if g.n == 0:
        raise ValueError("graph has no vertices")
    if g.n > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute force refuses n={g.n} > {BRUTE_FORCE_LIMIT} vertices"
        )
    w = validate_weights(g, w)
    n, m = g.n, g.m
    u, v = g.u, g.v
    best_val = -1.0
    best_mask = 0
    total = 1 << n
    for lo in range(1, total, chunk):
        masks = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        induced = np.zeros(masks.shape, dtype=float)
        for eid in range(m):
            both = (masks >> u[eid]) & (masks >> v[eid]) & 1
            induced += w[eid] * both
        sizes = _POP16[masks & 0xFFFF] + _POP16[(masks >> 16) & 0xFFFF]
        dens = induced / sizes
        k = int(np.argmax(dens))
        if dens[k] > best_val:
            best_val = float(dens[k])
            best_mask = int(masks[k])
    solution = frozenset(i for i in range(n) if (best_mask >> i) & 1)
    return DensestResult(solution, density(g, w, solution), 0, g.n, g.n)


def _improving_set(g: Graph, w: np.ndarray, wdeg: np.ndarray, lam: float,
                   eps: float) -> frozenset[int]:
    """Source side of a min cut in the density-test network for guess ``lam``.

    The network routes each vertex's weighted degree from the source,
    charges ``2 * lam`` per vertex toward the sink, and lets edges carry
    their weight in both directions. A nonempty source side certifies a
    vertex set whose density exceeds ``lam``.
    """
    n = g.n
    source, sink = n, n + 1
    net = FlowNetwork(n + 2)
    charge = 2.0 * lam
    for vtx in range(n):
        if wdeg[vtx] > 0.0:
            net.add_arc(source, vtx, wdeg[vtx])
        net.add_arc(vtx, sink, charge)
    for eid, (a, b) in enumerate(g.edges):
        if w[eid] > 0.0:
            net.add_undirected(a, b, float(w[eid]))
    net.max_flow(source, sink, eps)
    side = net.source_side(source, eps)
    if sink in side:
        raise RuntimeError("max-flow failed to separate source and sink")
    return frozenset(x for x in side if x != source)


def solve_exact(g: Graph, w, *, tol: float = 0.0) -> DensestResult:
    """Exact maximum-density vertex set via parametric min-cut refinement.

    Starting from the peeling density, each round asks a min cut whether
    some set beats the current guess; the extracted set becomes the new
    guess. Guesses move through the finite set of subset densities and
    strictly increase, so the loop terminates at the optimum. ``tol``
    stops early once a round's improvement drops to
    ``tol * (1 + current density)``; the default demands strict
    improvement, which keeps the result exact up to float rounding.

    An all-zero weight vector is degenerate: every set has density 0 and
    the single vertex ``{0}`` is returned.
    """
    if g.n == 0:
        raise ValueError("graph has no vertices")
    w = validate_weights(g, w)
    if g.m == 0 or float(w.sum()) == 0.0:
        return DensestResult(frozenset({0}), 0.0, 0, g.n, g.n)

    peel = greedy_peel(g, w)
    red = _threshold_reduce(g, w, peel.density_value)
    sub = red.graph
    wsub = red.map_weights(w)
    wdeg = weighted_degrees(sub, wsub)
    scale = max(1.0, float(wdeg.max()))

    lam = peel.density_value
    best_local: frozenset[int] | None = None
    rounds = 0
    while True:
        rounds += 1
        eps = 1e-12 * max(scale, 2.0 * lam)
        cand = _improving_set(sub, wsub, wdeg, lam, eps)
        if not cand:
            break
        d = density(sub, wsub, cand)
        if d <= lam + tol * (1.0 + lam):
            break
        lam = d
        best_local = cand

    solution = red.lift(best_local) if best_local is not None else peel.solution
    return DensestResult(
        frozenset(solution), density(g, w, solution), rounds, g.n, sub.n
    )
