"""Shared helpers: seeded random instances and enumeration oracles.

The oracles here are intentionally independent of the package solvers:
densities are recomputed from scratch over explicit subset enumerations
so they can vouch for the solver outputs.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from robustdense import Graph


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = [pq for pq in pairs if rng.random() < p]
    return Graph(n, keep)


def random_instance(seed: int, n_max: int = 10):
    """One (graph, weights) pair from the standard fuzz corpus recipe:
    n in [2, n_max], edge probability cycling {0.3, 0.6, 0.9},
    uniform [0, 1] weights."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    n = int(rng.integers(2, n_max + 1))
    p = (0.3, 0.6, 0.9)[seed % 3]
    g = random_graph(rng, n, p)
    w = rng.random(g.m)
    return g, w


def subset_density(g: Graph, w, subset) -> float:
    """Density by direct summation over the edge list."""
    members = set(subset)
    total = 0.0
    for eid, (a, b) in enumerate(g.edges):
        if a in members and b in members:
            total += float(w[eid])
    return total / len(members)


def enumerate_optimum(g: Graph, w) -> tuple[float, frozenset[int]]:
    """Best density over all nonempty subsets, by explicit enumeration."""
    best = -1.0
    best_set = frozenset()
    vertices = list(range(g.n))
    for size in range(1, g.n + 1):
        for combo in itertools.combinations(vertices, size):
            d = subset_density(g, w, combo)
            if d > best:
                best = d
                best_set = frozenset(combo)
    return best, best_set


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


@pytest.fixture
def triangle() -> Graph:
    return Graph(3, [(0, 1), (0, 2), (1, 2)])
