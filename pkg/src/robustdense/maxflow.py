"""Dinic max-flow on real-valued capacities.

Arcs live in a flat list where arc ``a`` and arc ``a ^ 1`` are mutual
residuals, which makes an undirected capacity just a pair of directed
arcs that share residual space. Capacities are doubles; ``eps`` sets
the threshold below which a residual counts as saturated, so callers
pick it relative to their capacity scale.
"""

from __future__ import annotations

from collections import deque

__all__ = ["FlowNetwork"]


class FlowNetwork:
    def __init__(self, node_count: int):
        if node_count < 2:
            raise ValueError("a flow network needs at least two nodes")
        self.node_count = node_count
        self.adj: list[list[int]] = [[] for _ in range(node_count)]
        self.to: list[int] = []
        self.cap: list[float] = []

    def add_arc(self, tail: int, head: int, capacity: float,
                reverse_capacity: float = 0.0) -> int:
        """Directed arc ``tail -> head``; returns its arc index."""
        if capacity < 0.0 or reverse_capacity < 0.0:
            raise ValueError("capacities must be nonnegative")
        a = len(self.to)
        self.to.append(head)
        self.cap.append(float(capacity))
        self.adj[tail].append(a)
        self.to.append(tail)
        self.cap.append(float(reverse_capacity))
        self.adj[head].append(a + 1)
        return a

    def add_undirected(self, a: int, b: int, capacity: float) -> int:
        return self.add_arc(a, b, capacity, capacity)

    def _levels(self, source: int, sink: int, eps: float) -> list[int] | None:
        level = [-1] * self.node_count
        level[source] = 0
        queue = deque([source])
        to, cap, adj = self.to, self.cap, self.adj
        while queue:
            x = queue.popleft()
            for a in adj[x]:
                y = to[a]
                if level[y] < 0 and cap[a] > eps:
                    level[y] = level[x] + 1
                    queue.append(y)
        return level if level[sink] >= 0 else None

    def max_flow(self, source: int, sink: int, eps: float = 0.0) -> float:
        """Push a maximum flow and leave residual capacities in place."""
        if source == sink:
            raise ValueError("source and sink coincide")
        to, cap, adj = self.to, self.cap, self.adj
        total = 0.0
        while True:
            level = self._levels(source, sink, eps)
            if level is None:
                return total
            it = [0] * self.node_count
            path: list[int] = []
            v = source
            while True:
                if v == sink:
                    push = min(cap[a] for a in path)
                    for a in path:
                        cap[a] -= push
                        cap[a ^ 1] += push
                    total += push
                    # back up to the tail of the first saturated arc
                    cut = next(i for i, a in enumerate(path) if cap[a] <= eps)
                    v = to[path[cut] ^ 1]
                    del path[cut:]
                    continue
                advanced = False
                arcs = adj[v]
                while it[v] < len(arcs):
                    a = arcs[it[v]]
                    if cap[a] > eps and level[to[a]] == level[v] + 1:
                        path.append(a)
                        v = to[a]
                        advanced = True
                        break
                    it[v] += 1
                if advanced:
                    continue
                if v == source:
                    break  # blocking flow for this phase is complete
                level[v] = -1
                a = path.pop()
                v = to[a ^ 1]
                it[v] += 1

    def source_side(self, source: int, eps: float = 0.0) -> list[int]:
        """Nodes reachable from ``source`` through positive residuals."""
        seen = [False] * self.node_count
        seen[source] = True
        out = [source]
        queue = deque([source])
        to, cap, adj = self.to, self.cap, self.adj
        while queue:
            x = queue.popleft()
            for a in adj[x]:
                y = to[a]
                if not seen[y] and cap[a] > eps:
                    seen[y] = True
                    out.append(y)
                    queue.append(y)
        return out
