"""Integral transportation feasibility through Dinic's blocking-flow max-flow."""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Mapping


class Dinic:
    """Max-flow on integer capacities; nodes are ``0..n-1``."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, c: int) -> int:
        """Add arc ``u -> v``; returns its id (the reverse arc is ``id ^ 1``)."""
        eid = len(self.to)
        self.to += [v, u]
        self.cap += [c, 0]
        self.head[u].append(eid)
        self.head[v].append(eid + 1)
        return eid

    def flow_on(self, eid: int) -> int:
        return self.cap[eid ^ 1]

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.head[u]:
                v = self.to[e]
                if self.cap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while (level := self._levels(s, t)) is not None:
            it = [0] * self.n
            while True:
                pushed = self._push(s, t, level, it)
                if not pushed:
                    break
                total += pushed
        return total

    def _push(self, s: int, t: int, level: list[int], it: list[int]) -> int:
        # iterative DFS along the level graph; returns one augmenting path's flow
        path: list[int] = []
        u = s
        while True:
            if u == t:
                f = min(self.cap[e] for e in path)
                for e in path:
                    self.cap[e] -= f
                    self.cap[e ^ 1] += f
                return f
            adj = self.head[u]
            while it[u] < len(adj):
                e = adj[it[u]]
                v = self.to[e]
                if self.cap[e] > 0 and level[v] == level[u] + 1:
                    break
                it[u] += 1
            else:
                if u == s:
                    return 0
                level[u] = -1
                e = path.pop()
                u = self.to[e ^ 1]
                it[u] += 1
                continue
            path.append(adj[it[u]])
            u = self.to[adj[it[u]]]


def transportation_feasible(
    supplies: Mapping[Hashable, int],
    demands: Mapping[Hashable, int],
    arcs: Iterable[tuple[Hashable, Hashable]],
) -> dict[tuple[Hashable, Hashable], int] | None:
    """Integral flow meeting every supply and demand exactly, or ``None``.

    Arcs are uncapacitated. The returned mapping lists arcs with positive
    flow in the order they were given; node and arc order fully determine it.
    """
    if any(v < 0 for v in supplies.values()) or any(v < 0 for v in demands.values()):
        return None
    total = sum(supplies.values())
    if total != sum(demands.values()):
        return None
    src_ids = {a: i + 1 for i, a in enumerate(supplies)}
    dst_ids = {b: len(src_ids) + i + 1 for i, b in enumerate(demands)}
    s, t = 0, len(src_ids) + len(dst_ids) + 1
    net = Dinic(t + 1)
    for a, i in src_ids.items():
        if supplies[a]:
            net.add_edge(s, i, supplies[a])
    arc_ids: list[tuple[tuple[Hashable, Hashable], int]] = []
    for a, b in arcs:
        if a in src_ids and b in dst_ids and supplies[a] and demands[b]:
            arc_ids.append(((a, b), net.add_edge(src_ids[a], dst_ids[b], min(supplies[a], demands[b]))))
    for b, i in dst_ids.items():
        if demands[b]:
            net.add_edge(i, t, demands[b])
    if total and net.max_flow(s, t) != total:
        return None
    return {arc: net.flow_on(eid) for arc, eid in arc_ids if net.flow_on(eid) > 0}
