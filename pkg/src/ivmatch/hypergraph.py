"""Three-dimensional matching instances and an exhaustive solver for them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .model import SizeLimitError

Triple = tuple[int, int, int]

ORACLE_MAX_N = 10
ORACLE_MAX_M = 40


@dataclass(frozen=True)
class TripartiteHypergraph:
    """Partites ``X``, ``Y``, ``Z`` of size ``n`` each and hyperedges over them.

    Hyperedges are 1-based ``(x, y, z)`` triples kept in input order; the
    order is significant for the reduction's cluster numbering.
    """

    n: int
    edges: tuple[Triple, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"negative partite size {self.n}")
        edges = tuple(tuple(int(c) for c in e) for e in self.edges)
        seen: set[Triple] = set()
        for e in edges:
            if len(e) != 3 or not all(1 <= c <= self.n for c in e):
                raise ValueError(f"hyperedge {e} is not a triple over 1..{self.n}")
            if e in seen:
                raise ValueError(f"duplicate hyperedge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)


PerfectMatching3DM = frozenset


def verify_3dm_matching(h: TripartiteHypergraph, s: Iterable[Triple]) -> bool:
    chosen = [tuple(e) for e in s]
    if len(chosen) != h.n or len(set(chosen)) != len(chosen):
        return False
    edges = set(h.edges)
    if any(e not in edges for e in chosen):
        return False
    full = set(range(1, h.n + 1))
    return all({e[c] for e in chosen} == full for c in range(3))


def brute_force_3dm(h: TripartiteHypergraph) -> frozenset[Triple] | None:
    """Find a perfect matching by backtracking, or return ``None``.

    Covers ``x = 1..n`` in order, trying the hyperedges through ``x`` in
    input order, so the answer is deterministic.
    """
    if h.n > ORACLE_MAX_N or h.m > ORACLE_MAX_M:
        raise SizeLimitError(f"3DM oracle is limited to n <= {ORACLE_MAX_N}, m <= {ORACLE_MAX_M}")
    by_x: list[list[Triple]] = [[] for _ in range(h.n + 1)]
    for e in h.edges:
        by_x[e[0]].append(e)
    used_y: set[int] = set()
    used_z: set[int] = set()
    chosen: list[Triple] = []

    def extend(x: int) -> bool:
        if x > h.n:
            return True
        for e in by_x[x]:
            _, y, z = e
            if y in used_y or z in used_z:
                continue
            used_y.add(y)
            used_z.add(z)
            chosen.append(e)
            if extend(x + 1):
                return True
            chosen.pop()
            used_y.discard(y)
            used_z.discard(z)
        return False

    return frozenset(chosen) if extend(1) else None
