"""Exact IV-matching solver working on cluster counts.

Vertices inside a cluster are interchangeable, so a solution is fully
described by counts: ``i[(layer, A, B)]`` I-shapes across the macroedge
from odd cluster ``A`` to even cluster ``B``, and ``v[(layer, B, C)]``
V-shapes from even cluster ``B`` up to odd center cluster ``C``. The V totals
per interface are forced by layer cardinalities; the solver branches over how
each total is split among that interface's macroedges and checks each
odd/even layer pair as a transportation problem.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

from .flow import transportation_feasible
from .model import (
    CountInfeasible,
    IVMatching,
    LayeredGraph,
    ShapeI,
    ShapeV,
    SizeLimitError,
    VertexRef,
    _require_valid,
    expand_vertices,
    interface_v_totals,
    normalize,
)

SOLVER_MAX_VERTICES = 10**4
ORACLE_MAX_VERTICES = 16

VCounts = dict[tuple[int, int, int], int]
ICounts = dict[tuple[int, int, int], int]


class Status(str, enum.Enum):
    FEASIBLE = "FEASIBLE"
    INFEASIBLE = "INFEASIBLE"

    def __str__(self) -> str:
        return self.value


class Reason(str, enum.Enum):
    COUNTS = "COUNTS"
    CAPACITY = "CAPACITY"
    SEARCH_EXHAUSTED = "SEARCH_EXHAUSTED"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Infeasible:
    reason: Reason
    detail: str = ""

    def __bool__(self) -> bool:
        return False


@dataclass
class SolveStats:
    nodes: int = 0
    flow_calls: int = 0


@dataclass(frozen=True)
class SolveResult:
    status: Status
    certificate: IVMatching | None = None
    stats: SolveStats = field(default_factory=SolveStats)
    reason: Reason | None = None
    detail: str = ""

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE


def _infeasible(stats: SolveStats, why: Infeasible | CountInfeasible) -> SolveResult:
    if isinstance(why, CountInfeasible):
        return SolveResult(Status.INFEASIBLE, None, stats, Reason.COUNTS, why.reason)
    return SolveResult(Status.INFEASIBLE, None, stats, why.reason, why.detail)


@dataclass(frozen=True)
class OddReduction:
    """Result of stripping the last layer of an odd-layer graph.

    ``forced`` holds the V counts that the removed layer imposes, keyed like
    the solver's V counts.
    """

    graph: LayeredGraph
    forced: dict[tuple[int, int, int], int]


def preprocess_odd(g: LayeredGraph) -> OddReduction | Infeasible:
    """Remove the last layer of a graph with an odd number (>= 3) of layers.

    Every vertex of the last layer must be a V-center, so each of its
    clusters ``C`` takes ``2|C|`` vertices from its macro-matched cluster
    below. Fails when a non-empty last cluster has no such partner or the
    partner is too small.
    """
    ell = g.num_layers
    if ell < 3 or ell % 2 == 0:
        raise ValueError(f"preprocess_odd needs an odd number of layers >= 3, got {ell}")
    below = {jj: j for k, j, jj in g.macroedges if k == ell - 1}
    sizes = [list(layer) for layer in g.layer_sizes[:-1]]
    forced: dict[tuple[int, int, int], int] = {}
    for c_idx, c in enumerate(g.layer_sizes[-1], start=1):
        if c == 0:
            continue
        if c_idx not in below:
            return Infeasible(Reason.CAPACITY, f"layer {ell} cluster {c_idx} has no macroedge down")
        b_idx = below[c_idx]
        if sizes[-1][b_idx - 1] < 2 * c:
            return Infeasible(
                Reason.CAPACITY,
                f"layer {ell - 1} cluster {b_idx} cannot host {c} V-shapes into cluster {c_idx}",
            )
        sizes[-1][b_idx - 1] -= 2 * c
        forced[(ell - 1, b_idx, c_idx)] = c
    macros = tuple(e for e in g.macroedges if e[0] < ell - 1)
    return OddReduction(LayeredGraph(tuple(map(tuple, sizes)), macros), forced)


def _pair_problem(g: LayeredGraph, p: int, v_in: dict[int, int], v_out: dict[int, int]):
    """Supplies, demands and arcs for layers ``2p - 1`` and ``2p``."""
    lo, hi = 2 * p - 1, 2 * p
    supplies = {a: s - v_in.get(a, 0) for a, s in enumerate(g.layer_sizes[lo - 1], start=1)}
    demands = {b: s - 2 * v_out.get(b, 0) for b, s in enumerate(g.layer_sizes[hi - 1], start=1)}
    arcs = [(a, b) for k, a, b in g.macroedges if k == lo]
    return supplies, demands, arcs


def transport_pair(g: LayeredGraph, p: int, v_in: dict[int, int], v_out: dict[int, int],
                   stats: SolveStats | None = None) -> ICounts | None:
    supplies, demands, arcs = _pair_problem(g, p, v_in, v_out)
    if stats is not None:
        stats.flow_calls += 1
    flow = transportation_feasible(supplies, demands, arcs)
    if flow is None:
        return None
    return {(2 * p - 1, a, b): f for (a, b), f in flow.items()}


@dataclass(frozen=True)
class Distribution:
    """V counts per macroedge and the I counts that complete them."""

    v: VCounts
    i: ICounts


def branch_v_distribution(
    g: LayeredGraph,
    totals: tuple[int, ...],
    stats: SolveStats | None = None,
) -> Distribution | Infeasible:
    """Search for V counts realising ``totals`` that every layer pair accepts.

    ``g`` must have an even number of layers. Interfaces are filled in
    increasing order, macroedges of an interface in lexicographic order and
    values from large to small; the first assignment whose layer pairs are
    all transportation-feasible is returned.
    """
    ell = g.num_layers
    if ell % 2:
        raise ValueError("branch_v_distribution needs an even number of layers")
    big_k = ell // 2
    if len(totals) != big_k - 1:
        raise ValueError(f"expected {big_k - 1} interface totals, got {len(totals)}")
    stats = stats if stats is not None else SolveStats()

    # per interface k: sorted (B, C, bound)
    pairs: list[list[tuple[int, int, int]]] = [[] for _ in range(big_k)]
    for k, b, c in g.macroedges:
        if k % 2 == 0:
            bound = min(g.cluster_size(k + 1, c), g.cluster_size(k, b) // 2)
            pairs[k // 2].append((b, c, bound))
    for k in range(1, big_k):
        pairs[k].sort()
        if sum(bd for _, _, bd in pairs[k]) < totals[k - 1]:
            return Infeasible(Reason.CAPACITY, f"interface {k} cannot hold {totals[k - 1]} V-shapes")

    # arcs into each even cluster, for a cheap demand-vs-supply cut
    feeders: dict[tuple[int, int], list[int]] = defaultdict(list)
    for k, a, b in g.macroedges:
        if k % 2 == 1:
            feeders[(k + 1, b)].append(a)

    failed: set[tuple[int, tuple[int, ...]]] = set()

    def search(k: int, v_in: dict[int, int]) -> tuple[VCounts, ICounts] | None:
        # layers 2k-1 (with v_in) and 2k; interface k above them
        key = (k, tuple(sorted(v_in.items())))
        if key in failed:
            return None
        if k == big_k:
            flows = transport_pair(g, k, v_in, {}, stats)
            if flows is None:
                failed.add(key)
                return None
            return {}, flows
        even = 2 * k
        supply = {a: s - v_in.get(a, 0) for a, s in enumerate(g.layer_sizes[even - 2], start=1)}
        items = pairs[k]
        suffix = [0] * (len(items) + 1)
        for idx in range(len(items) - 1, -1, -1):
            suffix[idx] = suffix[idx + 1] + items[idx][2]
        chosen: list[int] = []

        def compose(idx: int, left: int):
            if idx == len(items):
                v_out = {b: x for (b, _, _), x in zip(items, chosen) if x}
                flows = transport_pair(g, k, v_in, v_out, stats)
                if flows is None:
                    return None
                nxt = {c: x for (_, c, _), x in zip(items, chosen) if x}
                rest = search(k + 1, nxt)
                if rest is None:
                    return None
                v_rest, i_rest = rest
                v_here = {(even, b, c): x for (b, c, _), x in zip(items, chosen) if x}
                return {**v_here, **v_rest}, {**flows, **i_rest}
            b, c, bound = items[idx]
            hi = min(bound, left)
            lo = max(0, left - suffix[idx + 1])
            for x in range(hi, lo - 1, -1):
                stats.nodes += 1
                demand = g.cluster_size(even, b) - 2 * x
                if demand > sum(supply[a] for a in feeders.get((even, b), ())):
                    continue
                chosen.append(x)
                found = compose(idx + 1, left - x)
                chosen.pop()
                if found is not None:
                    return found
            return None

        found = compose(0, totals[k - 1])
        if found is None:
            failed.add(key)
        return found

    found = search(1, {})
    if found is None:
        return Infeasible(Reason.SEARCH_EXHAUSTED, "no V distribution passes every layer pair")
    return Distribution(*found)


def reconstruct_certificate(g: LayeredGraph, v: VCounts, i: ICounts) -> IVMatching:
    """Turn counts into concrete shapes, filling every cluster lowest index first.

    V-shapes are placed before I-shapes, so inside each cluster the V arms
    (or V centers) take the smallest indices.
    """
    nxt: dict[tuple[int, int], int] = defaultdict(lambda: 1)

    def take(layer: int, cluster: int) -> VertexRef:
        idx = nxt[(layer, cluster)]
        nxt[(layer, cluster)] = idx + 1
        return VertexRef(layer, cluster, idx)

    v_shapes = []
    for (layer, b, c), count in sorted(v.items()):
        for _ in range(count):
            left, right = take(layer, b), take(layer, b)
            v_shapes.append(ShapeV(take(layer + 1, c), left, right))
    i_shapes = []
    for (layer, a, b), count in sorted(i.items()):
        for _ in range(count):
            i_shapes.append(ShapeI(take(layer, a), take(layer + 1, b)))
    return IVMatching(tuple(i_shapes), tuple(v_shapes))


def _restore_clusters(m: IVMatching, old: list[list[int]]) -> IVMatching:
    def fix(u: VertexRef) -> VertexRef:
        return VertexRef(u.layer, old[u.layer - 1][u.cluster - 1], u.index)

    return IVMatching(
        tuple(ShapeI(fix(s.a), fix(s.b)) for s in m.i_shapes),
        tuple(ShapeV(fix(s.center), fix(s.left), fix(s.right)) for s in m.v_shapes),
    )


def solve_two_layers(g: LayeredGraph, stats: SolveStats | None = None) -> SolveResult:
    """Two layers: a perfect bipartite matching, decided as one transportation problem."""
    if g.num_layers != 2:
        raise ValueError("solve_two_layers needs exactly two layers")
    stats = stats if stats is not None else SolveStats()
    flows = transport_pair(g, 1, {}, {}, stats)
    if flows is None:
        return SolveResult(Status.INFEASIBLE, None, stats, Reason.SEARCH_EXHAUSTED,
                           "no perfect assignment between the two layers")
    return SolveResult(Status.FEASIBLE, reconstruct_certificate(g, {}, flows), stats)


def solve(g: LayeredGraph, max_vertices: int = SOLVER_MAX_VERTICES) -> SolveResult:
    """Decide whether ``g`` has an IV-matching and build a canonical one if so."""
    _require_valid(g)
    if g.total_vertices > max_vertices:
        raise SizeLimitError(f"{g.total_vertices} vertices exceeds the solver cap of {max_vertices}")
    stats = SolveStats()
    ng, old = normalize(g)
    ell = ng.num_layers
    if ell <= 1:
        if ng.total_vertices:
            return _infeasible(stats, CountInfeasible(0, "a single layer cannot be covered"))
        return SolveResult(Status.FEASIBLE, IVMatching(), stats)

    work, forced = ng, {}
    if ell % 2:
        reduced = preprocess_odd(ng)
        if not reduced:
            return _infeasible(stats, reduced)
        work, forced = reduced.graph, reduced.forced

    totals = interface_v_totals(work)
    if isinstance(totals, CountInfeasible):
        return _infeasible(stats, totals)

    if work.num_layers == 2:
        flows = transport_pair(work, 1, {}, {}, stats)
        if flows is None:
            return _infeasible(stats, Infeasible(Reason.SEARCH_EXHAUSTED, "no perfect assignment between layers 1 and 2"))
        v, i = {}, flows
    else:
        dist = branch_v_distribution(work, totals, stats)
        if not dist:
            return _infeasible(stats, dist)
        v, i = dist.v, dist.i
    cert = reconstruct_certificate(ng, {**v, **forced}, i)
    return SolveResult(Status.FEASIBLE, _restore_clusters(cert, old), stats)


def brute_force_iv(g: LayeredGraph, max_vertices: int = ORACLE_MAX_VERTICES) -> SolveResult:
    """Exhaustive search over explicit shapes; a test oracle for tiny graphs."""
    _require_valid(g)
    if g.total_vertices > max_vertices:
        raise SizeLimitError(f"brute force is limited to {max_vertices} vertices")
    stats = SolveStats()
    adj = expand_vertices(g)
    order = list(g.vertices())
    covered: set[VertexRef] = set()
    i_shapes: list[ShapeI] = []
    v_shapes: list[ShapeV] = []

    def shapes_through(u: VertexRef):
        nbrs = adj.get(u, ())
        if u.layer % 2:
            for w in nbrs:
                if w.layer == u.layer + 1 and w not in covered:
                    yield ShapeI(u, w)
            if u.layer >= 3:
                down = [w for w in nbrs if w.layer == u.layer - 1 and w not in covered]
                for l, r in combinations(down, 2):
                    yield ShapeV(u, l, r)
        else:
            for w in nbrs:
                if w.layer == u.layer - 1 and w not in covered:
                    yield ShapeI(w, u)
            for c in nbrs:
                if c.layer == u.layer + 1 and c not in covered:
                    for w in adj[c]:
                        if w.layer == u.layer and w != u and w not in covered:
                            yield ShapeV(c, min(u, w), max(u, w))

    def search(pos: int) -> bool:
        while pos < len(order) and order[pos] in covered:
            pos += 1
        if pos == len(order):
            return True
        for shape in list(shapes_through(order[pos])):
            stats.nodes += 1
            covered.update(shape)
            (i_shapes if isinstance(shape, ShapeI) else v_shapes).append(shape)
            if search(pos + 1):
                return True
            (i_shapes if isinstance(shape, ShapeI) else v_shapes).pop()
            covered.difference_update(shape)
        return False

    if search(0):
        return SolveResult(Status.FEASIBLE, IVMatching(tuple(i_shapes), tuple(v_shapes)), stats)
    return SolveResult(Status.INFEASIBLE, None, stats, Reason.SEARCH_EXHAUSTED, "exhaustive search failed")
