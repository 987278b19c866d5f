"""Layered graphs, IV-matchings, structural validation and the certificate verifier.

Vertices are addressed as ``(layer, cluster, index)`` triples, all 1-based.
A layered graph is described at cluster granularity only: every layer is a
sequence of cluster sizes, and a macroedge ``(k, j, jj)`` joins cluster ``j``
of layer ``k`` to cluster ``jj`` of layer ``k + 1`` with a complete bipartite
connection.
"""

from __future__ import annotations

import enum
import functools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

MAX_LAYERS = 64
MAX_VERTICES = 10**6
DEFAULT_EDGE_CAP = 10**7


class SizeLimitError(ValueError):
    """An instance exceeds a configured size cap."""


class ViolationCode(str, enum.Enum):
    MATCHING_VIOLATION = "MATCHING_VIOLATION"
    BAD_CLUSTER_REF = "BAD_CLUSTER_REF"
    DUPLICATE_MACROEDGE = "DUPLICATE_MACROEDGE"
    UNCOVERED_VERTEX = "UNCOVERED_VERTEX"
    DOUBLE_COVER = "DOUBLE_COVER"
    BAD_SHAPE = "BAD_SHAPE"
    OUT_OF_RANGE_VERTEX = "OUT_OF_RANGE_VERTEX"
    CLOSURE_VIOLATION = "CLOSURE_VIOLATION"

    def __str__(self) -> str:
        return self.value


class VertexRef(NamedTuple):
    layer: int
    cluster: int
    index: int

    def __str__(self) -> str:
        return f"{self.layer} {self.cluster} {self.index}"


class ShapeI(NamedTuple):
    """Pair of an odd-layer vertex ``a`` and an even-layer vertex ``b`` one layer up."""

    a: VertexRef
    b: VertexRef


class ShapeV(NamedTuple):
    """Odd-layer ``center`` joined to two vertices of one cluster in the layer below."""

    center: VertexRef
    left: VertexRef
    right: VertexRef


@dataclass(frozen=True)
class LayeredGraph:
    """A layered graph given by cluster sizes and macroedges.

    ``layer_sizes[k - 1][j - 1]`` is the size of cluster ``j`` in layer ``k``.
    Macroedges are kept as a sorted tuple; duplicates are preserved so that
    :func:`validate_graph` can report them.
    """

    layer_sizes: tuple[tuple[int, ...], ...]
    macroedges: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self) -> None:
        layers = tuple(tuple(int(s) for s in layer) for layer in self.layer_sizes)
        for k, layer in enumerate(layers, start=1):
            for j, s in enumerate(layer, start=1):
                if s < 0:
                    raise ValueError(f"negative size {s} for cluster {j} of layer {k}")
        macros = tuple(sorted(tuple(int(x) for x in e) for e in self.macroedges))
        for e in macros:
            if len(e) != 3:
                raise ValueError(f"macroedge must be a (layer, cluster, cluster) triple: {e}")
        object.__setattr__(self, "layer_sizes", layers)
        object.__setattr__(self, "macroedges", macros)

    @property
    def num_layers(self) -> int:
        return len(self.layer_sizes)

    def layer_total(self, k: int) -> int:
        return sum(self.layer_sizes[k - 1])

    @property
    def total_vertices(self) -> int:
        return sum(sum(layer) for layer in self.layer_sizes)

    def cluster_size(self, layer: int, cluster: int) -> int:
        return self.layer_sizes[layer - 1][cluster - 1]

    def has_vertex(self, v: VertexRef) -> bool:
        if not 1 <= v.layer <= self.num_layers:
            return False
        layer = self.layer_sizes[v.layer - 1]
        return 1 <= v.cluster <= len(layer) and 1 <= v.index <= layer[v.cluster - 1]

    def vertices(self) -> Iterable[VertexRef]:
        for k, layer in enumerate(self.layer_sizes, start=1):
            for j, s in enumerate(layer, start=1):
                for i in range(1, s + 1):
                    yield VertexRef(k, j, i)

    def macro_set(self) -> frozenset[tuple[int, int, int]]:
        return frozenset(self.macroedges)


@dataclass(frozen=True)
class IVMatching:
    """A candidate IV-matching certificate.

    Shapes are stored canonically: sorted, with the two arms of every V
    ordered. Repeated shapes are kept (the verifier reports them).
    """

    i_shapes: tuple[ShapeI, ...] = ()
    v_shapes: tuple[ShapeV, ...] = ()

    def __post_init__(self) -> None:
        ii = tuple(sorted(ShapeI(VertexRef(*s[0]), VertexRef(*s[1])) for s in self.i_shapes))
        vv = []
        for s in self.v_shapes:
            c, l, r = (VertexRef(*x) for x in s)
            if r < l:
                l, r = r, l
            vv.append(ShapeV(c, l, r))
        object.__setattr__(self, "i_shapes", ii)
        object.__setattr__(self, "v_shapes", tuple(sorted(vv)))

    def __len__(self) -> int:
        return len(self.i_shapes) + len(self.v_shapes)


class Violation(NamedTuple):
    code: ViolationCode
    locus: str


@dataclass(frozen=True)
class Report:
    """Outcome of :func:`validate_graph` or :func:`verify_matching`."""

    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def codes(self) -> frozenset[ViolationCode]:
        return frozenset(v.code for v in self.violations)

    def lines(self) -> list[str]:
        return [f"{v.code} {v.locus}" for v in self.violations]


ValidationReport = Report
VerifyReport = Report


def _check_limits(g: LayeredGraph) -> None:
    if g.num_layers > MAX_LAYERS:
        raise SizeLimitError(f"{g.num_layers} layers exceeds the maximum of {MAX_LAYERS}")
    if g.total_vertices > MAX_VERTICES:
        raise SizeLimitError(f"{g.total_vertices} vertices exceeds the maximum of {MAX_VERTICES}")


@functools.lru_cache(maxsize=256)
def validate_graph(g: LayeredGraph) -> ValidationReport:
    """Check the structural invariants of a layered graph.

    Reports out-of-range macroedge endpoints, duplicate macroedges and, for
    every even ``k``, macroedges between layers ``k`` and ``k + 1`` that do
    not form a matching on clusters. Violations come out ordered by layer,
    then by cluster indices.
    """
    _check_limits(g)
    found: list[tuple[tuple, Violation]] = []
    ell = g.num_layers
    counts = Counter(g.macroedges)
    good: list[tuple[int, int, int]] = []
    for e, c in sorted(counts.items()):
        k, j, jj = e
        if not 1 <= k < ell:
            found.append(((k, j, jj, 0), Violation(
                ViolationCode.BAD_CLUSTER_REF,
                f"macro {k} {j} {jj}: no layer pair ({k}, {k + 1})")))
            continue
        bad = False
        if not 1 <= j <= len(g.layer_sizes[k - 1]):
            found.append(((k, j, jj, 0), Violation(
                ViolationCode.BAD_CLUSTER_REF,
                f"macro {k} {j} {jj}: layer {k} has no cluster {j}")))
            bad = True
        if not 1 <= jj <= len(g.layer_sizes[k]):
            found.append(((k, j, jj, 1), Violation(
                ViolationCode.BAD_CLUSTER_REF,
                f"macro {k} {j} {jj}: layer {k + 1} has no cluster {jj}")))
            bad = True
        if c > 1:
            found.append(((k, j, jj, 2), Violation(
                ViolationCode.DUPLICATE_MACROEDGE,
                f"macro {k} {j} {jj}: appears {c} times")))
        if not bad:
            good.append(e)

    lower: dict[tuple[int, int], list[int]] = defaultdict(list)
    upper: dict[tuple[int, int], list[int]] = defaultdict(list)
    for k, j, jj in good:
        if k % 2 == 0:
            lower[(k, j)].append(jj)
            upper[(k + 1, jj)].append(j)
    for (k, j), partners in lower.items():
        if len(partners) > 1:
            found.append(((k, j, 0, 3), Violation(
                ViolationCode.MATCHING_VIOLATION,
                f"layer {k} cluster {j}: macroedges to clusters {sorted(partners)} of layer {k + 1}")))
    for (k, jj), partners in upper.items():
        if len(partners) > 1:
            found.append(((k - 1, 0, jj, 3), Violation(
                ViolationCode.MATCHING_VIOLATION,
                f"layer {k} cluster {jj}: macroedges from clusters {sorted(partners)} of layer {k - 1}")))
    found.sort(key=lambda t: t[0])
    return Report(tuple(v for _, v in found))


def _require_valid(g: LayeredGraph) -> None:
    report = validate_graph(g)
    if not report.ok:
        raise ValueError("invalid layered graph: " + "; ".join(report.lines()))


def _shape_problem(g: LayeredGraph, macros: frozenset, shape: ShapeI | ShapeV) -> str | None:
    if isinstance(shape, ShapeI):
        a, b = shape
        if a.layer % 2 == 0:
            return "lower end is not on an odd layer"
        if b.layer != a.layer + 1:
            return "ends are not on consecutive layers"
        if (a.layer, a.cluster, b.cluster) not in macros:
            return "no macroedge joins the clusters"
        return None
    c, l, r = shape
    if c.layer % 2 == 0 or c.layer < 3:
        return "center is not on an odd layer above layer 1"
    if l.layer != c.layer - 1 or r.layer != c.layer - 1:
        return "arms are not on the layer below the center"
    if l == r:
        return "arms coincide"
    if l.cluster != r.cluster:
        return "arms lie in different clusters"
    if (l.layer, l.cluster, c.cluster) not in macros:
        return "no macroedge joins the clusters"
    return None


def _fmt_shape(shape: ShapeI | ShapeV) -> str:
    if isinstance(shape, ShapeI):
        return f"I {shape.a}  {shape.b}"
    return f"V {shape.center}  {shape.left}  {shape.right}"


def verify_matching(g: LayeredGraph, m: IVMatching) -> VerifyReport:
    """Check that ``m`` is an IV-matching of ``g``.

    Every shape must be well formed against ``g`` and every vertex of ``g``
    must be covered by exactly one well-formed shape. Uncovered vertices of
    the last layer are reported as ``CLOSURE_VIOLATION``.
    """
    _require_valid(g)
    macros = g.macro_set()
    found: list[tuple[tuple, Violation]] = []
    cover: Counter[VertexRef] = Counter()
    shapes: list[ShapeI | ShapeV] = [*m.i_shapes, *m.v_shapes]
    for shape in shapes:
        missing = [v for v in shape if not g.has_vertex(v)]
        if missing:
            for v in missing:
                found.append((tuple(v) + (0,), Violation(
                    ViolationCode.OUT_OF_RANGE_VERTEX, f"{v} in {_fmt_shape(shape)}")))
            continue
        problem = _shape_problem(g, macros, shape)
        if problem is not None:
            found.append((tuple(shape[0]) + (1,), Violation(
                ViolationCode.BAD_SHAPE, f"{_fmt_shape(shape)}: {problem}")))
            continue
        cover.update(shape)
    ell = g.num_layers
    for v in g.vertices():
        c = cover[v]
        if c == 0:
            code = ViolationCode.CLOSURE_VIOLATION if v.layer == ell else ViolationCode.UNCOVERED_VERTEX
            found.append((tuple(v) + (2,), Violation(code, f"{v}: not covered")))
        elif c > 1:
            found.append((tuple(v) + (2,), Violation(
                ViolationCode.DOUBLE_COVER, f"{v}: covered {c} times")))
    found.sort(key=lambda t: t[0])
    return Report(tuple(v for _, v in found))


@dataclass(frozen=True)
class CountInfeasible:
    """Layer cardinalities admit no IV-matching; ``interface`` is where it fails."""

    interface: int
    reason: str

    def __bool__(self) -> bool:
        return False


def totals_from_layer_counts(counts: Sequence[int]) -> tuple[int, ...] | CountInfeasible:
    """Forced V-shape counts from per-layer vertex totals alone."""
    ell = len(counts)
    if ell <= 1:
        if ell == 1 and counts[0] > 0:
            return CountInfeasible(0, "a single layer cannot be covered")
        return ()
    big_k = ell // 2
    totals: list[int] = []
    prev = 0
    for k in range(1, big_k + 1):
        i_k = counts[2 * k - 2] - prev
        if i_k < 0:
            return CountInfeasible(k, f"layer {2 * k - 1} has fewer vertices than incoming V-centers")
        rest = counts[2 * k - 1] - i_k
        if rest < 0:
            return CountInfeasible(k, f"layer {2 * k} is too small for the I-shapes from below")
        if rest % 2:
            return CountInfeasible(k, f"odd number of V-arms left in layer {2 * k}")
        totals.append(rest // 2)
        prev = rest // 2
    if ell % 2 == 0:
        if totals[-1] != 0:
            return CountInfeasible(big_k, f"layer {ell} has uncovered vertices")
        return tuple(totals[:-1])
    if totals[-1] != counts[-1]:
        return CountInfeasible(big_k, f"V-shapes into layer {ell} do not match its size")
    return tuple(totals)


def interface_v_totals(g: LayeredGraph) -> tuple[int, ...] | CountInfeasible:
    """Number of V-shapes every IV-matching of ``g`` places at each interface.

    Interface ``k`` sits between layers ``2k`` and ``2k + 1``. Only interfaces
    inside the graph are returned, so a four-layer graph yields one value.
    """
    _require_valid(g)
    return totals_from_layer_counts([g.layer_total(k) for k in range(1, g.num_layers + 1)])


def expand_vertices(g: LayeredGraph, edge_cap: int = DEFAULT_EDGE_CAP) -> dict[VertexRef, tuple[VertexRef, ...]]:
    """Explicit adjacency of ``g``; only vertices with at least one neighbour appear."""
    _require_valid(g)
    total = sum(g.cluster_size(k, j) * g.cluster_size(k + 1, jj) for k, j, jj in set(g.macroedges))
    if total > edge_cap:
        raise SizeLimitError(f"{total} explicit edges exceeds the cap of {edge_cap}")
    adj: dict[VertexRef, list[VertexRef]] = defaultdict(list)
    for k, j, jj in sorted(set(g.macroedges)):
        lo = [VertexRef(k, j, i) for i in range(1, g.cluster_size(k, j) + 1)]
        hi = [VertexRef(k + 1, jj, i) for i in range(1, g.cluster_size(k + 1, jj) + 1)]
        for u in lo:
            adj[u].extend(hi)
        for w in hi:
            adj[w].extend(lo)
    return {v: tuple(sorted(adj[v])) for v in sorted(adj) if adj[v]}


def edge_count(adjacency: dict[VertexRef, tuple[VertexRef, ...]]) -> int:
    return sum(len(n) for n in adjacency.values()) // 2


def normalize(g: LayeredGraph) -> tuple[LayeredGraph, list[list[int]]]:
    """Drop zero-size clusters and the macroedges touching them.

    Returns the normalized graph and, per layer, the original index of each
    surviving cluster (``old[k - 1][j - 1]``).
    """
    old: list[list[int]] = []
    renum: list[dict[int, int]] = []
    for layer in g.layer_sizes:
        keep = [j for j, s in enumerate(layer, start=1) if s > 0]
        old.append(keep)
        renum.append({j: new for new, j in enumerate(keep, start=1)})
    sizes = tuple(tuple(s for s in layer if s > 0) for layer in g.layer_sizes)
    macros = tuple(
        (k, renum[k - 1][j], renum[k][jj])
        for k, j, jj in g.macroedges
        if j in renum[k - 1] and jj in renum[k]
    )
    return LayeredGraph(sizes, macros), old
