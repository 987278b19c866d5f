"""Reduction from three-dimensional matching to IV-matching on four layers.

Each partite vertex becomes a singleton cluster (``X`` then ``Y`` in layer 1,
``Z`` in layer 4). Each hyperedge ``e = (x, y, z)`` gets a size-two cluster
``{x_e, y_e}`` in layer 2 and a singleton ``{z_e}`` in layer 3, wired by four
macroedges. In any IV-matching a gadget is either fully I-matched (``e`` is in
the 3DM matching) or swallowed by one V (``e`` is not).
"""

from __future__ import annotations

from dataclasses import dataclass

from .hypergraph import TripartiteHypergraph, Triple, verify_3dm_matching
from .model import IVMatching, LayeredGraph, ShapeI, ShapeV, VertexRef, verify_matching


class InvalidCertificate(ValueError):
    """The certificate is not an IV-matching of the reduced instance."""


class InvalidMatching(ValueError):
    """The hyperedge set is not a perfect 3DM matching."""


@dataclass(frozen=True)
class ReductionMap:
    """Where each 3DM vertex and hyperedge gadget lives in the reduced graph.

    ``x_clusters[x - 1]`` is the layer-1 cluster of ``x`` (likewise ``y``);
    ``z_clusters[z - 1]`` is the layer-4 cluster of ``z``;
    ``gadgets[e]`` is ``(layer-2 cluster, layer-3 cluster)`` for the
    hyperedge at 0-based position ``e``.
    """

    n: int
    x_clusters: tuple[int, ...]
    y_clusters: tuple[int, ...]
    z_clusters: tuple[int, ...]
    gadgets: tuple[tuple[int, int], ...]

    def check(self, h: TripartiteHypergraph) -> None:
        if self.n != h.n or len(self.gadgets) != h.m:
            raise ValueError("reduction map does not fit the hypergraph")
        if sorted(self.x_clusters + self.y_clusters) != list(range(1, 2 * h.n + 1)):
            raise ValueError("layer-1 clusters are not a bijection with X and Y")
        if sorted(self.z_clusters) != list(range(1, h.n + 1)):
            raise ValueError("layer-4 clusters are not a bijection with Z")
        for pos in (0, 1):
            if sorted(g[pos] for g in self.gadgets) != list(range(1, h.m + 1)):
                raise ValueError(f"gadget clusters of layer {pos + 2} are not a bijection")


def graph_for_map(h: TripartiteHypergraph, rmap: ReductionMap) -> LayeredGraph:
    """The reduced graph with cluster positions taken from ``rmap``."""
    rmap.check(h)
    n, m = h.n, h.m
    macros = []
    for (x, y, z), (c2, c3) in zip(h.edges, rmap.gadgets):
        macros += [
            (1, rmap.x_clusters[x - 1], c2),
            (1, rmap.y_clusters[y - 1], c2),
            (2, c2, c3),
            (3, c3, rmap.z_clusters[z - 1]),
        ]
    return LayeredGraph(((1,) * (2 * n), (2,) * m, (1,) * m, (1,) * n), tuple(macros))


def reduce_3dm(h: TripartiteHypergraph) -> tuple[LayeredGraph, ReductionMap]:
    n, m = h.n, h.m
    rmap = ReductionMap(
        n=n,
        x_clusters=tuple(range(1, n + 1)),
        y_clusters=tuple(range(n + 1, 2 * n + 1)),
        z_clusters=tuple(range(1, n + 1)),
        gadgets=tuple((e, e) for e in range(1, m + 1)),
    )
    return graph_for_map(h, rmap), rmap


def _gadget(rmap: ReductionMap, e: int) -> tuple[VertexRef, VertexRef, VertexRef]:
    c2, c3 = rmap.gadgets[e]
    return VertexRef(2, c2, 1), VertexRef(2, c2, 2), VertexRef(3, c3, 1)


def lift_to_3dm(h: TripartiteHypergraph, rmap: ReductionMap, cert: IVMatching) -> frozenset[Triple]:
    """Read a perfect 3DM matching off an IV-matching of the reduced graph.

    A hyperedge is chosen exactly when its three gadget vertices sit in
    I-shapes.
    """
    g = graph_for_map(h, rmap)
    report = verify_matching(g, cert)
    if not report.ok:
        raise InvalidCertificate("; ".join(report.lines()))
    in_i = {v for s in cert.i_shapes for v in s}
    v_of = {v: s for s in cert.v_shapes for v in s}
    chosen = []
    for e, triple in enumerate(h.edges):
        xe, ye, ze = _gadget(rmap, e)
        if xe in in_i and ye in in_i and ze in in_i:
            chosen.append(triple)
        elif not (v_of.get(ze) is not None and v_of.get(ze) == v_of.get(xe) == v_of.get(ye)):
            raise InvalidCertificate(f"gadget of hyperedge {triple} is split between shapes")
    result = frozenset(chosen)
    if len(cert.v_shapes) != h.m - h.n or not verify_3dm_matching(h, result):
        raise InvalidCertificate("lifted hyperedges do not form a perfect matching")
    return result


def embed_from_3dm(h: TripartiteHypergraph, rmap: ReductionMap, nmatch) -> IVMatching:
    """Build the IV-matching of the reduced graph that encodes ``nmatch``."""
    rmap.check(h)
    if not verify_3dm_matching(h, nmatch):
        raise InvalidMatching("not a perfect matching of the hypergraph")
    chosen = {tuple(e) for e in nmatch}
    i_shapes: list[ShapeI] = []
    v_shapes: list[ShapeV] = []
    for e, (x, y, z) in enumerate(h.edges):
        xe, ye, ze = _gadget(rmap, e)
        if (x, y, z) in chosen:
            i_shapes.append(ShapeI(VertexRef(1, rmap.x_clusters[x - 1], 1), xe))
            i_shapes.append(ShapeI(VertexRef(1, rmap.y_clusters[y - 1], 1), ye))
            i_shapes.append(ShapeI(ze, VertexRef(4, rmap.z_clusters[z - 1], 1)))
        else:
            v_shapes.append(ShapeV(ze, xe, ye))
    return IVMatching(tuple(i_shapes), tuple(v_shapes))
