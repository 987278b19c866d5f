"""Plain-text file formats.

All formats are line based with whitespace-separated tokens and a versioned
header line. Blank lines and ``#`` comments are ignored on input; emitters
always write the canonical form.

``.ivg``  layered graph::

    ivg 1
    layers 4
    layer 1: 1 1
    layer 2: 2
    layer 3: 1
    layer 4: 1
    macro 1 1 1

``.3dm``  hypergraph: ``3dm 1`` / ``n <n>`` / ``m <m>`` / ``e x y z`` lines.

``.cert`` certificate: ``cert 1`` then ``I k j i  k' j' i'`` and
``V <center>  <left>  <right>`` lines, I-shapes first, each group sorted.

``.map``  reduction map: ``map 1`` / ``n <n>`` / ``m <m>`` / ``x <x> <cluster>``,
``y <y> <cluster>``, ``z <z> <cluster>`` / ``g <e> <layer-2 cluster> <layer-3 cluster>``.

``.match`` 3DM matching: ``match 1`` / ``e x y z`` lines, sorted.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .hypergraph import TripartiteHypergraph, Triple
from .model import IVMatching, LayeredGraph, ShapeI, ShapeV, VertexRef, validate_graph
from .reduction import ReductionMap


class FormatError(ValueError):
    """Malformed input; ``code`` is ``PARSE_ERROR``, ``COUNT_MISMATCH`` or ``VALIDATION_ERROR``."""

    def __init__(self, message: str, line: int | None = None, code: str = "PARSE_ERROR"):
        self.code = code
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{code}: {where}{message}")


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = body.replace(":", " : ").split()
        if tokens:
            yield no, tokens


def _ints(tokens: list[str], no: int) -> list[int]:
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", no) from None
    return values


def _header(lines: list[tuple[int, list[str]]], magic: str) -> None:
    if not lines or lines[0][1] != [magic, "1"]:
        no = lines[0][0] if lines else 1
        raise FormatError(f"expected header '{magic} 1'", no)


def _keyed(lines: list[tuple[int, list[str]]], pos: int, key: str) -> int:
    if pos >= len(lines):
        raise FormatError(f"missing '{key}' line", (lines[-1][0] + 1) if lines else 1)
    no, tokens = lines[pos]
    if len(tokens) != 2 or tokens[0] != key:
        raise FormatError(f"expected '{key} <count>'", no)
    (value,) = _ints(tokens[1:], no)
    if value < 0:
        raise FormatError(f"negative {key}", no)
    return value


def parse_ivg(text: str, strict: bool = False) -> LayeredGraph:
    """Parse an ``.ivg`` file; with ``strict`` the graph must also validate."""
    lines = list(_lines(text))
    _header(lines, "ivg")
    ell = _keyed(lines, 1, "layers")
    sizes: list[tuple[int, ...]] = []
    pos = 2
    for k in range(1, ell + 1):
        if pos >= len(lines):
            raise FormatError(f"missing 'layer {k}:' line", (lines[-1][0] + 1))
        no, tokens = lines[pos]
        if tokens[:3] != ["layer", str(k), ":"]:
            raise FormatError(f"expected 'layer {k}:'", no)
        values = _ints(tokens[3:], no)
        if any(v < 0 for v in values):
            raise FormatError("negative cluster size", no)
        sizes.append(tuple(values))
        pos += 1
    macros = []
    for no, tokens in lines[pos:]:
        if tokens[0] != "macro" or len(tokens) != 4:
            raise FormatError("expected 'macro <k> <j> <j2>'", no)
        macros.append(tuple(_ints(tokens[1:], no)))
    g = LayeredGraph(tuple(sizes), tuple(macros))
    if strict:
        report = validate_graph(g)
        if not report.ok:
            raise FormatError("; ".join(report.lines()), None, "VALIDATION_ERROR")
    return g


def emit_ivg(g: LayeredGraph) -> str:
    out = ["ivg 1", f"layers {g.num_layers}"]
    for k, layer in enumerate(g.layer_sizes, start=1):
        out.append(" ".join([f"layer {k}:", *map(str, layer)]))
    out += [f"macro {k} {j} {jj}" for k, j, jj in g.macroedges]
    return "\n".join(out) + "\n"


def parse_3dm(text: str) -> TripartiteHypergraph:
    lines = list(_lines(text))
    _header(lines, "3dm")
    n = _keyed(lines, 1, "n")
    m = _keyed(lines, 2, "m")
    edges: list[Triple] = []
    seen: set[Triple] = set()
    for no, tokens in lines[3:]:
        if tokens[0] != "e" or len(tokens) != 4:
            raise FormatError("expected 'e <x> <y> <z>'", no)
        e = tuple(_ints(tokens[1:], no))
        if not all(1 <= c <= n for c in e):
            raise FormatError(f"hyperedge {e} out of range 1..{n}", no)
        if e in seen:
            raise FormatError(f"duplicate triple {e}", no)
        seen.add(e)
        edges.append(e)
    if len(edges) != m:
        raise FormatError(f"header says m={m} but found {len(edges)} 'e' lines", None, "COUNT_MISMATCH")
    return TripartiteHypergraph(n, tuple(edges))


def emit_3dm(h: TripartiteHypergraph) -> str:
    out = ["3dm 1", f"n {h.n}", f"m {h.m}"]
    out += [f"e {x} {y} {z}" for x, y, z in h.edges]
    return "\n".join(out) + "\n"


def _vertex(tokens: list[str], no: int) -> VertexRef:
    return VertexRef(*_ints(tokens, no))


def parse_cert(text: str) -> IVMatching:
    lines = list(_lines(text))
    _header(lines, "cert")
    i_shapes, v_shapes = [], []
    for no, tokens in lines[1:]:
        kind, rest = tokens[0], tokens[1:]
        if kind == "I" and len(rest) == 6:
            i_shapes.append(ShapeI(_vertex(rest[:3], no), _vertex(rest[3:], no)))
        elif kind == "V" and len(rest) == 9:
            v_shapes.append(ShapeV(_vertex(rest[:3], no), _vertex(rest[3:6], no), _vertex(rest[6:], no)))
        else:
            raise FormatError("expected an 'I' line with 6 integers or a 'V' line with 9", no)
    return IVMatching(tuple(i_shapes), tuple(v_shapes))


def emit_cert(m: IVMatching) -> str:
    out = ["cert 1"]
    out += [f"I {s.a}  {s.b}" for s in m.i_shapes]
    out += [f"V {s.center}  {s.left}  {s.right}" for s in m.v_shapes]
    return "\n".join(out) + "\n"


def parse_map(text: str) -> ReductionMap:
    lines = list(_lines(text))
    _header(lines, "map")
    n = _keyed(lines, 1, "n")
    m = _keyed(lines, 2, "m")
    parts: dict[str, dict[int, tuple[int, ...]]] = {"x": {}, "y": {}, "z": {}, "g": {}}
    for no, tokens in lines[3:]:
        kind = tokens[0]
        width = 4 if kind == "g" else 3
        if kind not in parts or len(tokens) != width:
            raise FormatError("expected 'x|y|z <i> <cluster>' or 'g <e> <c2> <c3>'", no)
        key, *vals = _ints(tokens[1:], no)
        if key in parts[kind]:
            raise FormatError(f"repeated '{kind} {key}'", no)
        parts[kind][key] = tuple(vals)
    for kind, count in (("x", n), ("y", n), ("z", n), ("g", m)):
        if sorted(parts[kind]) != list(range(1, count + 1)):
            raise FormatError(f"'{kind}' lines must cover 1..{count}", None, "COUNT_MISMATCH")
    return ReductionMap(
        n=n,
        x_clusters=tuple(parts["x"][i][0] for i in range(1, n + 1)),
        y_clusters=tuple(parts["y"][i][0] for i in range(1, n + 1)),
        z_clusters=tuple(parts["z"][i][0] for i in range(1, n + 1)),
        gadgets=tuple(parts["g"][e] for e in range(1, m + 1)),
    )


def emit_map(rmap: ReductionMap) -> str:
    out = ["map 1", f"n {rmap.n}", f"m {len(rmap.gadgets)}"]
    for kind, clusters in (("x", rmap.x_clusters), ("y", rmap.y_clusters), ("z", rmap.z_clusters)):
        out += [f"{kind} {i} {c}" for i, c in enumerate(clusters, start=1)]
    out += [f"g {e} {c2} {c3}" for e, (c2, c3) in enumerate(rmap.gadgets, start=1)]
    return "\n".join(out) + "\n"


def parse_match(text: str) -> frozenset[Triple]:
    lines = list(_lines(text))
    _header(lines, "match")
    chosen: set[Triple] = set()
    for no, tokens in lines[1:]:
        if tokens[0] != "e" or len(tokens) != 4:
            raise FormatError("expected 'e <x> <y> <z>'", no)
        e = tuple(_ints(tokens[1:], no))
        if e in chosen:
            raise FormatError(f"duplicate triple {e}", no)
        chosen.add(e)
    return frozenset(chosen)


def emit_match(chosen: Iterable[Triple]) -> str:
    out = ["match 1"] + [f"e {x} {y} {z}" for x, y, z in sorted(chosen)]
    return "\n".join(out) + "\n"
