import pytest
from hypothesis import given, settings, strategies as st

from conftest import EXAMPLE_B, ONE_TRIPLE, corpus_3dm, corpus_layered
from ivmatch import TripartiteHypergraph, embed_from_3dm, reduce_3dm, solve
from ivmatch.formats import (
    FormatError,
    emit_3dm,
    emit_cert,
    emit_ivg,
    emit_map,
    emit_match,
    parse_3dm,
    parse_cert,
    parse_ivg,
    parse_map,
    parse_match,
)

ONE_IVG = """ivg 1
layers 4
layer 1: 1 1
layer 2: 2
layer 3: 1
layer 4: 1
macro 1 1 1
macro 1 2 1
macro 2 1 1
macro 3 1 1
"""

ONE_CERT = """cert 1
I 1 1 1  2 1 1
I 1 2 1  2 1 2
I 3 1 1  4 1 1
"""

ONE_3DM = "3dm 1\nn 1\nm 1\ne 1 1 1\n"


def test_one_triple_ivg_golden():
    g, _ = reduce_3dm(ONE_TRIPLE)
    assert emit_ivg(g) == ONE_IVG
    assert parse_ivg(ONE_IVG) == g


def test_one_triple_cert_golden():
    g, _ = reduce_3dm(ONE_TRIPLE)
    assert emit_cert(solve(g).certificate) == ONE_CERT
    assert parse_cert(ONE_CERT) == solve(g).certificate


def test_3dm_golden():
    assert parse_3dm(ONE_3DM) == ONE_TRIPLE
    assert emit_3dm(ONE_TRIPLE) == ONE_3DM


def test_empty_graph():
    g = parse_ivg("ivg 1\nlayers 2\nlayer 1:\nlayer 2:\n")
    assert g.layer_sizes == ((), ())
    assert emit_ivg(g) == "ivg 1\nlayers 2\nlayer 1:\nlayer 2:\n"


def test_strict_rejects_even_matching_violation():
    text = "ivg 1\nlayers 3\nlayer 1: 1\nlayer 2: 2\nlayer 3: 1 1\nmacro 2 1 1\nmacro 2 1 2\n"
    g = parse_ivg(text)
    assert len(g.macroedges) == 2
    with pytest.raises(FormatError) as err:
        parse_ivg(text, strict=True)
    assert err.value.code == "VALIDATION_ERROR"


def test_whitespace_and_comments_normalize():
    messy = "# reduced\nivg   1\n\nlayers 2\nlayer 1 :  2\nlayer 2:2   # one cluster\nmacro 1 1 1\n"
    assert emit_ivg(parse_ivg(messy)) == "ivg 1\nlayers 2\nlayer 1: 2\nlayer 2: 2\nmacro 1 1 1\n"


def test_cert_with_unsorted_lines_and_swapped_arms():
    text = "cert 1\nV 3 3 1 2 3 2 2 3 1\nI 3 1 1  4 1 1\nI 1 1 1 2 1 1\n"
    assert emit_cert(parse_cert(text)) == "cert 1\nI 1 1 1  2 1 1\nI 3 1 1  4 1 1\nV 3 3 1  2 3 1  2 3 2\n"


@pytest.mark.parametrize("text,line", [
    ("ivg 2\nlayers 0\n", 1),
    ("ivg 1\nlayers 2\nlayer 1: 1\n", 4),
    ("ivg 1\nlayers 1\nlayer 1: x\n", 3),
    ("ivg 1\nlayers 1\nlayer 2: 1\n", 3),
    ("ivg 1\nlayers 1\nlayer 1: 1\nmacro 1 1\n", 4),
    ("ivg 1\nlayers 1\nlayer 1: -1\n", 3),
])
def test_ivg_parse_errors(text, line):
    with pytest.raises(FormatError) as err:
        parse_ivg(text)
    assert err.value.code == "PARSE_ERROR" and err.value.line == line


def test_3dm_duplicate_triple():
    with pytest.raises(FormatError) as err:
        parse_3dm("3dm 1\nn 1\nm 2\ne 1 1 1\ne 1 1 1\n")
    assert err.value.code == "PARSE_ERROR" and err.value.line == 5


def test_3dm_count_mismatch():
    with pytest.raises(FormatError) as err:
        parse_3dm("3dm 1\nn 1\nm 2\ne 1 1 1\n")
    assert err.value.code == "COUNT_MISMATCH"


def test_3dm_out_of_range():
    with pytest.raises(FormatError):
        parse_3dm("3dm 1\nn 1\nm 1\ne 1 2 1\n")


def test_cert_bad_line():
    with pytest.raises(FormatError) as err:
        parse_cert("cert 1\nI 1 1 1 2 1\n")
    assert err.value.line == 2


def test_map_round_trip():
    _, rmap = reduce_3dm(EXAMPLE_B)
    text = emit_map(rmap)
    assert text.splitlines()[:3] == ["map 1", "n 2", "m 3"]
    assert parse_map(text) == rmap


def test_map_incomplete():
    with pytest.raises(FormatError) as err:
        parse_map("map 1\nn 1\nm 0\nx 1 1\ny 1 2\n")
    assert err.value.code == "COUNT_MISMATCH"


def test_match_round_trip():
    chosen = frozenset({(2, 2, 2), (1, 1, 1)})
    assert emit_match(chosen) == "match 1\ne 1 1 1\ne 2 2 2\n"
    assert parse_match(emit_match(chosen)) == chosen


def test_round_trip_corpora():
    for g in corpus_layered(100, (2, 3, 4, 5, 6), seed=51):
        assert parse_ivg(emit_ivg(g)) == g
        res = solve(g)
        if res.feasible:
            assert parse_cert(emit_cert(res.certificate)) == res.certificate
    for h in corpus_3dm(count=50, seed=52):
        assert parse_3dm(emit_3dm(h)) == h
        g, rmap = reduce_3dm(h)
        assert parse_ivg(emit_ivg(g)) == g
        assert parse_map(emit_map(rmap)) == rmap


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(0, 5), max_size=4), max_size=6), st.data())
def test_ivg_round_trip_arbitrary(layers, data):
    from ivmatch import LayeredGraph
    macros = []
    for k in range(1, len(layers)):
        if layers[k - 1] and layers[k]:
            macros += data.draw(st.lists(st.tuples(
                st.just(k), st.integers(1, len(layers[k - 1])), st.integers(1, len(layers[k]))), max_size=3))
    g = LayeredGraph(tuple(map(tuple, layers)), tuple(macros))
    text = emit_ivg(g)
    assert parse_ivg(text) == g
    assert emit_ivg(parse_ivg(text)) == text


def test_embed_cert_text():
    _, rmap = reduce_3dm(EXAMPLE_B)
    text = emit_cert(embed_from_3dm(EXAMPLE_B, rmap, {(1, 1, 1), (2, 2, 2)}))
    assert text.splitlines()[-1] == "V 3 3 1  2 3 1  2 3 2"


def test_empty_3dm_round_trip():
    h = TripartiteHypergraph(0)
    assert emit_3dm(h) == "3dm 1\nn 0\nm 0\n"
    assert parse_3dm(emit_3dm(h)) == h
