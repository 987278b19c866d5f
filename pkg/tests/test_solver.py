import pytest

from conftest import EXAMPLE_B, ONE_TRIPLE, UNCOVERABLE, corpus_layered
from oracles import all_iv_matchings, has_perfect_matching
from ivmatch import (
    IVMatching,
    LayeredGraph,
    Reason,
    ShapeV,
    SizeLimitError,
    Status,
    VertexRef as V,
    branch_v_distribution,
    brute_force_iv,
    interface_v_totals,
    preprocess_odd,
    reconstruct_certificate,
    reduce_3dm,
    solve,
    solve_two_layers,
    verify_matching,
)
from ivmatch.solver import SolveStats


def test_one_triple_reduction():
    res = solve(reduce_3dm(ONE_TRIPLE)[0])
    assert res.status is Status.FEASIBLE
    assert len(res.certificate.i_shapes) == 3 and not res.certificate.v_shapes


def test_uncoverable_reduction():
    assert solve(reduce_3dm(UNCOVERABLE)[0]).status is Status.INFEASIBLE


@pytest.mark.parametrize("sizes,status", [((3, 3), Status.FEASIBLE), ((3, 4), Status.INFEASIBLE)])
def test_two_layers_parity(sizes, status):
    g = LayeredGraph(((sizes[0],), (sizes[1],)), ((1, 1, 1),))
    assert solve(g).status is status


def test_two_layers_fast_path():
    res = solve_two_layers(LayeredGraph(((2,), (2,)), ((1, 1, 1),)))
    assert res.feasible and len(res.certificate.i_shapes) == 2
    assert solve_two_layers(LayeredGraph(((1, 1), (2,)), ((1, 1, 1), (1, 2, 1)))).feasible
    assert not solve_two_layers(LayeredGraph(((2,), (1, 1)), ((1, 1, 1),))).feasible


def test_preprocess_odd_example():
    g = LayeredGraph(((2,), (4,), (1,)), ((1, 1, 1), (2, 1, 1)))
    reduced = preprocess_odd(g)
    assert reduced.graph.layer_sizes == ((2,), (2,))
    assert reduced.forced == {(2, 1, 1): 1}
    assert solve(g).feasible and brute_force_iv(g).feasible


def test_preprocess_odd_capacity():
    g = LayeredGraph(((), (3,), (2,)), ((2, 1, 1),))
    assert preprocess_odd(g).reason is Reason.CAPACITY


def test_preprocess_odd_no_source():
    g = LayeredGraph(((), (2,), (1,)), ())
    assert not preprocess_odd(g)
    assert solve(g).reason is Reason.CAPACITY


def test_branch_example_b():
    g = reduce_3dm(EXAMPLE_B)[0]
    dist = branch_v_distribution(g, interface_v_totals(g))
    assert sum(dist.v.values()) == 1
    assert dist.v == {(2, 3, 3): 1}


def test_branch_all_zero_totals():
    g = LayeredGraph(((1,), (1,), (1,), (1,)), ((1, 1, 1), (2, 1, 1), (3, 1, 1)))
    dist = branch_v_distribution(g, (0,))
    assert dist.v == {}
    assert dist.i == {(1, 1, 1): 1, (3, 1, 1): 1}


def test_branch_capacity_cut_makes_no_flow_call():
    g = LayeredGraph(((1,), (3,), (1,), (1,)), ((1, 1, 1), (2, 1, 1), (3, 1, 1)))
    stats = SolveStats()
    res = branch_v_distribution(g, (2,), stats)
    assert res.reason is Reason.CAPACITY
    assert stats.flow_calls == 0


def test_reconstruct_one_triple():
    g = reduce_3dm(ONE_TRIPLE)[0]
    cert = reconstruct_certificate(g, {}, {(1, 1, 1): 1, (1, 2, 1): 1, (3, 1, 1): 1})
    assert verify_matching(g, cert).ok
    assert cert == solve(g).certificate


def test_reconstruct_empty():
    assert reconstruct_certificate(LayeredGraph(((), ())), {}, {}) == IVMatching()


def test_reconstruct_lowest_first():
    g = LayeredGraph(((), (4,), (2,)), ((2, 1, 1),))
    cert = reconstruct_certificate(g, {(2, 1, 1): 2}, {})
    assert cert.v_shapes == (
        ShapeV(V(3, 1, 1), V(2, 1, 1), V(2, 1, 2)),
        ShapeV(V(3, 1, 2), V(2, 1, 3), V(2, 1, 4)),
    )
    assert verify_matching(g, cert).ok


def test_brute_force_small():
    assert brute_force_iv(reduce_3dm(ONE_TRIPLE)[0]).feasible
    assert not brute_force_iv(LayeredGraph(((1,), (2,)), ((1, 1, 1),))).feasible


def test_brute_force_2_4_2_1():
    g = LayeredGraph(((2,), (4,), (2,), (1,)), ((1, 1, 1), (2, 1, 1), (3, 1, 1)))
    assert brute_force_iv(g).status is solve(g).status is Status.FEASIBLE


def test_brute_force_cap():
    with pytest.raises(SizeLimitError):
        brute_force_iv(LayeredGraph(((9,), (9,)), ((1, 1, 1),)))


def test_solver_cap():
    with pytest.raises(SizeLimitError):
        solve(LayeredGraph(((6000,), (6000,)), ((1, 1, 1),)))


def test_zero_size_clusters_restored_in_certificate():
    g = LayeredGraph(((0, 1), (0, 0, 1)), ((1, 1, 1), (1, 2, 3)))
    res = solve(g)
    assert res.feasible
    assert verify_matching(g, res.certificate).ok


@pytest.mark.parametrize("sizes,feasible", [((), True), (((),), True), (((1,),), False)])
def test_degenerate_layer_counts(sizes, feasible):
    assert solve(LayeredGraph(sizes)).feasible is feasible


def test_large_clusters_stay_fast():
    # 1800 vertices; only cluster counts matter
    g = LayeredGraph(((400,), (800,), (400,), (200,)), ((1, 1, 1), (2, 1, 1), (3, 1, 1)))
    res = solve(g)
    assert res.feasible
    assert verify_matching(g, res.certificate).ok


def test_counts_necessity_and_agreement():
    for g in corpus_layered(200, (2, 3, 4, 5, 6), max_vertices=12, seed=21):
        res = solve(g)
        certs = all_iv_matchings(g)
        assert res.feasible == bool(certs)
        if res.reason is Reason.COUNTS:
            assert not certs
        if res.feasible:
            assert verify_matching(g, res.certificate).ok


def test_two_layer_agreement_with_kuhn():
    for g in corpus_layered(150, (2,), seed=31):
        assert solve_two_layers(g).feasible == has_perfect_matching(g)


def test_deterministic():
    for g in corpus_layered(60, (4, 5, 6), seed=41):
        a, b = solve(g), solve(g)
        assert a == b
