import pytest

from ivmatch import GenConfig, brute_force_3dm, gen_3dm, gen_ivg, solve, validate_graph
from ivmatch.formats import emit_3dm, emit_ivg
from ivmatch.rng import SplitMix64


def test_splitmix_reference_vector():
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(5)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
        4593380528125082431,
        16408922859458223821,
    ]


def test_draw_ranges():
    rng = SplitMix64(9)
    draws = [rng.randint(3, 5) for _ in range(300)]
    assert set(draws) == {3, 4, 5}
    assert all(0.0 <= rng.random() < 1.0 for _ in range(100))
    assert sorted(rng.shuffle(list(range(10)))) == list(range(10))
    with pytest.raises(ValueError):
        rng.below(0)


def test_3dm_planted_is_feasible():
    for seed in range(40):
        h = gen_3dm(GenConfig(seed=seed, n=4, m=9, planted=True))
        assert h.m == 9 and h.n == 4
        assert brute_force_3dm(h) is not None


def test_3dm_byte_deterministic():
    cfg = GenConfig(seed=7, n=3, m=6, planted=True)
    assert emit_3dm(gen_3dm(cfg)) == emit_3dm(gen_3dm(cfg))
    assert emit_3dm(gen_3dm(cfg)) != emit_3dm(gen_3dm(GenConfig(seed=8, n=3, m=6, planted=True)))


def test_3dm_full_cube():
    h = gen_3dm(GenConfig(seed=1, n=2, m=8))
    assert sorted(h.edges) == [(x, y, z) for x in (1, 2) for y in (1, 2) for z in (1, 2)]


@pytest.mark.parametrize("kwargs", [dict(n=1, m=2), dict(n=2, m=1, planted=True), dict(layers=1),
                                    dict(density=1.5), dict(n=-1, m=0)])
def test_bad_configs(kwargs):
    with pytest.raises(ValueError):
        gen_3dm(GenConfig(**kwargs))


@pytest.mark.parametrize("layers", [2, 3, 4, 5, 6, 7])
def test_planted_layered_is_feasible(layers):
    for seed in range(30):
        g = gen_ivg(GenConfig(seed=seed, layers=layers, planted=True))
        assert validate_graph(g).ok
        assert g.num_layers == layers
        assert solve(g).feasible


def test_unplanted_layered_is_valid_and_deterministic():
    for seed in range(30):
        cfg = GenConfig(seed=seed, layers=5, density=0.7)
        g = gen_ivg(cfg)
        assert validate_graph(g).ok
        assert emit_ivg(g) == emit_ivg(gen_ivg(cfg))
