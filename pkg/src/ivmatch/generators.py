"""Seeded random instances: 3DM hypergraphs and layered graphs.

Every draw goes through :class:`~ivmatch.rng.SplitMix64`, so a seed fixes
the output exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hypergraph import TripartiteHypergraph, Triple
from .model import LayeredGraph, normalize
from .rng import SplitMix64


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    # 3DM
    n: int = 3
    m: int = 6
    # layered graphs
    layers: int = 4
    max_cluster_size: int = 3
    max_clusters: int = 3
    density: float = 0.5
    planted: bool = False

    def __post_init__(self) -> None:
        if self.n < 0 or self.m < 0:
            raise ValueError("n and m must be non-negative")
        if self.m > self.n**3:
            raise ValueError(f"m={self.m} exceeds the n^3={self.n**3} distinct triples")
        if self.layers < 2:
            raise ValueError("layered graphs need at least 2 layers")
        if self.max_cluster_size < 1 or self.max_clusters < 1:
            raise ValueError("cluster bounds must be positive")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density must lie in [0, 1]")


def gen_3dm(cfg: GenConfig) -> TripartiteHypergraph:
    """Random hypergraph with ``cfg.m`` distinct triples over ``n``-element partites.

    With ``planted`` a random perfect matching goes in first and ``m - n``
    distinct distractors follow; edge order is shuffled at the end.
    """
    n, m = cfg.n, cfg.m
    if cfg.planted and m < n:
        raise ValueError("a planted instance needs m >= n")
    rng = SplitMix64(cfg.seed)
    edges: list[Triple] = []
    seen: set[Triple] = set()
    if cfg.planted:
        ys = rng.shuffle(list(range(1, n + 1)))
        zs = rng.shuffle(list(range(1, n + 1)))
        for x in range(1, n + 1):
            e = (x, ys[x - 1], zs[x - 1])
            edges.append(e)
            seen.add(e)
    while len(edges) < m:
        code = rng.below(n**3)
        e = (code // (n * n) + 1, code // n % n + 1, code % n + 1)
        if e not in seen:
            seen.add(e)
            edges.append(e)
    rng.shuffle(edges)
    return TripartiteHypergraph(n, tuple(edges))


def _random_sizes(rng: SplitMix64, cfg: GenConfig) -> list[int]:
    return [rng.randint(1, cfg.max_cluster_size) for _ in range(rng.randint(1, cfg.max_clusters))]


def _add_distractors(rng: SplitMix64, cfg: GenConfig, sizes: list[list[int]],
                     macros: set[tuple[int, int, int]]) -> None:
    for k in range(1, len(sizes)):
        lo, hi = range(1, len(sizes[k - 1]) + 1), range(1, len(sizes[k]) + 1)
        if k % 2:
            for j in lo:
                for jj in hi:
                    if (k, j, jj) not in macros and rng.random() < cfg.density:
                        macros.add((k, j, jj))
        else:
            used_lo = {j for kk, j, _ in macros if kk == k}
            used_hi = {jj for kk, _, jj in macros if kk == k}
            free_lo = rng.shuffle([j for j in lo if j not in used_lo])
            free_hi = rng.shuffle([jj for jj in hi if jj not in used_hi])
            for j, jj in zip(free_lo, free_hi):
                if rng.random() < cfg.density:
                    macros.add((k, j, jj))


def _permute_clusters(rng: SplitMix64, sizes: list[list[int]],
                      macros: set[tuple[int, int, int]]) -> LayeredGraph:
    perms = [rng.shuffle(list(range(1, len(layer) + 1))) for layer in sizes]
    # perms[k][old - 1] is the new index of old cluster ``old``
    new_sizes = []
    for layer, perm in zip(sizes, perms):
        row = [0] * len(layer)
        for old, s in enumerate(layer, start=1):
            row[perm[old - 1] - 1] = s
        new_sizes.append(tuple(row))
    new_macros = tuple((k, perms[k - 1][j - 1], perms[k][jj - 1]) for k, j, jj in sorted(macros))
    return LayeredGraph(tuple(new_sizes), new_macros)


def gen_ivg(cfg: GenConfig) -> LayeredGraph:
    """Random layered graph with ``cfg.layers`` layers.

    Unplanted: random cluster counts and sizes, each odd-to-even cluster pair
    joined with probability ``density``, and even-to-odd macroedges drawn as
    a random partial matching.

    Planted: a certificate is laid out first, layer by layer, as counts. Each
    odd cluster spends its free vertices on I-shapes into random even
    clusters; each even cluster gets extra vertices for a random number of
    V-shapes whose centers form a new odd cluster above it. Distractor
    macroedges are then added at ``density`` and cluster order is shuffled.
    Zero-size clusters are removed from the result.
    """
    rng = SplitMix64(cfg.seed)
    ell = cfg.layers
    if not cfg.planted:
        sizes = [_random_sizes(rng, cfg) for _ in range(ell)]
        macros: set[tuple[int, int, int]] = set()
        _add_distractors(rng, cfg, sizes, macros)
        return _permute_clusters(rng, sizes, macros)

    big = cfg.max_cluster_size
    sizes = [[] for _ in range(ell)]
    macros = set()
    sizes[0] = _random_sizes(rng, cfg)
    v_in = [0] * len(sizes[0])
    odd = 1
    while odd < ell:
        supply = [s - v for s, v in zip(sizes[odd - 1], v_in)]
        n_even = rng.randint(1, cfg.max_clusters)
        i_count = [0] * n_even
        for a, units in enumerate(supply, start=1):
            for _ in range(units):
                b = rng.below(n_even)
                i_count[b] += 1
                macros.add((odd, a, b + 1))
        if odd + 1 == ell:
            sizes[odd] = i_count
            break
        v_out = [rng.randint(0, big // 2) if big >= 2 else rng.randint(0, 1) for _ in range(n_even)]
        sizes[odd] = [i + 2 * v for i, v in zip(i_count, v_out)]
        last = odd + 2 == ell
        next_sizes, v_in = [], []
        for b, v in enumerate(v_out, start=1):
            if v:
                up = 0 if last else rng.randint(0, big)
                next_sizes.append(v + up)
                v_in.append(v)
                macros.add((odd + 1, b, len(next_sizes)))
        if not last:
            for _ in range(rng.randint(0, cfg.max_clusters)):
                next_sizes.append(rng.randint(1, big))
                v_in.append(0)
        sizes[odd + 1] = next_sizes
        odd += 2
    _add_distractors(rng, cfg, sizes, macros)
    g = _permute_clusters(rng, sizes, macros)
    return normalize(g)[0]
