import sys
from pathlib import Path

import pytest

from ivmatch import GenConfig, LayeredGraph, TripartiteHypergraph, gen_3dm, gen_ivg
from ivmatch.rng import SplitMix64

sys.path.insert(0, str(Path(__file__).parent))

ONE_TRIPLE = TripartiteHypergraph(1, ((1, 1, 1),))
EXAMPLE_B = TripartiteHypergraph(2, ((1, 1, 1), (2, 2, 2), (1, 2, 1)))
UNCOVERABLE = TripartiteHypergraph(2, ((1, 1, 1), (1, 2, 2)))

ACCEPTANCE_LINES: list[str] = []


def record(name: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {name}" + (f" ({detail})" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def corpus_3dm(count: int = 240, seed: int = 2024) -> list[TripartiteHypergraph]:
    """3DM instances with 0 <= n <= 6 and n <= m <= 12, half planted."""
    rng = SplitMix64(seed)
    out = []
    for i in range(count):
        n = i % 7
        m = rng.randint(n, min(12, n**3))
        planted = i % 2 == 0
        out.append(gen_3dm(GenConfig(seed=rng.next_u64(), n=n, m=m, planted=planted)))
    return out


def corpus_layered(count: int, layers: tuple[int, ...], max_vertices: int = 14,
                   seed: int = 77) -> list:
    """Small layered graphs cycling through layer counts and densities.

    Every third graph is planted (feasible), every third is planted with one
    macroedge knocked out (count-feasible, often infeasible), the rest are
    unplanted.
    """
    rng = SplitMix64(seed)
    densities = (0.2, 0.5, 0.8, 1.0)
    out = []
    i = 0
    while len(out) < count:
        cfg = GenConfig(
            seed=rng.next_u64(),
            layers=layers[i % len(layers)],
            max_cluster_size=rng.randint(1, 3),
            max_clusters=rng.randint(1, 3),
            density=densities[(i // len(layers)) % len(densities)],
            planted=(i % 3 != 2),
        )
        g = gen_ivg(cfg)
        if i % 3 == 1 and g.macroedges:
            drop = rng.below(len(g.macroedges))
            g = LayeredGraph(g.layer_sizes, g.macroedges[:drop] + g.macroedges[drop + 1:])
        i += 1
        if g.total_vertices <= max_vertices:
            out.append(g)
    return out


@pytest.fixture(scope="session")
def tdm_corpus():
    return corpus_3dm()


@pytest.fixture(scope="session")
def layered_corpus():
    return corpus_layered(520, (2, 3, 4, 5, 6))
