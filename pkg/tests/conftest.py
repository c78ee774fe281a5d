"""Shared fixtures: the deterministic graph corpus used across suites."""

import pytest

from coverbound import GeneratorSpec, generate
from coverbound.generators import cycle_graph

BALANCE_TOL = 3e-14  # tight so closed-form stationary checks hold at 1e-12


def _build_corpus():
    graphs = []

    def add(name, g):
        graphs.append((name, g))

    for n in range(3, 13):
        add(f"C{n}", generate(GeneratorSpec("cycle", n=n)))
    # exactly 2-regular weighted cycles (alternating weights sum to 2)
    add("C4w", cycle_graph(4, weights=[0.5, 1.5, 0.5, 1.5]))
    add("C6w", cycle_graph(6, weights=[0.8, 1.2, 0.8, 1.2, 0.8, 1.2]))
    add("C8w", cycle_graph(8, weights=[0.3, 1.7] * 4))
    add("C10w", cycle_graph(10, weights=[1.4, 0.6] * 5))
    for n in range(4, 9):
        add(f"K{n}", generate(GeneratorSpec("complete", n=n)))
    add("petersen", generate(GeneratorSpec("petersen")))

    rr = [
        (10, 3), (16, 3), (20, 4), (24, 3), (30, 4), (40, 3), (50, 4),
        (60, 3), (80, 4), (100, 3), (120, 4), (150, 3), (200, 4),
        (100, 8), (200, 8),
    ]
    for i, (n, d) in enumerate(rr):
        add(f"rr{n}_{d}", generate(GeneratorSpec("random-regular", n=n, d=d, seed=100 + i)))

    wr = [
        (10, 3, (0.5, 2.0)), (16, 4, (0.8, 1.25)), (20, 3, (0.5, 2.0)),
        (24, 8, (0.5, 2.0)), (30, 4, (0.5, 2.0)), (40, 3, (0.8, 1.25)),
        (50, 4, (0.5, 2.0)), (60, 8, (0.5, 2.0)), (80, 3, (0.8, 1.25)),
        (100, 4, (0.5, 2.0)), (120, 3, (0.5, 2.0)), (150, 4, (0.8, 1.25)),
        (200, 3, (0.5, 2.0)), (200, 8, (0.8, 1.25)), (36, 4, (0.25, 3.0)),
    ]
    for i, (n, d, rng) in enumerate(wr):
        add(
            f"wr{n}_{d}",
            generate(
                GeneratorSpec(
                    "weighted-regular",
                    n=n,
                    d=d,
                    weight_range=rng,
                    seed=500 + i,
                    balance_tol=BALANCE_TOL,
                )
            ),
        )
    return graphs


@pytest.fixture(scope="session")
def corpus():
    """Full corpus: >= 50 weighted-regular graphs of min degree >= 2."""
    return _build_corpus()


@pytest.fixture(scope="session")
def small_corpus(corpus):
    """Members with at most 30 vertices, for the expensive cross-checks."""
    return [(name, g) for name, g in corpus if g.vertex_count <= 30]
