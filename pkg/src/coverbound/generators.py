"""Deterministic graph generators for the test corpus.

Randomness comes exclusively from the splitmix64 stream, so every family is
bit-stable for a fixed seed. Random regular graphs use the pairing model with
the stub-repair retry loop; weighted-regular graphs start from a random
regular topology, draw weights uniformly from a range, and rebalance them
multiplicatively (scale each edge by sqrt((wbar/w_u)(wbar/w_v))) until every
weighted degree agrees with the mean to balance_tol.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, GenerationError
from .graph import WeightedGraph
from .rng import SplitMix64

FAMILIES = ("cycle", "path", "complete", "petersen", "random-regular", "weighted-regular")


@dataclass
class GeneratorSpec:
    family: str
    n: int = 0
    d: int = 0
    weight_range: tuple = (1.0, 1.0)
    seed: int = 0
    balance_tol: float = 1e-10


def generate(spec):
    """Build the graph described by a GeneratorSpec."""
    fam = spec.family
    if fam == "cycle":
        return cycle_graph(spec.n)
    if fam == "path":
        return path_graph(spec.n)
    if fam == "complete":
        return complete_graph(spec.n)
    if fam == "petersen":
        return petersen_graph()
    if fam == "random-regular":
        return random_regular_graph(spec.n, spec.d, spec.seed)
    if fam == "weighted-regular":
        lo, hi = spec.weight_range
        return weighted_regular_graph(
            spec.n, spec.d, lo, hi, spec.seed, balance_tol=spec.balance_tol
        )
    raise ValueError(f"unknown family {fam!r}; expected one of {FAMILIES}")


def cycle_graph(n, weights=None):
    """Cycle on n >= 3 vertices; optional per-edge weights (edge i = (i, i+1 mod n))."""
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    if weights is None:
        weights = [1.0] * n
    if len(weights) != n:
        raise ValueError("need one weight per cycle edge")
    return WeightedGraph(n, [(i, (i + 1) % n, weights[i]) for i in range(n)])


def path_graph(n):
    if n < 1:
        raise ValueError("path needs n >= 1")
    return WeightedGraph(n, [(i, i + 1, 1.0) for i in range(n - 1)])


def complete_graph(n):
    if n < 2:
        raise ValueError("complete graph needs n >= 2")
    return WeightedGraph(n, [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)])


def petersen_graph():
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5, 1.0))  # outer cycle
        edges.append((i, i + 5, 1.0))  # spokes
        edges.append((5 + i, 5 + (i + 2) % 5, 1.0))  # inner pentagram
    return WeightedGraph(10, edges)


def random_regular_graph(n, d, seed=0, max_restarts=200):
    """Simple d-regular graph on n vertices via the pairing model.

    Pairs stubs uniformly; colliding stubs are re-shuffled and re-paired
    until none remain or the partial pairing provably cannot be completed,
    in which case generation restarts.
    """
    if d < 0 or n <= d:
        raise ValueError("need 0 <= d < n")
    if (n * d) % 2 != 0:
        raise ValueError("n * d must be even")
    if d == 0:
        return WeightedGraph(n, [])
    rng = SplitMix64(seed)
    for _ in range(max_restarts):
        edges = _try_pairing(n, d, rng)
        if edges is not None:
            return WeightedGraph(n, [(u, v, 1.0) for u, v in sorted(edges)])
    raise GenerationError(f"pairing model failed after {max_restarts} restarts")


def _try_pairing(n, d, rng):
    edges = set()
    stubs = list(range(n)) * d
    while stubs:
        potential = defaultdict(int)
        rng.shuffle(stubs)
        it = iter(stubs)
        for s1, s2 in zip(it, it):
            if s1 > s2:
                s1, s2 = s2, s1
            if s1 != s2 and (s1, s2) not in edges:
                edges.add((s1, s2))
            else:
                potential[s1] += 1
                potential[s2] += 1
        if potential and not _suitable(edges, potential):
            return None
        stubs = [v for v, k in potential.items() for _ in range(k)]
    return edges


def _suitable(edges, potential):
    nodes = sorted(potential)
    for i, s1 in enumerate(nodes):
        for s2 in nodes[i + 1:]:
            if (s1, s2) not in edges:
                return True
    return False


def weighted_regular_graph(n, d, lo, hi, seed=0, balance_tol=1e-10, max_sweeps=100_000):
    """Weighted-regular graph with genuinely non-constant edge weights.

    Draws uniform weights in [lo, hi] on a random d-regular topology, then
    rebalances multiplicatively until the weighted degrees agree with their
    mean to balance_tol (relative).
    """
    if not (0 < lo <= hi):
        raise ValueError("need 0 < lo <= hi")
    base = random_regular_graph(n, d, seed)
    rng = SplitMix64((seed ^ 0xD1B54A32D192ED03) & ((1 << 64) - 1))
    eu = np.fromiter((e[0] for e in base.edges), dtype=np.int64, count=base.edge_count)
    ev = np.fromiter((e[1] for e in base.edges), dtype=np.int64, count=base.edge_count)
    w = np.array([rng.uniform(lo, hi) for _ in range(base.edge_count)])

    for _sweep in range(max_sweeps):
        degs = np.bincount(eu, weights=w, minlength=n) + np.bincount(ev, weights=w, minlength=n)
        wbar = degs.mean()
        dev = float(np.abs(degs - wbar).max()) / wbar
        if dev <= balance_tol:
            break
        factor = np.sqrt(wbar / degs)
        w = w * factor[eu] * factor[ev]
    else:
        raise ConvergenceError(
            f"degree balancing did not reach {balance_tol} in {max_sweeps} sweeps",
            residual=dev,
        )
    return WeightedGraph(n, list(zip(eu.tolist(), ev.tolist(), w.tolist())))
