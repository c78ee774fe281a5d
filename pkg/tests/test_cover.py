import numpy as np
import pytest

from coverbound import (
    GeneratorSpec,
    SplitMix64,
    adjacency_operator,
    ball,
    enumerate_nb_walks,
    generate,
    lambda1,
    peel_core,
    residual,
    unravel,
)
from coverbound.cover import InducedSubgraph
from coverbound.errors import BudgetExceededError


def C6():
    return generate(GeneratorSpec("cycle", n=6))


def K4():
    return generate(GeneratorSpec("complete", n=4))


class TestUnravel:
    def test_cycle_is_path(self):
        t = unravel(C6(), 0, 2)
        assert t.n_nodes == 5
        assert t.level_sizes() == [1, 2, 2]
        # path shape: degree sequence 1,1,2,2,2
        indptr, _idx, _dat = t.csr_adjacency()
        degs = sorted(np.diff(indptr).tolist())
        assert degs == [1, 1, 2, 2, 2]

    def test_k4_level_sizes(self):
        t = unravel(K4(), 0, 2)
        assert t.n_nodes == 10
        assert t.level_sizes() == [1, 3, 6]

    def test_radius_zero(self):
        t = unravel(K4(), 2, 0)
        assert t.n_nodes == 1
        assert t.root_vertex == 2

    def test_counts_match_enumeration(self, small_corpus):
        for _name, g in small_corpus:
            if g.vertex_count > 12:
                continue
            for v in range(g.vertex_count):
                for r in range(0, 6):
                    t = unravel(g, v, r)
                    walks = enumerate_nb_walks(g, v, r)
                    sizes = t.level_sizes()
                    sizes += [0] * (r + 1 - len(sizes))
                    assert sizes == walks.counts

    def test_budget_exceeded(self):
        with pytest.raises(BudgetExceededError) as err:
            unravel(K4(), 0, 10, node_budget=20)
        assert err.value.level >= 2
        assert err.value.projected > 20

    def test_non_backtracking_structure(self):
        g = generate(GeneratorSpec("petersen"))
        t = unravel(g, 0, 3)
        edges = g.directed_edges()
        for i in range(1, t.n_nodes):
            p = t.parent[i]
            if p == 0:
                assert edges.tail[t.ext_edge[i]] == 0
            else:
                # child edge extends the parent's head and never reverses it
                assert edges.tail[t.ext_edge[i]] == edges.head[t.ext_edge[p]]
                assert t.ext_edge[i] != edges.twin[t.ext_edge[p]]
            assert t.weight[i] == edges.weight[t.ext_edge[i]]

    def test_children_counts(self):
        g = generate(GeneratorSpec("petersen"))
        t = unravel(g, 0, 3)
        counts = np.bincount(t.parent[1:], minlength=t.n_nodes)
        verts = t.node_vertices()
        degs = g.degrees()
        assert counts[0] == degs[0]
        for i in range(1, t.n_nodes):
            if t.depth[i] < t.radius:
                assert counts[i] == degs[verts[i]] - 1

    def test_deterministic_child_order(self):
        t1 = unravel(K4(), 0, 3)
        t2 = unravel(K4(), 0, 3)
        assert (t1.ext_edge == t2.ext_edge).all()
        root_children = t1.ext_edge[1:][t1.parent[1:] == 0]
        assert (np.diff(root_children) > 0).all()


class TestBall:
    def test_c6_radius1(self):
        b = ball(C6(), 0, 1)
        assert sorted(b.vertices.tolist()) == [0, 1, 5]
        assert b.edge_count == 2

    def test_radius_covers_component(self):
        g = generate(GeneratorSpec("petersen"))
        b = ball(g, 3, 5)
        assert b.vertex_count == 10
        assert b.edge_count == 15

    def test_radius_zero_isolated(self):
        b = ball(K4(), 1, 0)
        assert b.vertices.tolist() == [1]
        assert b.edge_count == 0

    def test_to_graph_keeps_labels_and_weights(self):
        g = generate(GeneratorSpec("weighted-regular", n=12, d=3, weight_range=(0.5, 2), seed=2))
        b = ball(g, 0, 1)
        sub = b.to_graph()
        assert sub.vertex_count == b.vertex_count
        assert sub.edge_count == b.edge_count
        assert sub.labels == tuple(g.label(int(v)) for v in b.vertices)
        # weights survive the restriction
        for u, v, w in sub.edges:
            gu, gv = int(b.vertices[u]), int(b.vertices[v])
            assert dict(g.neighbors(gu))[gv] == w


class TestResidual:
    def test_c6(self):
        r = residual(C6(), 0, 0)
        assert r.vertices.tolist() == [2, 3, 4]
        assert r.edge_count == 2  # the path 2-3-4

    def test_k4_empty(self):
        assert residual(K4(), 0, 0).vertex_count == 0

    def test_disconnected_keeps_other_components(self):
        from coverbound import WeightedGraph

        g = WeightedGraph(6, [(0, 1, 1.0), (1, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0)])
        r = residual(g, 0, 4)
        assert set(r.vertices.tolist()) == {3, 4, 5}


class TestPeelCore:
    def test_cycle_survives_at_two(self):
        assert peel_core(InducedSubgraph(C6(), range(6)), 2.0).vertex_count == 6

    def test_cycle_collapses_above_two(self):
        assert peel_core(InducedSubgraph(C6(), range(6)), 2.1).vertex_count == 0

    def test_k5(self):
        g = generate(GeneratorSpec("complete", n=5))
        assert peel_core(InducedSubgraph(g, range(5)), 3.5).vertex_count == 5

    def test_zero_threshold_keeps_everything(self):
        sub = InducedSubgraph(K4(), [0, 1])
        assert peel_core(sub, 0.0).vertex_count == 2

    def test_order_invariance(self):
        # reference: delete vertices below threshold in random order
        rng = SplitMix64(41)
        for trial in range(25):
            n = 6 + rng.randint(8)
            g = generate(
                GeneratorSpec(
                    "weighted-regular", n=12, d=3, weight_range=(0.5, 2.0), seed=trial
                )
            )
            sub = InducedSubgraph(g, range(g.vertex_count))
            theta = 0.5 + 2.5 * rng.random()
            expect = set(peel_core(sub, theta).vertices.tolist())
            alive = set(range(g.vertex_count))
            adj = {v: dict(g.neighbors(v)) for v in range(g.vertex_count)}
            while True:
                deg = {
                    v: sum(w for u, w in adj[v].items() if u in alive)
                    for v in alive
                }
                below = sorted(v for v in alive if deg[v] < theta)
                if not below:
                    break
                alive.discard(below[rng.randint(len(below))])
            assert alive == expect


def test_tree_lambda_monotone_in_radius(small_corpus):
    for _name, g in small_corpus[:8]:
        for v in (0,):
            prev = -np.inf
            for r in range(0, 5):
                val = lambda1(adjacency_operator(unravel(g, v, r))).value
                assert val >= prev - 1e-10
                prev = val


def test_girth_injectivity_counts():
    # girth 5 > 2r for r=2: walk nodes inject into the ball
    g = generate(GeneratorSpec("petersen"))
    t = unravel(g, 0, 2)
    b = ball(g, 0, 2)
    assert t.n_nodes == b.vertex_count == 10
