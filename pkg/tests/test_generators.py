import numpy as np
import pytest

from coverbound import GeneratorSpec, generate, parse_graph


class TestClassicFamilies:
    def test_cycle(self):
        g = generate(GeneratorSpec("cycle", n=6))
        assert g.vertex_count == 6
        assert g.edge_count == 6
        assert (g.degrees() == 2).all()

    def test_path(self):
        g = generate(GeneratorSpec("path", n=5))
        assert g.edge_count == 4

    def test_complete(self):
        g = generate(GeneratorSpec("complete", n=5))
        assert g.edge_count == 10

    def test_petersen(self):
        g = generate(GeneratorSpec("petersen"))
        assert g.vertex_count == 10
        assert g.edge_count == 15
        assert (g.degrees() == 3).all()
        # girth 5: no triangles or 4-cycles
        a = np.zeros((10, 10))
        for u, v, _w in g.edges:
            a[u, v] = a[v, u] = 1
        assert np.trace(a @ a @ a) == 0
        a4 = np.linalg.matrix_power(a, 4)
        # only degenerate closed 4-walks (d^2 of shape vavbv, d(d-1) of vabav)
        assert np.trace(a4) == 10 * (3 * 3 + 3 * 2)


class TestRandomRegular:
    def test_degrees_and_count(self):
        g = generate(GeneratorSpec("random-regular", n=10, d=3, seed=1))
        assert g.edge_count == 15
        assert (g.degrees() == 3).all()

    def test_simple(self):
        g = generate(GeneratorSpec("random-regular", n=30, d=5, seed=4))
        pairs = {(u, v) for u, v, _w in g.edges}
        assert len(pairs) == g.edge_count
        assert all(u != v for u, v in pairs)

    def test_parity_rejected(self):
        with pytest.raises(ValueError):
            generate(GeneratorSpec("random-regular", n=5, d=3, seed=0))

    def test_seed_stability(self):
        a = generate(GeneratorSpec("random-regular", n=24, d=4, seed=11))
        b = generate(GeneratorSpec("random-regular", n=24, d=4, seed=11))
        assert a.edges == b.edges
        c = generate(GeneratorSpec("random-regular", n=24, d=4, seed=12))
        assert a.edges != c.edges

    def test_dense_case(self):
        g = generate(GeneratorSpec("random-regular", n=40, d=20, seed=2))
        assert (g.degrees() == 20).all()


class TestWeightedRegular:
    def test_regularity_and_variance(self):
        g = generate(
            GeneratorSpec(
                "weighted-regular", n=100, d=8, weight_range=(0.5, 2.0), seed=7,
                balance_tol=1e-10,
            )
        )
        degs = g.weighted_degrees()
        wbar = degs.mean()
        assert np.abs(degs - wbar).max() <= 1e-10 * wbar
        weights = np.array([w for _u, _v, w in g.edges])
        assert weights.var() > 0

    def test_tight_tolerance(self):
        g = generate(
            GeneratorSpec(
                "weighted-regular", n=30, d=4, weight_range=(0.5, 2.0), seed=3,
                balance_tol=3e-14,
            )
        )
        assert g.regularity(rel_tol=3e-14) is not None

    def test_revalidates_after_roundtrip(self, corpus):
        for _name, g in corpus[:20]:
            h = parse_graph(g.serialize())
            assert h.edge_count == g.edge_count
            assert h.vertex_count == g.vertex_count

    def test_seed_stability(self):
        a = generate(GeneratorSpec("weighted-regular", n=20, d=3, weight_range=(0.5, 2), seed=5))
        b = generate(GeneratorSpec("weighted-regular", n=20, d=3, weight_range=(0.5, 2), seed=5))
        assert a.edges == b.edges


def test_unknown_family():
    with pytest.raises(ValueError):
        generate(GeneratorSpec("torus", n=4))
