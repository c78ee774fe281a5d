"""Backend equivalence: the compiled kernels must match the numpy fallbacks."""

import math

import numpy as np
import pytest

from coverbound import GeneratorSpec, SplitMix64, generate, uniform_nb_chain
from coverbound._kernels import BACKEND, available_backends


def backends():
    return available_backends()


def test_backend_reported():
    assert BACKEND in ("cython", "python")
    assert "python" in backends()


def test_csr_matvec_agrees():
    impls = backends()
    g = generate(GeneratorSpec("weighted-regular", n=60, d=6, weight_range=(0.5, 2), seed=2))
    indptr, indices, data = g.csr_adjacency()
    rng = SplitMix64(1)
    x = np.array([rng.random() for _ in range(60)])
    dense = np.zeros((60, 60))
    rows = np.repeat(np.arange(60), np.diff(indptr))
    dense[rows, indices] = data
    expect = dense @ x
    for name, mod in impls.items():
        out = np.empty(60)
        mod.csr_matvec(indptr, indices, data, x, out)
        assert np.abs(out - expect).max() <= 1e-12, name


def test_csr_matvec_empty_rows():
    # isolated vertex produces an empty row
    from coverbound import WeightedGraph

    g = WeightedGraph(4, [(0, 1, 2.0)])
    indptr, indices, data = g.csr_adjacency()
    x = np.array([1.0, 2.0, 3.0, 4.0])
    for name, mod in backends().items():
        out = np.empty(4)
        mod.csr_matvec(indptr, indices, data, x, out)
        assert out.tolist() == [4.0, 2.0, 0.0, 0.0], name


def test_jacobi_cycle_agrees():
    impls = backends()
    g = generate(GeneratorSpec("weighted-regular", n=24, d=4, weight_range=(0.5, 2), seed=9))
    from coverbound import adjacency_operator

    A = adjacency_operator(g).dense()
    results = {}
    for name, mod in impls.items():
        a = A.copy()
        v = np.eye(len(A))
        total = 0
        for _ in range(30):
            if mod.jacobi_cycle(a, v, 0.0) == 0:
                break
        results[name] = np.sort(np.diag(a))
    vals = list(results.values())
    for other in vals[1:]:
        assert np.abs(vals[0] - other).max() <= 1e-9


def test_compensated_sum_agrees():
    rng = SplitMix64(5)
    vals = np.array([(rng.random() - 0.5) * 10 ** (rng.randint(6) - 3) for _ in range(5000)])
    expect = math.fsum(vals)
    for name, mod in backends().items():
        got = mod.compensated_sum(vals)
        assert abs(got - expect) <= 1e-13 * max(1.0, abs(expect)), name


def test_chain_sample_bit_identical():
    impls = backends()
    if len(impls) < 2:
        pytest.skip("only one backend built")
    g = generate(GeneratorSpec("petersen"))
    ch = uniform_nb_chain(g)
    cum = ch.cumulative_rows()
    picum = np.cumsum(ch.stationary)
    outs = {}
    for name, mod in impls.items():
        outs[name] = np.asarray(
            mod.chain_sample(
                ch.edges.prol_indptr, ch.edges.prol_indices, cum, picum, 50_000, 123, 42
            )
        )
    a, b = outs.values()
    assert (a == b).all()
    assert a.sum() == 50_000
