#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallbacks.

Run from the repository root (after `python setup.py build_ext --inplace` if
you want the compiled column):

    PYTHONPATH=src python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from coverbound import GeneratorSpec, generate, uniform_nb_chain
from coverbound._kernels import available_backends
from coverbound.spectra import adjacency_operator


def timeit(fn, *args, repeat=5, **kwargs):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args, **kwargs)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_csr_matvec(mod):
    g = generate(GeneratorSpec("random-regular", n=20000, d=8, seed=1))
    indptr, indices, data = g.csr_adjacency()
    x = np.linspace(0.0, 1.0, 20000)
    out = np.empty(20000)

    def run():
        for _ in range(50):
            mod.csr_matvec(indptr, indices, data, x, out)

    return timeit(run, repeat=3)


def bench_jacobi(mod):
    g = generate(
        GeneratorSpec("weighted-regular", n=150, d=8, weight_range=(0.5, 2.0), seed=2)
    )
    A = adjacency_operator(g).dense()

    def run():
        a = A.copy()
        v = np.eye(len(A))
        for _ in range(60):
            if mod.jacobi_cycle(a, v, 1e-12) == 0:
                break

    return timeit(run, repeat=3)


def bench_chain_sample(mod):
    g = generate(GeneratorSpec("random-regular", n=500, d=8, seed=3))
    ch = uniform_nb_chain(g)
    cum = ch.cumulative_rows()
    picum = np.cumsum(ch.stationary)

    def run():
        mod.chain_sample(
            ch.edges.prol_indptr, ch.edges.prol_indices, cum, picum, 200_000, 0, 7
        )

    return timeit(run, repeat=3)


def bench_compensated_sum(mod):
    vals = np.sin(np.arange(2_000_000, dtype=np.float64))

    def run():
        mod.compensated_sum(vals)

    return timeit(run, repeat=3)


BENCHES = [
    ("csr_matvec (n=20k, d=8, 50x)", bench_csr_matvec),
    ("jacobi solve (n=150)", bench_jacobi),
    ("chain_sample (200k steps)", bench_chain_sample),
    ("compensated_sum (2M)", bench_compensated_sum),
]


def main():
    backends = available_backends()
    print(f"backends available: {', '.join(backends)}")
    width = max(len(name) for name, _fn in BENCHES)
    header = f"{'kernel':<{width}}  " + "  ".join(f"{b:>10}" for b in backends)
    print(header)
    print("-" * len(header))
    for name, bench in BENCHES:
        times = {b: bench(mod) for b, mod in backends.items()}
        cells = "  ".join(f"{times[b] * 1e3:>8.1f}ms" for b in backends)
        line = f"{name:<{width}}  {cells}"
        if "cython" in times and "python" in times and times["cython"] > 0:
            line += f"   ({times['python'] / times['cython']:.1f}x)"
        print(line)


if __name__ == "__main__":
    main()
