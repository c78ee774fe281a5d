"""Compute kernels with runtime backend selection.

The compiled Cython extension is used when it has been built (see setup.py);
otherwise the numpy implementations take over. Both expose the same four
functions with identical numerical behaviour:

    csr_matvec(indptr, indices, data, x, out)
    jacobi_cycle(a, v, thresh) -> rotations applied
    compensated_sum(values) -> float
    chain_sample(indptr, indices, cumrow, pi_cum, steps, burn_in, seed)

`BACKEND` names the active implementation ("cython" or "python").
"""

try:
    from coverbound._kernels import _ckern as _impl

    BACKEND = "cython"
except ImportError:  # extension not built
    from coverbound._kernels import _pykern as _impl

    BACKEND = "python"

csr_matvec = _impl.csr_matvec
jacobi_cycle = _impl.jacobi_cycle
compensated_sum = _impl.compensated_sum
chain_sample = _impl.chain_sample


def available_backends():
    """Importable kernel modules keyed by backend name (for benchmarks/tests)."""
    from coverbound._kernels import _pykern

    backends = {"python": _pykern}
    try:
        from coverbound._kernels import _ckern

        backends["cython"] = _ckern
    except ImportError:
        pass
    return backends
