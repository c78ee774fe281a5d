"""Numpy fallback implementations of the hot kernels.

Semantics match coverbound._kernels._ckern exactly; the compiled module is
preferred at import time when it has been built.
"""

import math

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def csr_matvec(indptr, indices, data, x, out):
    """out = A @ x for a CSR matrix with explicit (possibly empty) rows."""
    prod = data * x[indices]
    out[:] = 0.0
    nonempty = indptr[:-1] != indptr[1:]
    if prod.size:
        out[nonempty] = np.add.reduceat(prod, indptr[:-1][nonempty])
    return out


def jacobi_cycle(a, v, thresh):
    """One cyclic Jacobi sweep over the upper triangle of symmetric `a`.

    Rotations zero a[p, q] whenever |a[p, q]| > thresh; `v` accumulates the
    eigenvector rotations. Returns the number of rotations applied.
    """
    n = a.shape[0]
    nrot = 0
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = float(a[p, q])
            if abs(apq) <= thresh:
                continue
            # plain-float arithmetic here: tau may overflow to inf for tiny
            # pivots, which the asymptotic branch turns into a null rotation
            tau = (float(a[q, q]) - float(a[p, p])) / (2.0 * apq)
            if abs(tau) > 1.0e150:
                t = 0.5 / tau
            elif tau >= 0.0:
                t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
            else:
                t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
            c = 1.0 / math.sqrt(1.0 + t * t)
            s = t * c
            rp = a[p, :].copy()
            rq = a[q, :].copy()
            a[p, :] = c * rp - s * rq
            a[q, :] = s * rp + c * rq
            cp = a[:, p].copy()
            cq = a[:, q].copy()
            a[:, p] = c * cp - s * cq
            a[:, q] = s * cp + c * cq
            vp = v[:, p].copy()
            vq = v[:, q].copy()
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
            nrot += 1
    return nrot


def compensated_sum(values):
    """Compensated (exact) sum of a float64 array."""
    return math.fsum(np.asarray(values, dtype=np.float64))


def chain_sample(indptr, indices, cumrow, pi_cum, steps, burn_in, seed):
    """Simulate the edge chain and return per-state visit counts.

    The start state is drawn from the stationary distribution via its
    cumulative vector `pi_cum`; each transition is drawn from the cumulative
    row `cumrow[indptr[s]:indptr[s+1]]`. Uses the splitmix64 stream from
    `seed`; counts cover the `steps` states visited after `burn_in`.
    """
    n = len(indptr) - 1
    counts = np.zeros(n, dtype=np.int64)
    _state = int(seed) & _MASK

    def nxt():
        nonlocal _state
        _state = (_state + _GAMMA) & _MASK
        z = _state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return (z ^ (z >> 31)) >> 11

    def pick(cum, lo, hi, u):
        # first index in [lo, hi) with cum[index] > u
        while lo < hi:
            mid = (lo + hi) // 2
            if cum[mid] > u:
                hi = mid
            else:
                lo = mid + 1
        return lo

    u = nxt() * 2.0**-53
    state = min(pick(pi_cum, 0, n, u), n - 1)
    for step in range(burn_in + steps):
        lo = indptr[state]
        hi = indptr[state + 1]
        u = nxt() * 2.0**-53
        k = pick(cumrow, lo, hi, u)
        if k >= hi:
            k = hi - 1
        state = indices[k]
        if step >= burn_in:
            counts[state] += 1
    return counts
