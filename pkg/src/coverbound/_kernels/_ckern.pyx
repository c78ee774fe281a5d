# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. See coverbound._kernels for the dispatch contract."""

from libc.math cimport fabs, sqrt

import numpy as np


def csr_matvec(long long[::1] indptr, long long[::1] indices,
               double[::1] data, double[::1] x, double[::1] out):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t i, k
    cdef double acc
    for i in range(n):
        acc = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            acc += data[k] * x[indices[k]]
        out[i] = acc
    return np.asarray(out)


def jacobi_cycle(double[:, ::1] a, double[:, ::1] v, double thresh):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, k
    cdef long nrot = 0
    cdef double apq, tau, t, c, s, akp, akq
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = a[p, q]
            if fabs(apq) <= thresh:
                continue
            tau = (a[q, q] - a[p, p]) / (2.0 * apq)
            if fabs(tau) > 1.0e150:
                t = 0.5 / tau
            elif tau >= 0.0:
                t = 1.0 / (tau + sqrt(1.0 + tau * tau))
            else:
                t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
            c = 1.0 / sqrt(1.0 + t * t)
            s = t * c
            # rows p and q
            for k in range(n):
                akp = a[p, k]
                akq = a[q, k]
                a[p, k] = c * akp - s * akq
                a[q, k] = s * akp + c * akq
            # columns p and q
            for k in range(n):
                akp = a[k, p]
                akq = a[k, q]
                a[k, p] = c * akp - s * akq
                a[k, q] = s * akp + c * akq
            # eigenvector accumulation
            for k in range(n):
                akp = v[k, p]
                akq = v[k, q]
                v[k, p] = c * akp - s * akq
                v[k, q] = s * akp + c * akq
            nrot += 1
    return nrot


def compensated_sum(double[::1] values):
    """Neumaier compensated summation."""
    cdef Py_ssize_t i, n = values.shape[0]
    cdef double s = 0.0, comp = 0.0, t, x
    for i in range(n):
        x = values[i]
        t = s + x
        if fabs(s) >= fabs(x):
            comp += (s - t) + x
        else:
            comp += (x - t) + s
        s = t
    return s + comp


cdef inline unsigned long long _mix(unsigned long long* state) nogil:
    cdef unsigned long long z
    state[0] = state[0] + 0x9E3779B97F4A7C15ULL
    z = state[0]
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


def chain_sample(long long[::1] indptr, long long[::1] indices,
                 double[::1] cumrow, double[::1] pi_cum,
                 long long steps, long long burn_in, unsigned long long seed):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    counts_arr = np.zeros(n, dtype=np.int64)
    cdef long long[::1] counts = counts_arr
    cdef unsigned long long state = seed
    cdef double u
    cdef long long step, total = burn_in + steps
    cdef Py_ssize_t s, lo, hi, mid

    u = (_mix(&state) >> 11) * (1.0 / 9007199254740992.0)
    lo = 0
    hi = n
    while lo < hi:
        mid = (lo + hi) // 2
        if pi_cum[mid] > u:
            hi = mid
        else:
            lo = mid + 1
    s = lo if lo < n else n - 1

    for step in range(total):
        lo = indptr[s]
        hi = indptr[s + 1]
        u = (_mix(&state) >> 11) * (1.0 / 9007199254740992.0)
        while lo < hi:
            mid = (lo + hi) // 2
            if cumrow[mid] > u:
                hi = mid
            else:
                lo = mid + 1
        if lo >= indptr[s + 1]:
            lo = indptr[s + 1] - 1
        s = indices[lo]
        if step >= burn_in:
            counts[s] += 1
    return counts_arr
