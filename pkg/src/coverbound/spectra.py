"""Symmetric eigenvalue machinery.

Closed-form path spectra, a restarted Lanczos solver for the largest (and,
with deflation, second largest) eigenvalue of sparse symmetric operators, and
Rayleigh quotients. The solver runs on the shifted operator A + cI with c the
maximum absolute row sum, so the algebraically largest eigenvalue of A is the
spectral radius of the shift; full reorthogonalization keeps the basis clean
at the problem sizes this package targets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConnectivityError, ConvergenceError, DimensionError

_MAX_BASIS = 200
_DEFAULT_MAX_MATVECS = 50_000


@dataclass
class EigenResult:
    value: float
    vector: np.ndarray
    residual: float


class CsrOperator:
    """Symmetric linear map given by CSR arrays."""

    def __init__(self, indptr, indices, data):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.data = np.ascontiguousarray(data, dtype=np.float64)
        self.n = len(self.indptr) - 1
        self._row_sum = None

    @property
    def dimension(self):
        return self.n

    def matvec(self, x):
        out = np.empty(self.n)
        _kernels.csr_matvec(self.indptr, self.indices, self.data, x, out)
        return out

    def max_abs_row_sum(self):
        if self._row_sum is None:
            if self.n == 0 or len(self.data) == 0:
                self._row_sum = 0.0
            else:
                sums = np.add.reduceat(np.abs(self.data), self.indptr[:-1])
                sums[self.indptr[:-1] == self.indptr[1:]] = 0.0
                self._row_sum = float(sums.max())
        return self._row_sum

    def dense(self):
        a = np.zeros((self.n, self.n))
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        a[rows, self.indices] = self.data
        return a


def adjacency_operator(obj):
    """CsrOperator over the adjacency of a graph, subgraph or unraveled ball."""
    indptr, indices, data = obj.csr_adjacency()
    return CsrOperator(indptr, indices, data)


def path_lambda1(n):
    """Spectral radius of the n-vertex path: 2*cos(pi/(n+1))."""
    n = int(n)
    if n < 1:
        raise DimensionError("path needs at least one vertex")
    return 2.0 * math.cos(math.pi / (n + 1))


def path_top_eigenvector(n):
    """Unit top eigenvector of the n-vertex path: entries sin(i*pi/(n+1)) > 0."""
    n = int(n)
    if n < 1:
        raise DimensionError("path needs at least one vertex")
    x = np.sin(np.arange(1, n + 1) * (math.pi / (n + 1)))
    return x / np.linalg.norm(x)


def rayleigh(op, f):
    """Rayleigh quotient <f, A f> / <f, f>."""
    f = np.asarray(f, dtype=np.float64)
    denom = float(f @ f)
    if denom == 0.0:
        raise ValueError("Rayleigh quotient of the zero vector")
    return float(f @ op.matvec(f)) / denom


def _start_vector(n):
    # Deterministic symmetry-breaking start: a Knuth-hash perturbation of the
    # all-ones vector, so no graph automorphism or sign structure can leave
    # the start orthogonal to the top eigenspace in practice.
    h = (np.arange(n, dtype=np.uint64) * np.uint64(2654435761)) & np.uint64(0xFFFFFFFF)
    return 1.0 + h.astype(np.float64) / 2.0**32


def _project_out(u, basis):
    for d in basis:
        u -= (d @ u) * d


def lambda1(op, tol=1e-10, max_matvecs=_DEFAULT_MAX_MATVECS, deflate=()):
    """Largest eigenvalue of a symmetric operator via restarted Lanczos.

    With `deflate` (unit vectors), works in their orthogonal complement and
    returns the largest eigenvalue there; used by lambda2. The returned
    residual is the explicitly computed ||A v - value v||_2.
    """
    n = op.n
    if n < 1:
        raise DimensionError("operator must have dimension >= 1")
    deflate = [np.asarray(d, dtype=np.float64) for d in deflate]
    if len(deflate) >= n:
        raise DimensionError("deflation space exhausts the operator")

    shift = op.max_abs_row_sum()
    scale = max(shift, 1.0e-30)

    q = _start_vector(n)
    _project_out(q, deflate)
    nq = np.linalg.norm(q)
    if nq == 0.0:
        raise ConvergenceError("start vector lies in the deflation space")
    q /= nq

    matvecs = 0
    best = None
    while matvecs < max_matvecs:
        m = min(n - len(deflate), _MAX_BASIS)
        V = np.zeros((m, n))
        alphas = np.zeros(m)
        betas = np.zeros(max(m - 1, 0))
        k = 0
        invariant = False
        while k < m:
            V[k] = q
            u = op.matvec(q)
            matvecs += 1
            u += shift * q
            _project_out(u, deflate)
            alphas[k] = q @ u
            u -= alphas[k] * q
            if k > 0:
                u -= betas[k - 1] * V[k - 1]
            # full reorthogonalization, twice for safety
            for _ in range(2):
                u -= V[: k + 1].T @ (V[: k + 1] @ u)
                _project_out(u, deflate)
            beta = np.linalg.norm(u)
            theta, y = _top_ritz(alphas[: k + 1], betas[:k])
            est = beta * abs(y[-1])
            if est <= tol * scale or beta <= 1e-14 * scale:
                invariant = beta <= 1e-14 * scale
                k += 1
                break
            if k + 1 < m:
                betas[k] = beta
            q = u / beta
            k += 1
        vec = y @ V[:k]
        _project_out(vec, deflate)
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            raise ConvergenceError("Ritz vector vanished after deflation")
        vec /= norm
        value = float(theta - shift)
        resid = float(np.linalg.norm(op.matvec(vec) - value * vec))
        matvecs += 1
        best = EigenResult(value, vec, resid)
        if resid <= max(tol * scale, 1e-13 * scale) or invariant:
            return best
        q = vec  # restart from the best Ritz vector
    raise ConvergenceError(
        f"Lanczos did not converge within {max_matvecs} matvecs", residual=best.residual
    )


def _top_ritz(alphas, betas):
    k = len(alphas)
    if k == 1:
        return float(alphas[0]), np.array([1.0])
    T = np.diag(alphas) + np.diag(betas, 1) + np.diag(betas, -1)
    vals, vecs = np.linalg.eigh(T)
    return float(vals[-1]), vecs[:, -1]


def lambda2(G, tol=1e-10, max_matvecs=_DEFAULT_MAX_MATVECS):
    """Second largest adjacency eigenvalue of a connected graph.

    For weighted-regular graphs the all-ones vector is the known top
    eigenvector and the solver runs directly in its complement; otherwise the
    top eigenpair is computed first and deflated.
    """
    if G.vertex_count < 2:
        raise DimensionError("lambda2 needs at least two vertices")
    if not G.is_connected():
        raise ConnectivityError("lambda2 requires a connected graph")
    op = adjacency_operator(G)
    w = G.regularity()
    if w is not None:
        ones = np.full(G.vertex_count, 1.0 / math.sqrt(G.vertex_count))
        return lambda1(op, tol=tol, max_matvecs=max_matvecs, deflate=(ones,))
    top = lambda1(op, tol=tol, max_matvecs=max_matvecs)
    return lambda1(op, tol=tol, max_matvecs=max_matvecs, deflate=(top.vector,))
