"""Independent brute-force references.

Everything here is deliberately separate from the production code paths: the
walk enumerator recurses over adjacency lists, and the dense eigensolver is a
self-contained cyclic Jacobi iteration. These are the second route used to
validate the sparse solver, the tree construction and the chain algebra at
small scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import BudgetExceededError, ConvergenceError, DimensionError

_MAX_DENSE_N = 2000


@dataclass
class WalkEnumeration:
    counts: list  # walks of each length 0..r
    walks: list = field(default_factory=list)  # same, grouped by length


def enumerate_nb_walks(G, v, r, budget=1_000_000):
    """All non-backtracking walks of length <= r from v, grouped by length."""
    G._check_vertex(v)
    walks = [[(v,)]]
    total = 1
    for depth in range(1, r + 1):
        level = []
        for walk in walks[depth - 1]:
            last = walk[-1]
            prev = walk[-2] if len(walk) >= 2 else None
            for nbr, _w in G.neighbors(last):
                if nbr == prev:
                    continue
                level.append(walk + (nbr,))
                total += 1
                if total > budget:
                    raise BudgetExceededError(depth, total, budget)
        walks.append(level)
    return WalkEnumeration(counts=[len(lv) for lv in walks], walks=walks)


@dataclass
class DenseSpectrum:
    values: np.ndarray  # descending
    vectors: np.ndarray | None  # columns aligned with values


def dense_eigs(A, tol=1e-10, vectors=True, max_sweeps=100):
    """Full spectrum of a symmetric matrix by cyclic Jacobi rotations.

    Stops once the off-diagonal Frobenius mass drops below tol * ||A||_F.
    Limited to n <= 2000; this is an oracle, not a production solver.
    """
    a = np.array(A, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("square matrix required")
    n = a.shape[0]
    if n > _MAX_DENSE_N:
        raise DimensionError(f"dense oracle limited to n <= {_MAX_DENSE_N}, got {n}")
    if n == 0:
        return DenseSpectrum(np.empty(0), np.empty((0, 0)) if vectors else None)
    asym = np.abs(a - a.T).max()
    if asym > 1e-12 * max(1.0, np.abs(a).max()):
        raise ValueError("matrix is not symmetric")

    v = np.eye(n)
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        vals = np.zeros(n)
        return DenseSpectrum(vals, v if vectors else None)
    for _sweep in range(max_sweeps):
        off = _offdiag_norm(a)
        if off <= tol * norm:
            break
        thresh = min(off / n, tol * norm / n)
        if _kernels.jacobi_cycle(a, v, thresh) == 0:
            # nothing above threshold; sweep once more with a smaller one
            if _kernels.jacobi_cycle(a, v, 0.0) == 0:
                break
    else:
        raise ConvergenceError(
            f"Jacobi did not converge in {max_sweeps} sweeps", residual=_offdiag_norm(a)
        )
    if _offdiag_norm(a) > tol * norm:
        raise ConvergenceError("Jacobi finished above tolerance", residual=_offdiag_norm(a))
    vals = np.diag(a).copy()
    order = np.argsort(-vals, kind="stable")
    return DenseSpectrum(vals[order], v[:, order] if vectors else None)


def _offdiag_norm(a):
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def dense_lambda_top(A, tol=1e-10):
    """Largest eigenvalue via the Jacobi oracle."""
    return float(dense_eigs(A, tol=tol, vectors=False).values[0])


def jensen_gap(values, fn):
    """(sum fn(v_i), n * fn(mean)) for a convex fn; raises if the sum dips below.

    The inequality holds exactly for convex fn on a convex domain; a small
    rounding guard keeps equality cases from tripping the check.
    """
    values = list(values)
    if not values:
        raise ValueError("values must be non-empty")
    lhs = math.fsum(fn(v) for v in values)
    mean = math.fsum(values) / len(values)
    rhs = len(values) * fn(mean)
    if lhs < rhs - 1e-12 * max(1.0, abs(rhs)):
        raise ValueError(f"Jensen inequality violated: {lhs} < {rhs}")
    return lhs, rhs
