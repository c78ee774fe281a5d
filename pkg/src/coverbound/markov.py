"""Stationary Markov chains on the directed-edge set of a graph.

States are the 2|E| directed edges; transitions are supported exactly on the
prolongation relation, so the transition matrix reuses the prolongation CSR
layout with a parallel probability array. Two chains are provided: the
uniform non-backtracking chain (next edge uniform among prolongations) and
the weighted chain with p(e1 -> e2) = w(e2) / (w_head(e1) - w(e1)), whose
stationary distribution has the closed form pi_e = w_e (w - w_e) / S on
weighted-regular graphs.
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .errors import ConvergenceError, DegreeError, RegularityError, VertexError

ROW_SUM_TOL = 1e-12
FIXED_POINT_TOL = 1e-12
ITERATIVE_TOL = 1e-10
MAX_ITER = 100_000


class ChainSpec:
    """Sparse row-stochastic chain over a DirectedEdgeSet, plus stationary pi.

    `probs` is aligned entry-for-entry with edges.prol_indices, which makes
    the support condition (transitions only along prolongations) structural.
    """

    def __init__(self, edges, probs, stationary=None, kind="custom"):
        self.edges = edges
        self.probs = np.asarray(probs, dtype=np.float64)
        self.kind = kind
        if len(self.probs) != len(edges.prol_indices):
            raise ValueError("probability array must align with the prolongation index")
        if self.probs.size and self.probs.min() < 0.0:
            raise ValueError("negative transition probability")
        row_sums = self.row_sums()
        nonempty = (edges.prol_indptr[1:] - edges.prol_indptr[:-1]) > 0
        if nonempty.any() and np.abs(row_sums[nonempty] - 1.0).max() > ROW_SUM_TOL:
            raise ValueError("rows must sum to 1 within 1e-12")
        if (~nonempty).any():
            raise DegreeError("absorbing state: a vertex has combinatorial degree <= 1")
        self.stationary = None
        if stationary is not None:
            self.set_stationary(stationary)

    @property
    def n_states(self):
        return self.edges.count

    def row_sums(self):
        sums = np.zeros(self.n_states)
        if self.probs.size:
            ptr = self.edges.prol_indptr
            nonempty = ptr[:-1] != ptr[1:]
            sums[nonempty] = np.add.reduceat(self.probs, ptr[:-1][nonempty])
        return sums

    def set_stationary(self, pi, tol=FIXED_POINT_TOL):
        pi = np.asarray(pi, dtype=np.float64)
        if len(pi) != self.n_states:
            raise ValueError("stationary distribution has wrong length")
        if pi.min() < 0.0 or abs(float(pi.sum()) - 1.0) > 1e-12:
            raise ValueError("stationary distribution must be a probability vector")
        resid = float(np.abs(self.apply(pi) - pi).max())
        if resid > tol:
            raise ConvergenceError(
                f"claimed stationary distribution is not a fixed point (residual {resid:.3e})",
                residual=resid,
            )
        self.stationary = pi

    def apply(self, pi):
        """Row-vector product pi @ P."""
        ptr = self.edges.prol_indptr
        counts = ptr[1:] - ptr[:-1]
        contrib = np.repeat(pi, counts) * self.probs
        return np.bincount(self.edges.prol_indices, weights=contrib, minlength=self.n_states)

    def transition_prob(self, e1, e2):
        """p(e1 -> e2); zero when e2 does not prolong e1."""
        lo, hi = self.edges.prol_indptr[e1], self.edges.prol_indptr[e1 + 1]
        row = self.edges.prol_indices[lo:hi]
        pos = lo + np.searchsorted(row, e2)
        if pos < hi and self.edges.prol_indices[pos] == e2:
            return float(self.probs[pos])
        return 0.0

    def cumulative_rows(self):
        """Per-row cumulative probabilities, aligned with prol_indices."""
        ptr = self.edges.prol_indptr
        counts = ptr[1:] - ptr[:-1]
        c = np.cumsum(self.probs)
        base = c[ptr[:-1]] - self.probs[ptr[:-1]]
        return c - np.repeat(base, counts)


def _require_min_degree_two(G):
    if G.vertex_count == 0 or G.min_combinatorial_degree() < 2:
        raise DegreeError("chain construction requires minimum combinatorial degree 2")


def uniform_nb_chain(G):
    """Next edge chosen uniformly among prolongations; pi is uniform."""
    _require_min_degree_two(G)
    edges = G.directed_edges()
    degs = G.degrees()
    counts = edges.prol_indptr[1:] - edges.prol_indptr[:-1]
    probs = np.repeat(1.0 / (degs[edges.head] - 1.0), counts)
    pi = np.full(edges.count, 1.0 / edges.count)
    return ChainSpec(edges, probs, stationary=pi, kind="uniform")


def weighted_nb_chain(G):
    """p(e1 -> e2) = w(e2) / (w_head(e1) - w(e1)).

    Row-stochastic on any graph of minimum degree 2; on w-regular graphs the
    denominator equals w - w(e1) and pi has the closed form below.
    """
    _require_min_degree_two(G)
    edges = G.directed_edges()
    wdeg = G.weighted_degrees()
    denom = wdeg[edges.head] - edges.weight
    if denom.size and denom.min() <= 0.0:
        raise DegreeError("zero transition denominator (degenerate weights)")
    counts = edges.prol_indptr[1:] - edges.prol_indptr[:-1]
    probs = edges.weight[edges.prol_indices] / np.repeat(denom, counts)
    chain = ChainSpec(edges, probs, kind="weighted")
    w = G.regularity()
    if w is not None:
        chain.set_stationary(closed_form_stationary(G, w))
    else:
        chain.set_stationary(
            stationary_iterative(chain, tol=ITERATIVE_TOL, max_iter=MAX_ITER),
            tol=10 * ITERATIVE_TOL,
        )
    return chain


def closed_form_stationary(G, w):
    """pi_e = w_e (w - w_e) / S for the weighted chain on a w-regular graph.

    Verifies regularity and the fixed-point property before returning.
    """
    reg = G.regularity()
    if reg is None or abs(reg - w) > 1e-9 * max(w, 1.0):
        raise RegularityError(f"graph is not {w}-regular")
    edges = G.directed_edges()
    vals = edges.weight * (w - edges.weight)
    if vals.size and vals.min() <= 0.0:
        raise RegularityError("closed form needs w_e < w on every edge")
    pi = vals / _kernels.compensated_sum(vals)
    # verify pi P = pi against the weighted transition matrix
    wdeg = G.weighted_degrees()
    denom = wdeg[edges.head] - edges.weight
    counts = edges.prol_indptr[1:] - edges.prol_indptr[:-1]
    probs = edges.weight[edges.prol_indices] / np.repeat(denom, counts)
    contrib = np.repeat(pi, counts) * probs
    pp = np.bincount(edges.prol_indices, weights=contrib, minlength=edges.count)
    resid = float(np.abs(pp - pi).max())
    if resid > FIXED_POINT_TOL:
        raise ConvergenceError(
            f"closed-form stationary failed fixed-point check ({resid:.3e})", residual=resid
        )
    return pi


def stationary_iterative(chain, tol=ITERATIVE_TOL, max_iter=MAX_ITER, init=None, damping="auto"):
    """Stationary distribution by repeated application of P.

    Starts from `init` (default uniform). Pure power iteration can oscillate
    on periodic prolongation digraphs; when the l1 residual fails to decrease
    over 50 iterations and damping is "auto", iteration restarts as
    pi <- (1 - a) pi P + a uniform with a = 0.05. Pass damping="off" to
    disable the fallback or a float to force a damping weight.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be positive")
    n = chain.n_states
    uniform = np.full(n, 1.0 / n)
    pi = uniform.copy() if init is None else np.asarray(init, dtype=np.float64).copy()
    if abs(float(pi.sum()) - 1.0) > 1e-9 or pi.min() < 0.0:
        raise ValueError("init must be a probability vector")

    if isinstance(damping, str):
        if damping not in ("auto", "off"):
            raise ValueError("damping must be 'auto', 'off' or a float")
        alpha = 0.0
    else:
        alpha = float(damping)
    stall = 0
    prev_resid = math.inf
    for it in range(max_iter):
        nxt = chain.apply(pi)
        if alpha > 0.0:
            nxt = (1.0 - alpha) * nxt + alpha * uniform
        resid = float(np.abs(nxt - pi).sum())
        pi = nxt
        if resid <= tol:
            return pi
        if resid >= prev_resid - 1e-15:
            stall += 1
            if stall >= 50 and alpha == 0.0 and damping == "auto":
                alpha = 0.05
                stall = 0
                prev_resid = math.inf
                continue
        else:
            stall = 0
        prev_resid = resid
    raise ConvergenceError(
        f"stationary iteration did not reach {tol} in {max_iter} iterations "
        f"(final residual {resid:.3e})",
        residual=resid,
    )


def walk_probability(chain, walk):
    """Probability of a non-backtracking walk under the chain.

    pi of the first edge times the transition probabilities along the walk.
    Rejects backtracking steps and non-edges.
    """
    if chain.stationary is None:
        raise ValueError("chain has no stationary distribution")
    walk = [int(v) for v in walk]
    if len(walk) < 2:
        raise ValueError("walk must have length >= 1")
    for i in range(2, len(walk)):
        if walk[i] == walk[i - 2]:
            raise ValueError(f"walk backtracks at position {i}")
    edges = chain.edges
    try:
        eids = [edges.edge_id(walk[i], walk[i + 1]) for i in range(len(walk) - 1)]
    except VertexError as exc:
        raise ValueError(f"walk uses a non-edge: {exc}") from None
    p = float(chain.stationary[eids[0]])
    for e1, e2 in zip(eids, eids[1:]):
        p *= chain.transition_prob(e1, e2)
    return p


def sample_edge_frequencies(chain, steps, burn_in=0, seed=0):
    """Empirical visit frequencies of a simulated trajectory.

    The start state is drawn from pi; `steps` states after `burn_in` are
    counted. Deterministic for a fixed seed, identical across kernel
    backends. steps=0 yields the all-zero distribution.
    """
    if chain.stationary is None:
        raise ValueError("chain has no stationary distribution")
    steps = int(steps)
    burn_in = int(burn_in)
    if steps < 0 or burn_in < 0:
        raise ValueError("steps and burn_in must be non-negative")
    n = chain.n_states
    if steps == 0:
        return np.zeros(n)
    counts = _kernels.chain_sample(
        chain.edges.prol_indptr,
        chain.edges.prol_indices,
        chain.cumulative_rows(),
        np.cumsum(chain.stationary),
        steps,
        burn_in,
        int(seed) & ((1 << 64) - 1),
    )
    return counts / float(steps)
