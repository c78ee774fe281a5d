"""Right-hand sides of the spectral lower bounds and their constants.

The scalar profile at the heart of the regular-graph bounds is
edge_term(y, w) = y^{3/2} (w - y)^{1/2}, convex on [0, mu w] and concave on
[mu w, w] with mu = (3 - sqrt(3)) / 4. The refined constants (t0, x0) solve
the tangency system: the tangent of edge_term at t0 w meets the curve again
exactly at x0 w with x0 = 2 sqrt(t0 (1 - t0)); both are w-independent because
edge_term is jointly homogeneous of degree 2 in (y, w).

All edge sums use compensated summation so the cross-checks between the
general, strong and simple forms hold to 1e-12.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import compensated_sum
from .errors import (
    ApplicabilityError,
    ConvergenceError,
    DomainError,
    RegularityError,
    ZeroDenominatorError,
)

CONSISTENCY_TOL = 1e-12


class EdgeFunction:
    """A function g on the directed edges, by selector or explicit table."""

    def __init__(self, kind, table=None):
        if kind not in ("one", "inv-sqrt-complement", "table"):
            raise ValueError(f"unknown edge function kind {kind!r}")
        self.kind = kind
        self.table = table

    @classmethod
    def one(cls):
        return cls("one")

    @classmethod
    def inv_sqrt_complement(cls):
        """g(e) = (w - w_e)^(-1/2) on a w-regular graph."""
        return cls("inv-sqrt-complement")

    @classmethod
    def from_table(cls, table):
        """Explicit values keyed by directed edge id."""
        return cls("table", table=np.asarray(table, dtype=np.float64))

    def values(self, edges, w=None):
        if self.kind == "one":
            return np.ones(edges.count)
        if self.kind == "inv-sqrt-complement":
            if w is None:
                w = edges.graph.regularity()
                if w is None:
                    raise RegularityError("inv-sqrt-complement needs a weighted-regular graph")
            comp = w - edges.weight
            if comp.size and comp.min() <= 0.0:
                raise DomainError("inv-sqrt-complement requires w_e < w for every edge")
            return 1.0 / np.sqrt(comp)
        vals = self.table
        if len(vals) != edges.count:
            raise ValueError("edge function table has wrong length")
        if not np.isfinite(vals).all():
            raise ValueError("edge function table must be finite")
        return vals.copy()

    def __repr__(self):
        return f"EdgeFunction({self.kind})"


@dataclass
class BoundValue:
    kind: str
    value: float
    inputs: dict = field(default_factory=dict)
    applicability: dict = field(default_factory=dict)

    @property
    def applicable(self):
        return all(self.applicability.values()) if self.applicability else True


def general_rhs(G, chain, g):
    """Bound of the general theorem for an assigned chain and edge function g.

    sum over prolongations of w(e2) g(e1) g(e2) pi(e1) sqrt(p(e1,e2)),
    divided by sum over edges of g(e)^2 pi(e).
    """
    edges = chain.edges
    if edges.graph is not G:
        raise ValueError("chain was built for a different graph")
    if chain.stationary is None:
        raise ValueError("chain has no stationary distribution")
    gv = g.values(edges)
    pi = chain.stationary
    ptr = edges.prol_indptr
    counts = ptr[1:] - ptr[:-1]
    e2 = edges.prol_indices
    terms = (
        edges.weight[e2]
        * np.repeat(gv, counts)
        * gv[e2]
        * np.repeat(pi, counts)
        * np.sqrt(chain.probs)
    )
    num = compensated_sum(terms)
    den = compensated_sum(gv * gv * pi)
    if den == 0.0:
        raise ZeroDenominatorError("g vanishes on the support of pi")
    return num / den


def _regular_weight(G, w=None):
    reg = G.regularity()
    if reg is None:
        raise RegularityError("graph is not weighted-regular")
    if w is not None and abs(reg - w) > 1e-9 * max(abs(w), 1.0):
        raise RegularityError(f"graph regularity {reg} does not match requested w={w}")
    return reg if w is None else float(w)


def strong_rhs(G, w=None, g=None):
    """Strong-form bound for a w-regular graph.

    Direct evaluation of
    sum g(e1) g(e2) w(e1) w(e2)^{3/2} (w - w(e1))^{1/2} over prolongations,
    divided by sum g(e)^2 w(e) (w - w(e)); cross-checked against the general
    theorem with the weighted chain to 1e-12.
    """
    from .markov import weighted_nb_chain

    w = _regular_weight(G, w)
    if g is None:
        g = EdgeFunction.one()
    edges = G.directed_edges()
    gv = g.values(edges, w=w)
    comp = w - edges.weight
    if comp.size and comp.min() <= 0.0:
        raise RegularityError("strong form needs w_e < w (minimum degree 2)")
    ptr = edges.prol_indptr
    counts = ptr[1:] - ptr[:-1]
    e2 = edges.prol_indices
    terms = (
        np.repeat(gv, counts)
        * gv[e2]
        * np.repeat(edges.weight, counts)
        * edges.weight[e2] ** 1.5
        * np.repeat(np.sqrt(comp), counts)
    )
    num = compensated_sum(terms)
    den = compensated_sum(gv * gv * edges.weight * comp)
    if den == 0.0:
        raise ZeroDenominatorError("g vanishes everywhere")
    value = num / den
    check = general_rhs(G, weighted_nb_chain(G), g)
    if abs(value - check) > CONSISTENCY_TOL * max(1.0, abs(value)):
        raise ConvergenceError(
            f"strong form disagrees with the general theorem: {value} vs {check}",
            residual=abs(value - check),
        )
    return value


def simple_rhs(G, w=None):
    """sum_e w_e^{3/2} (w - w_e)^{1/2} / (w |V|) for a w-regular graph."""
    w = _regular_weight(G, w)
    edges = G.directed_edges()
    comp = w - edges.weight
    if comp.size and comp.min() < 0.0:
        raise RegularityError("edge weight exceeds the regular degree")
    total = compensated_sum(edges.weight**1.5 * np.sqrt(comp))
    return total / (w * G.vertex_count)


def mu():
    """Inflection constant (3 - sqrt(3)) / 4 of the edge-term profile."""
    return (3.0 - math.sqrt(3.0)) / 4.0


def edge_term(y, w):
    """Per-edge contribution y^{3/2} (w - y)^{1/2} to the simple bound."""
    if y < 0 or y > w:
        raise DomainError(f"edge_term defined on [0, w], got y={y}, w={w}")
    return y**1.5 * math.sqrt(w - y)


def _edge_term_slope(y, w):
    # d/dy of y^{3/2} (w - y)^{1/2}
    return math.sqrt(y) * (3.0 * w - 4.0 * y) / (2.0 * math.sqrt(w - y))


def threshold_degree():
    """Least degree d >= 2 with 2 sqrt(d-1)/d <= mu.

    The larger root of mu^2 d^2 - 4 d + 4 = 0. Solves to about 38.782; the
    defining identity is verified to 1e-12 before returning.
    """
    m = mu()
    d = (2.0 + 2.0 * math.sqrt(1.0 - m * m)) / (m * m)
    if abs(2.0 * math.sqrt(d - 1.0) / d - m) > 1e-12:
        raise ConvergenceError("threshold degree failed its defining identity")
    return d


def weak_applicable(d):
    """True when the weak form applies at average combinatorial degree d."""
    return d >= 2.0 and 2.0 * math.sqrt(d - 1.0) / d <= mu()


def refined_applicable(d):
    """True when the tangent-refined weak form applies (d >= 1/t0)."""
    t0, _x0 = refined_constants()
    return d >= 1.0 / t0


def weak_rhs(w, d):
    """Weak-form bound w sqrt(d-1) / d with its applicability record."""
    if d < 2.0:
        raise ApplicabilityError("weak form needs average combinatorial degree >= 2")
    if w <= 0.0:
        raise ValueError("w must be positive")
    return BoundValue(
        kind="weak-regular",
        value=w * math.sqrt(d - 1.0) / d,
        inputs={"w": w, "d": d},
        applicability={
            "standard (2 sqrt(d-1)/d <= mu)": weak_applicable(d),
            "refined (d >= 1/t0)": refined_applicable(d),
        },
    )


@functools.lru_cache(maxsize=None)
def refined_constants(tol=1e-14):
    """(t0, x0): the unique tangency solution with 0 < t0 < mu < x0.

    Solved at w = 1 (both constants are w-independent) by bisection of
    edge_term(x(t)) - tangent_t(x(t)) with x(t) = 2 sqrt(t (1 - t)) over
    (0, mu); the bracket must change sign, anything else is a programming
    error.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = mu()

    def gap(t):
        x = 2.0 * math.sqrt(t * (1.0 - t))
        slope, intercept = tangent_line(t, 1.0)
        return edge_term(x, 1.0) - (slope * x + intercept)

    lo, hi = 1e-6, m - 1e-6
    flo, fhi = gap(lo), gap(hi)
    if (flo < 0.0) == (fhi < 0.0):
        raise ConvergenceError("no sign change in the tangency bracket")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = gap(mid)
        if (fmid < 0.0) == (flo < 0.0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
        if hi - lo <= tol:
            break
    t0 = 0.5 * (lo + hi)
    x0 = 2.0 * math.sqrt(t0 * (1.0 - t0))
    if not (0.0 < t0 < m < x0):
        raise ConvergenceError("tangency solution violates 0 < t0 < mu < x0")
    return t0, x0


def tangent_line(t, w):
    """(slope, intercept) of the tangent of edge_term(., w) at y = t w."""
    if not 0.0 < t < 1.0:
        raise DomainError("t must lie in (0, 1)")
    if w <= 0.0:
        raise ValueError("w must be positive")
    y = t * w
    slope = _edge_term_slope(y, w)
    return slope, edge_term(y, w) - slope * y


def h_eval(y, t0, w):
    """Convex minorant: edge_term below t0 w, its tangent on (t0 w, x0 w]."""
    x0 = 2.0 * math.sqrt(t0 * (1.0 - t0))
    if y < 0.0 or y > x0 * w + 1e-12 * w:
        raise DomainError(f"h defined on [0, x0 w] = [0, {x0 * w}], got {y}")
    if y <= t0 * w:
        return edge_term(y, w)
    slope, intercept = tangent_line(t0, w)
    return slope * y + intercept


def alon_boppana_rhs(w, d, r):
    """lambda1(P_{r+1}) * w sqrt(d-1) / d, the second-eigenvalue bound."""
    from .spectra import path_lambda1

    if d < 2.0:
        raise ApplicabilityError("needs average combinatorial degree >= 2")
    if r < 1:
        raise ValueError("r must be a positive integer")
    if w <= 0.0:
        raise ValueError("w must be positive")
    return path_lambda1(r + 1) * w * math.sqrt(d - 1.0) / d


def universal_cover_rhs(G, chain, g):
    """Lower bound for the spectral radius of the universal cover: 2x general."""
    return 2.0 * general_rhs(G, chain, g)
