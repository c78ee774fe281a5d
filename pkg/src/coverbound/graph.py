"""Weighted graphs and their directed-edge layer.

A weighted graph is simple (no loops, no parallel edges) and undirected, with
a positive weight on every edge. Vertices live at dense integer ids 0..n-1;
arbitrary string labels from input files are kept in a label map. The
directed-edge layer doubles every edge into the two orientations and indexes
the prolongation relation: (y, x) prolongs (z, y) when x != z.
"""

from __future__ import annotations

import math

import numpy as np

from ._arrays import expand_ranges
from .errors import GraphFormatError, VertexError


class WeightedGraph:
    """Validated weighted graph, immutable after construction.

    edges are stored canonically as (u, v, w) with u < v, sorted by (u, v).
    """

    def __init__(self, vertex_count, edges, labels=None):
        n = int(vertex_count)
        if n < 0:
            raise ValueError("vertex_count must be non-negative")
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise ValueError("labels must match vertex_count")
        self._n = n
        self._labels = tuple(str(x) for x in labels)

        canon = []
        seen = set()
        for u, v, w in edges:
            u = int(u)
            v = int(v)
            w = float(w)
            if not (0 <= u < n and 0 <= v < n):
                raise VertexError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise GraphFormatError(f"loop at vertex {u}")
            if not (math.isfinite(w) and w > 0.0):
                raise GraphFormatError(f"edge ({u}, {v}) has non-positive or non-finite weight {w}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphFormatError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            canon.append((key[0], key[1], w))
        canon.sort()
        self._edges = tuple(canon)

        # CSR adjacency over both orientations, neighbors sorted per row
        m = len(canon)
        eu = np.fromiter((e[0] for e in canon), dtype=np.int64, count=m)
        ev = np.fromiter((e[1] for e in canon), dtype=np.int64, count=m)
        ew = np.fromiter((e[2] for e in canon), dtype=np.float64, count=m)
        rows = np.concatenate([eu, ev])
        cols = np.concatenate([ev, eu])
        vals = np.concatenate([ew, ew])
        order = np.lexsort((cols, rows))
        self._adj_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=self._adj_indptr[1:])
        self._adj_indices = cols[order]
        self._adj_data = vals[order]
        self._edge_u, self._edge_v, self._edge_w = eu, ev, ew
        self._directed = None

    # -- basic queries -------------------------------------------------

    @property
    def vertex_count(self):
        return self._n

    @property
    def edge_count(self):
        return len(self._edges)

    @property
    def edges(self):
        return self._edges

    @property
    def labels(self):
        return self._labels

    def label(self, v):
        return self._labels[v]

    def index_of(self, label):
        try:
            return self._labels.index(str(label))
        except ValueError:
            raise VertexError(f"unknown vertex label {label!r}") from None

    def _check_vertex(self, v):
        if not 0 <= v < self._n:
            raise VertexError(f"vertex {v} out of range for {self._n} vertices")

    def neighbors(self, v):
        """Pairs (neighbor, weight) sorted by neighbor id."""
        self._check_vertex(v)
        lo, hi = self._adj_indptr[v], self._adj_indptr[v + 1]
        return list(zip(self._adj_indices[lo:hi].tolist(), self._adj_data[lo:hi].tolist()))

    def weighted_degree(self, v):
        self._check_vertex(v)
        lo, hi = self._adj_indptr[v], self._adj_indptr[v + 1]
        return float(math.fsum(self._adj_data[lo:hi]))

    def weighted_degrees(self):
        out = np.zeros(self._n)
        np.add.at(out, self._edge_u, self._edge_w)
        np.add.at(out, self._edge_v, self._edge_w)
        return out

    def degree(self, v):
        self._check_vertex(v)
        return int(self._adj_indptr[v + 1] - self._adj_indptr[v])

    def degrees(self):
        return np.diff(self._adj_indptr)

    def regularity(self, rel_tol=1e-9):
        """Common weighted degree if the graph is regular within rel_tol, else None."""
        if self._n == 0:
            raise ValueError("empty graph")
        degs = self.weighted_degrees()
        w = float(degs.mean())
        if w <= 0.0:
            return None
        if float(np.abs(degs - w).max()) <= rel_tol * w:
            return w
        return None

    def average_combinatorial_degree(self):
        if self._n == 0:
            raise ValueError("empty graph")
        return 2.0 * len(self._edges) / self._n

    def min_combinatorial_degree(self):
        if self._n == 0:
            return 0
        return int(self.degrees().min())

    def csr_adjacency(self):
        return self._adj_indptr, self._adj_indices, self._adj_data

    def bfs_distances(self, v):
        """Unweighted shortest-path distances from v; -1 marks unreachable."""
        self._check_vertex(v)
        dist = np.full(self._n, -1, dtype=np.int64)
        dist[v] = 0
        frontier = np.array([v], dtype=np.int64)
        d = 0
        while frontier.size:
            d += 1
            counts = self._adj_indptr[frontier + 1] - self._adj_indptr[frontier]
            nbrs = self._adj_indices[expand_ranges(self._adj_indptr[frontier], counts)]
            fresh = nbrs[dist[nbrs] < 0]
            if fresh.size == 0:
                break
            fresh = np.unique(fresh)
            dist[fresh] = d
            frontier = fresh
        return dist

    def is_connected(self):
        if self._n <= 1:
            return True
        return bool((self.bfs_distances(0) >= 0).all())

    def directed_edges(self):
        """The doubled directed-edge set with twin and prolongation indices (cached)."""
        if self._directed is None:
            self._directed = DirectedEdgeSet(self)
        return self._directed

    # -- serialization -------------------------------------------------

    def serialize(self):
        """Edge-list text: one `<u> <v> <weight>` line per edge, sorted by (u, v)."""
        lines = [
            f"{self._labels[u]} {self._labels[v]} {w:.17g}" for u, v, w in self._edges
        ]
        return "\n".join(lines) + ("\n" if lines else "")

    def __repr__(self):
        return f"WeightedGraph(n={self._n}, m={len(self._edges)})"


class DirectedEdge:
    """Single directed edge view: id, tail, head, weight and twin id."""

    __slots__ = ("id", "tail", "head", "weight", "twin")

    def __init__(self, eid, tail, head, weight, twin):
        self.id = eid
        self.tail = tail
        self.head = head
        self.weight = weight
        self.twin = twin

    def __repr__(self):
        return f"DirectedEdge({self.id}: {self.tail}->{self.head}, w={self.weight})"


class DirectedEdgeSet:
    """All 2|E| orientations of a graph's edges, sorted by (tail, head).

    `prol_indptr`/`prol_indices` store, per directed edge e1 = (z, y), the
    sorted ids of the edges (y, x) with x != z that prolong it.
    """

    def __init__(self, graph):
        self.graph = graph
        indptr, indices, data = graph.csr_adjacency()
        n = graph.vertex_count
        count = int(indptr[-1])
        self.count = count
        self.tail = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
        self.head = indices.copy()
        self.weight = data.copy()
        self.first_out = indptr.copy()

        # twin id: the edge set is closed under reversal and stored in
        # (tail, head) order, so ranking edges by (head, tail) aligns each
        # edge with its reverse.
        self.twin = np.empty(count, dtype=np.int64)
        if count:
            by_reverse = np.lexsort((self.tail, self.head))
            self.twin[by_reverse] = np.arange(count, dtype=np.int64)

        # prolongations: out-edges of head, minus the twin
        out_deg = np.diff(indptr)
        counts = out_deg[self.head] - 1 if count else np.empty(0, dtype=np.int64)
        self.prol_indptr = np.zeros(count + 1, dtype=np.int64)
        np.cumsum(counts, out=self.prol_indptr[1:])
        if count:
            cand = expand_ranges(self.first_out[self.head], out_deg[self.head])
            keep = cand != np.repeat(self.twin, out_deg[self.head])
            self.prol_indices = cand[keep]
        else:
            self.prol_indices = np.empty(0, dtype=np.int64)

    def edge(self, eid):
        return DirectedEdge(
            int(eid),
            int(self.tail[eid]),
            int(self.head[eid]),
            float(self.weight[eid]),
            int(self.twin[eid]),
        )

    def edge_id(self, tail, head):
        """Id of directed edge (tail, head); raises if absent."""
        lo, hi = self.first_out[tail], self.first_out[tail + 1]
        pos = lo + np.searchsorted(self.head[lo:hi], head)
        if pos >= hi or self.head[pos] != head:
            raise VertexError(f"({tail}, {head}) is not an edge")
        return int(pos)

    def prolongations(self, eid):
        """Sorted ids of edges prolonging `eid`."""
        return self.prol_indices[self.prol_indptr[eid]:self.prol_indptr[eid + 1]]

    def out_edges(self, v):
        """Ids of directed edges with tail v (a contiguous ascending range)."""
        return np.arange(self.first_out[v], self.first_out[v + 1], dtype=np.int64)


def parse_graph(text):
    """Parse the edge-list format into a validated WeightedGraph.

    One edge per line as `<u> <v> <weight>`; `#` starts a comment; blank lines
    are ignored. Labels are arbitrary strings, remapped to dense ids (numeric
    order when every label is an integer, lexicographic otherwise).
    """
    raw = []
    seen = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 3:
            raise GraphFormatError("expected '<u> <v> <weight>'", line=lineno)
        lu, lv, ws = parts
        try:
            w = float(ws)
        except ValueError:
            raise GraphFormatError(f"bad weight {ws!r}", line=lineno) from None
        if not math.isfinite(w) or w <= 0.0:
            raise GraphFormatError(f"weight must be positive and finite, got {ws}", line=lineno)
        if lu == lv:
            raise GraphFormatError(f"loop at vertex {lu!r}", line=lineno)
        key = (lu, lv) if lu < lv else (lv, lu)
        if key in seen:
            raise GraphFormatError(
                f"duplicate edge {lu!r} {lv!r} (first seen at line {seen[key]})", line=lineno
            )
        seen[key] = lineno
        raw.append((lu, lv, w))

    labels = sorted({l for e in raw for l in e[:2]}, key=_label_sort_key)
    index = {l: i for i, l in enumerate(labels)}
    return WeightedGraph(
        len(labels), [(index[u], index[v], w) for u, v, w in raw], labels=labels
    )


def _label_sort_key(label):
    try:
        return (0, int(label), label)
    except ValueError:
        return (1, 0, label)
