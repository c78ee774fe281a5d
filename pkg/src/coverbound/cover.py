"""Balls, unraveled balls, residual subgraphs and weighted-degree cores.

The unraveled ball of radius r at v is the tree of all non-backtracking walks
of length at most r starting at v; it equals the radius-r ball around a lift
of v in the universal cover. It is stored as a parent array in BFS order
(levels contiguous, children ordered by extending directed-edge id), never as
explicit walk sequences.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from ._arrays import expand_ranges
from .errors import BudgetExceededError
from .graph import WeightedGraph

DEFAULT_NODE_BUDGET = 10_000_000


class UnraveledBall:
    """Non-backtracking walk tree rooted at `root_vertex`.

    Node 0 is the root (the length-0 walk). For node i > 0, parent[i] is its
    parent node, ext_edge[i] the directed edge of the underlying graph that
    extends the parent walk, and weight[i] the weight of that edge.
    """

    def __init__(self, graph, root_vertex, radius, parent, depth, ext_edge, weight, level_offsets):
        self.graph = graph
        self.root_vertex = int(root_vertex)
        self.radius = int(radius)
        self.parent = parent
        self.depth = depth
        self.ext_edge = ext_edge
        self.weight = weight
        self.level_offsets = level_offsets
        self._csr = None

    @property
    def n_nodes(self):
        return len(self.parent)

    def level_sizes(self):
        """Number of walk nodes per depth 0..radius."""
        return np.diff(self.level_offsets).tolist()

    def node_vertices(self):
        """Graph vertex reached by each walk node."""
        edges = self.graph.directed_edges()
        out = np.empty(self.n_nodes, dtype=np.int64)
        out[0] = self.root_vertex
        if self.n_nodes > 1:
            out[1:] = edges.head[self.ext_edge[1:]]
        return out

    def csr_adjacency(self):
        if self._csr is None:
            n = self.n_nodes
            if n == 1:
                self._csr = (
                    np.zeros(2, dtype=np.int64),
                    np.empty(0, dtype=np.int64),
                    np.empty(0, dtype=np.float64),
                )
            else:
                child = np.arange(1, n, dtype=np.int64)
                rows = np.concatenate([self.parent[1:], child])
                cols = np.concatenate([child, self.parent[1:]])
                vals = np.concatenate([self.weight[1:], self.weight[1:]])
                order = np.argsort(rows, kind="stable")
                indptr = np.zeros(n + 1, dtype=np.int64)
                np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
                self._csr = (indptr, cols[order], vals[order])
        return self._csr

    @property
    def dimension(self):
        return self.n_nodes

    def dump_edges(self):
        """Lines `parent_index child_index weight` for every tree edge."""
        for i in range(1, self.n_nodes):
            yield f"{self.parent[i]} {i} {self.weight[i]:.17g}"

    def __repr__(self):
        return (
            f"UnraveledBall(v={self.root_vertex}, r={self.radius}, nodes={self.n_nodes})"
        )


def unravel(G, v, radius, node_budget=DEFAULT_NODE_BUDGET):
    """Unraveled ball of radius `radius` at vertex v.

    Levels are generated breadth-first; before materializing a level its size
    is known from the prolongation counts, so an oversized request fails fast
    with the level reached and the projected node total.
    """
    G._check_vertex(v)
    radius = int(radius)
    if radius < 0:
        raise ValueError("radius must be non-negative")
    edges = G.directed_edges()

    parent_chunks = [np.array([-1], dtype=np.int64)]
    edge_chunks = [np.array([-1], dtype=np.int64)]
    level_offsets = [0, 1]
    total = 1

    cur_edges = edges.out_edges(v)
    cur_base = None  # node index of each current node's parent
    for level in range(1, radius + 1):
        if level == 1:
            k = len(cur_edges)
            if k == 0:
                break
            projected = total + k
            if projected > node_budget:
                raise BudgetExceededError(level, projected, node_budget)
            par = np.zeros(k, dtype=np.int64)
        else:
            counts = edges.prol_indptr[cur_edges + 1] - edges.prol_indptr[cur_edges]
            k = int(counts.sum())
            if k == 0:
                break
            projected = total + k
            if projected > node_budget:
                raise BudgetExceededError(level, projected, node_budget)
            flat = expand_ranges(edges.prol_indptr[cur_edges], counts)
            par = np.repeat(cur_base, counts)
            cur_edges = edges.prol_indices[flat]
        parent_chunks.append(par)
        edge_chunks.append(cur_edges)
        cur_base = np.arange(total, total + k, dtype=np.int64)
        total += k
        level_offsets.append(total)

    parent = np.concatenate(parent_chunks)
    ext_edge = np.concatenate(edge_chunks)
    depth = np.empty(total, dtype=np.int64)
    offsets = np.asarray(level_offsets, dtype=np.int64)
    for d in range(len(offsets) - 1):
        depth[offsets[d]:offsets[d + 1]] = d
    weight = np.ones(total, dtype=np.float64)
    if total > 1:
        weight[1:] = edges.weight[ext_edge[1:]]
    weight[0] = 0.0
    return UnraveledBall(G, v, radius, parent, depth, ext_edge, weight, offsets)


class InducedSubgraph:
    """Induced subgraph of a parent graph on a sorted vertex subset."""

    def __init__(self, parent_graph, vertices):
        self.parent = parent_graph
        verts = np.unique(np.asarray(vertices, dtype=np.int64))
        if verts.size and (verts[0] < 0 or verts[-1] >= parent_graph.vertex_count):
            raise ValueError("vertex subset out of range")
        self.vertices = verts
        k = len(verts)
        n = parent_graph.vertex_count
        indptr, indices, data = parent_graph.csr_adjacency()

        local = np.full(n, -1, dtype=np.int64)
        local[verts] = np.arange(k, dtype=np.int64)
        counts = indptr[verts + 1] - indptr[verts] if k else np.empty(0, dtype=np.int64)
        flat = expand_ranges(indptr[verts], counts)
        nbrs = indices[flat]
        keep = local[nbrs] >= 0
        row = np.repeat(np.arange(k, dtype=np.int64), counts)[keep]
        self._indptr = np.zeros(k + 1, dtype=np.int64)
        np.cumsum(np.bincount(row, minlength=k), out=self._indptr[1:])
        self._indices = local[nbrs[keep]]
        self._data = data[flat][keep]

    @property
    def vertex_count(self):
        return len(self.vertices)

    @property
    def dimension(self):
        return len(self.vertices)

    @property
    def edge_count(self):
        return int(self._indptr[-1]) // 2

    def csr_adjacency(self):
        return self._indptr, self._indices, self._data

    def weighted_degrees(self):
        """Weighted degrees measured inside the subgraph."""
        k = self.vertex_count
        out = np.zeros(k)
        if k:
            np.add.at(out, np.repeat(np.arange(k), np.diff(self._indptr)), self._data)
        return out

    def local_edges(self):
        """Edges as local-index triples (u, v, w) with u < v."""
        k = self.vertex_count
        rows = np.repeat(np.arange(k, dtype=np.int64), np.diff(self._indptr))
        mask = rows < self._indices
        return list(zip(rows[mask].tolist(), self._indices[mask].tolist(), self._data[mask].tolist()))

    def to_graph(self):
        """Standalone WeightedGraph copy with the parent labels."""
        labels = [self.parent.label(int(v)) for v in self.vertices]
        return WeightedGraph(self.vertex_count, self.local_edges(), labels=labels)

    def __repr__(self):
        return f"InducedSubgraph(k={self.vertex_count}, edges={self.edge_count})"


def ball(G, v, radius):
    """Induced subgraph on vertices within unweighted distance `radius` of v."""
    G._check_vertex(v)
    dist = G.bfs_distances(v)
    verts = np.nonzero((dist >= 0) & (dist <= radius))[0]
    return InducedSubgraph(G, verts)


def residual(G, v, radius):
    """Induced subgraph on the complement of the radius-(r+1) ball at v.

    May be empty; vertices unreachable from v always remain.
    """
    G._check_vertex(v)
    dist = G.bfs_distances(v)
    verts = np.nonzero((dist < 0) | (dist > radius + 1))[0]
    return InducedSubgraph(G, verts)


def peel_core(H, theta):
    """Maximal induced subgraph of H with all inside weighted degrees >= theta.

    Repeatedly deletes any vertex whose weighted degree inside the current
    subgraph falls below theta; the fixed point is independent of deletion
    order. Returns a possibly empty InducedSubgraph of H's parent graph.
    """
    if theta < 0:
        raise ValueError("theta must be non-negative")
    k = H.vertex_count
    deg = H.weighted_degrees().copy()
    alive = np.ones(k, dtype=bool)
    indptr, indices, data = H.csr_adjacency()
    queue = deque(int(u) for u in np.nonzero(deg < theta)[0])
    queued = np.zeros(k, dtype=bool)
    queued[deg < theta] = True
    while queue:
        u = queue.popleft()
        if not alive[u]:
            continue
        alive[u] = False
        for pos in range(indptr[u], indptr[u + 1]):
            w = indices[pos]
            if alive[w]:
                deg[w] -= data[pos]
                if deg[w] < theta and not queued[w]:
                    queued[w] = True
                    queue.append(int(w))
    return InducedSubgraph(H.parent, H.vertices[alive])
