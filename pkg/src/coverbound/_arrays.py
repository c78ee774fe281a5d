"""Small numpy helpers shared by the graph and tree layers."""

import numpy as np


def expand_ranges(starts, counts):
    """Concatenate the index ranges [starts[i], starts[i]+counts[i]).

    Both arguments are integer arrays of equal length; the result lists every
    index of every range, in order. Used to gather CSR rows for a batch of row
    ids in one vectorized step.
    """
    starts = np.asarray(starts, dtype=np.int64)
    counts = np.asarray(counts, dtype=np.int64)
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    cum = np.zeros(len(counts), dtype=np.int64)
    np.cumsum(counts[:-1], out=cum[1:])
    return np.arange(total, dtype=np.int64) + np.repeat(starts - cum, counts)


def csr_from_coo(n, rows, cols, vals):
    """Build CSR arrays (indptr, indices, data) from unsorted COO triples."""
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    vals = np.asarray(vals, dtype=np.float64)
    order = np.lexsort((cols, rows))
    rows = rows[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
    return indptr, cols[order], vals[order]
