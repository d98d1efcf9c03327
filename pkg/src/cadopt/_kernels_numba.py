"""Numba-compiled interior-point hot kernels.

Same contracts as ``_kernels_numpy``; see there for documentation.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def symkron(w, ii, jj, ff):
    m = ii.shape[0]
    out = np.empty((m, m))
    for p in range(m):
        i = ii[p]
        j = jj[p]
        fp = ff[p]
        for q in range(p, m):
            k = ii[q]
            l = jj[q]
            v = 0.5 * fp * ff[q] * (w[i, k] * w[j, l] + w[i, l] * w[j, k])
            out[p, q] = v
            out[q, p] = v
    return out


@njit(cache=True, nogil=True)
def add_block(mat, block, idx):
    m = idx.shape[0]
    for p in range(m):
        gp = idx[p]
        for q in range(m):
            mat[gp, idx[q]] += block[p, q]
