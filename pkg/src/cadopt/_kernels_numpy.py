"""Pure-numpy implementations of the interior-point hot kernels.

Fallback backend used when numba is unavailable or disabled via CAD_NO_NUMBA.
Signatures must stay in sync with ``_kernels_numba``.
"""

import numpy as np


def symkron(w, ii, jj, ff):
    """Symmetrized Kronecker square of ``w`` in packed (svec) coordinates.

    Returns the matrix K with K @ svec(U) == svec(w @ U @ w) for every
    symmetric U.  ``ii, jj`` are the lower-triangle row/column indices of the
    packing order and ``ff`` the diagonal/off-diagonal scale factors
    (1 or sqrt(2)).
    """
    wik = w[np.ix_(ii, ii)]
    wjl = w[np.ix_(jj, jj)]
    wil = w[np.ix_(ii, jj)]
    wjk = w[np.ix_(jj, ii)]
    return 0.5 * np.outer(ff, ff) * (wik * wjl + wil * wjk)


def add_block(mat, block, idx):
    """Accumulate ``block`` into rows/columns ``idx`` of ``mat`` in place."""
    mat[np.ix_(idx, idx)] += block
