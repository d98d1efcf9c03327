"""Block geometry of the compact discrimination SDP.

A conclusive answer r is only allowed for true sites within distance delta,
so the r-th operator block can be nonzero only on the index window
[max(0, r-delta), min(n-1, r+delta)].  The optimization variable is the
direct sum of one PSD block per window; its image under the forward map is
the n x n matrix obtained by embedding every block at its window and summing.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BadDelta, BadShape


@dataclass(frozen=True)
class BlockStructure:
    """Windows, centers and dimensions of the block variable (0-based)."""

    n: int
    delta: int
    lo: np.ndarray  # first index covered by each window, inclusive
    hi: np.ndarray  # last index covered by each window, inclusive
    centers: np.ndarray  # position of the answer site inside its own block

    @property
    def widths(self):
        return self.hi - self.lo + 1

    @property
    def total_dim(self):
        return int(self.widths.sum())


def build_structure(n, delta):
    """Window layout for ``n`` hypotheses and error radius ``delta``."""
    if not 0 <= delta <= n - 1:
        raise BadDelta(f"delta={delta} outside [0, {n - 1}]")
    sites = np.arange(n)
    lo = np.maximum(0, sites - delta)
    hi = np.minimum(n - 1, sites + delta)
    return BlockStructure(n=n, delta=delta, lo=lo, hi=hi, centers=sites - lo)


def embed_block(block, r, s):
    """Place block ``r`` at its window inside an n x n zero matrix."""
    w = s.widths[r]
    if block.shape != (w, w):
        raise BadShape(f"block {r} must be {w}x{w}, got {block.shape}")
    out = np.zeros((s.n, s.n))
    out[s.lo[r] : s.hi[r] + 1, s.lo[r] : s.hi[r] + 1] = block
    return out


def forward_map(blocks, s):
    """Sum of all embedded blocks: the constrained side of the Gram inequality."""
    if len(blocks) != s.n:
        raise BadShape(f"expected {s.n} blocks, got {len(blocks)}")
    out = np.zeros((s.n, s.n))
    for r, block in enumerate(blocks):
        w = s.widths[r]
        if block.shape != (w, w):
            raise BadShape(f"block {r} must be {w}x{w}, got {block.shape}")
        out[s.lo[r] : s.hi[r] + 1, s.lo[r] : s.hi[r] + 1] += block
    return out


def adjoint_map(mat, s):
    """Adjoint of :func:`forward_map`: the window submatrices of ``mat``.

    Satisfies <forward_map(z), y> == sum_r <z_r, adjoint_map(y)_r>.
    """
    mat = np.asarray(mat, dtype=float)
    if mat.shape != (s.n, s.n):
        raise BadShape(f"expected {s.n}x{s.n}, got {mat.shape}")
    return [
        mat[s.lo[r] : s.hi[r] + 1, s.lo[r] : s.hi[r] + 1].copy() for r in range(s.n)
    ]
