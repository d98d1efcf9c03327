"""Backend dispatch for the numeric hot kernels.

The interior-point solver spends most of its time assembling per-block
symmetrized Kronecker squares and scattering them into the Schur complement.
Those loops are numba-compiled by default; set the environment variable
``CAD_NO_NUMBA=1`` (before import) to force the pure-numpy fallback, e.g. on
platforms where numba is unavailable.  ``benchmarks/bench_kernels.py``
compares the two paths.
"""

import os
from functools import lru_cache

import numpy as np

from . import _kernels_numpy

_FALSEY = ("", "0", "false", "no")


def _want_numba():
    return os.environ.get("CAD_NO_NUMBA", "").strip().lower() in _FALSEY


def get_backend(name):
    """Return the kernel module for ``name`` in {'numba', 'numpy'}."""
    if name == "numpy":
        return _kernels_numpy
    if name == "numba":
        from . import _kernels_numba

        return _kernels_numba
    raise ValueError(f"unknown kernel backend {name!r}")


if _want_numba():
    try:
        _active = get_backend("numba")
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - depends on environment
        _active = _kernels_numpy
        BACKEND = "numpy"
else:
    _active = _kernels_numpy
    BACKEND = "numpy"

symkron = _active.symkron
add_block = _active.add_block


@lru_cache(maxsize=128)
def tri_meta(d):
    """Packing metadata for symmetric d x d matrices.

    Returns ``(ii, jj, ff)``: lower-triangle row/column index arrays in the
    fixed row-major order used throughout the package, and the svec scale
    factors (1 on the diagonal, sqrt(2) off it).  The packed inner product
    then matches the Frobenius one.
    """
    ii, jj = np.tril_indices(d)
    ff = np.where(ii == jj, 1.0, np.sqrt(2.0))
    return ii, jj, ff


def svec(mat):
    """Pack a symmetric matrix into its svec vector."""
    d = mat.shape[0]
    ii, jj, ff = tri_meta(d)
    return ff * mat[ii, jj]


def smat(vec, d):
    """Inverse of :func:`svec` for dimension ``d``."""
    ii, jj, ff = tri_meta(d)
    out = np.zeros((d, d))
    vals = vec / ff
    out[ii, jj] = vals
    out[jj, ii] = vals
    return out
