"""Dense real symmetric linear algebra used by every other module.

All operations act on plain numpy arrays.  Matrices handed to the public
functions are symmetrized first, so tiny asymmetries from upstream arithmetic
never propagate.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BadDimension, NotPsd, NumericalFailure

#: eigenvalues in [-PSD_CLAMP_TOL, 0) are treated as exact zeros
PSD_CLAMP_TOL = 1e-10


def symmetrize(mat):
    """Return (M + M^T)/2 as a float array, validating squareness."""
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise BadDimension(f"expected a square matrix, got shape {mat.shape}")
    if mat.shape[0] < 1:
        raise BadDimension("matrix dimension must be >= 1")
    return 0.5 * (mat + mat.T)


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral factorization M = V diag(values) V^T, values ascending."""

    values: np.ndarray
    vectors: np.ndarray  # orthonormal columns, vectors[:, k] pairs values[k]

    def reconstruct(self):
        return (self.vectors * self.values) @ self.vectors.T


def sym_eigen(mat):
    """Eigendecomposition of a symmetric matrix, eigenvalues ascending."""
    mat = symmetrize(mat)
    try:
        values, vectors = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigensolver did not converge: {exc}") from exc
    return EigenDecomposition(values=values, vectors=vectors)


def min_eigenvalue(mat):
    """Smallest eigenvalue of a symmetric matrix."""
    return float(sym_eigen(mat).values[0])


def is_psd(mat, tol=0.0):
    """True iff the smallest eigenvalue is >= -tol."""
    if tol < 0:
        raise BadDimension("tolerance must be nonnegative")
    return min_eigenvalue(mat) >= -tol


def sqrt_psd(mat):
    """Symmetric PSD square root R with R @ R == mat.

    Eigenvalues in [-PSD_CLAMP_TOL, 0) are clamped to zero: Gram matrices of
    nearly dependent states produce harmless round-off negatives.  Anything
    more negative raises :class:`NotPsd`.
    """
    eig = sym_eigen(mat)
    values = eig.values.copy()
    if values[0] < -PSD_CLAMP_TOL:
        raise NotPsd(f"matrix has eigenvalue {values[0]:.3e} < -{PSD_CLAMP_TOL:.0e}")
    np.clip(values, 0.0, None, out=values)
    root = (eig.vectors * np.sqrt(values)) @ eig.vectors.T
    return 0.5 * (root + root.T)


def inv_sqrt_psd(mat, cond_limit=1e12):
    """Inverse square root of a positive-definite matrix.

    Raises :class:`NumericalFailure` when the square root's condition number
    exceeds ``cond_limit``.
    """
    eig = sym_eigen(mat)
    values = eig.values
    if values[0] <= 0.0:
        raise NotPsd("matrix must be positive definite")
    if np.sqrt(values[-1] / values[0]) > cond_limit:
        raise NumericalFailure(
            f"square root condition number exceeds {cond_limit:.1e}"
        )
    inv_root = (eig.vectors / np.sqrt(values)) @ eig.vectors.T
    return 0.5 * (inv_root + inv_root.T)
