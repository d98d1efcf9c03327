"""Fourier-decay diagnostics for the change-point square-root kernel.

The off-diagonal decay of the change-point Gram square root traces back to
the Fourier coefficients of mu(theta, c) = (1 - 2c cos(theta) + c^2)^(-1/2),
which fall off at least as fast as c^k with a constant given by the
integral of mu itself.  This module computes the coefficients by quadrature
and verifies the decay envelope numerically; the complex-analytic proof of
the envelope is not mechanized here.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BadInput
from .quadrature import adaptive_simpson

#: coefficients at or below this magnitude are round-off, not signal
NEGLIGIBLE_COEFF = 1e-14

_ENVELOPE_SLACK = 1e-8


def mu(theta, c):
    """Inverse square-root kernel, even and 2*pi-periodic in ``theta``."""
    if not 0.0 <= c < 1.0:
        raise BadInput(f"overlap must lie in [0, 1), got c={c}")
    theta = np.asarray(theta, dtype=float)
    return 1.0 / np.sqrt(1.0 - 2.0 * c * np.cos(theta) + c * c)


def mu_hat(k, c, tol=1e-10):
    """k-th Fourier coefficient of :func:`mu` over [-pi, pi].

    The kernel is even, so the coefficient is real; the sine part is
    identically zero and never computed.
    """
    if k < 0:
        raise BadInput(f"harmonic index must be >= 0, got {k}")
    if not 0.0 <= c < 1.0:
        raise BadInput(f"overlap must lie in [0, 1), got c={c}")

    def integrand(theta):
        return mu(theta, c) * np.cos(k * theta)

    min_intervals = max(64, 8 * k)
    return adaptive_simpson(
        integrand, -np.pi, np.pi, tol=tol, min_intervals=min_intervals
    )


@dataclass(frozen=True)
class FourierCheck:
    """Coefficients, decay envelope and any violations for one overlap."""

    c: float
    coefficients: np.ndarray  # mu_hat(k, c) for k = 0..k_max
    m0: float  # integral of mu: the envelope constant
    violations: list  # harmonics exceeding m0 * c^k beyond slack


def decay_bound(k, c, m0):
    """Envelope value m0 * c^k the coefficients are checked against."""
    return m0 * float(c) ** k


def decay_check(c, k_max=40):
    """Verify |mu_hat(k, c)| <= m0 * c^k for k up to ``k_max``.

    Coefficients below :data:`NEGLIGIBLE_COEFF` are treated as converged to
    zero so quadrature round-off is never flagged.  An empty violation list
    is the assertion of the decay claim, not an assumption.
    """
    if not 0.0 < c < 1.0:
        raise BadInput(f"overlap must lie in (0, 1), got c={c}")
    coefficients = np.array([mu_hat(k, c) for k in range(k_max + 1)])
    m0 = float(coefficients[0])
    violations = [
        k
        for k in range(k_max + 1)
        if abs(coefficients[k]) > NEGLIGIBLE_COEFF
        and abs(coefficients[k]) > decay_bound(k, c, m0) * (1.0 + _ENVELOPE_SLACK)
    ]
    return FourierCheck(c=float(c), coefficients=coefficients, m0=m0, violations=violations)


def partial_sum(coefficients, theta):
    """Evaluate the truncated Fourier series of mu at ``theta``.

    ``coefficients`` are the raw integrals from :func:`mu_hat`; the 1/(2*pi)
    inversion factor is applied here.
    """
    theta = np.asarray(theta, dtype=float)
    k = np.arange(len(coefficients))
    terms = coefficients * np.cos(np.outer(theta, k))
    return (terms[:, 0] + 2.0 * terms[:, 1:].sum(axis=1)) / (2.0 * np.pi)
