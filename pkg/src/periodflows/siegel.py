"""Siegel upper half-space: membership, the fractional-linear Sp action,
the automorphy cocycle, and the Lagrangian-Grassmannian chart action.

A point is a symmetric g x g complex matrix tau with positive-definite
imaginary part. Real symplectic matrices act by
tau -> (A tau + B)(C tau + D)^-1 and preserve the domain; complex symplectic
matrices act on the chart Z -> (A Z + B)(C Z + D)^-1 only where the cocycle
C Z + D is invertible.
"""

from __future__ import annotations

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    SingularMatrixError,
    as_matrix,
    block_split,
    is_hermitian_pd,
    is_symmetric,
    mat_inv,
    maxabs,
)
from .sympgrp import require_symplectic


class NotSiegelPointError(ValueError):
    pass


class OutOfChartError(ValueError):
    """The image of the point left the symmetric-matrix chart."""


def is_siegel_point(tau, tol: float = DEFAULT_TOL.abs_tol) -> bool:
    """tau symmetric to tol and Im tau positive definite (leading minors)."""
    tau = as_matrix(tau)
    if tau.shape[0] != tau.shape[1]:
        return False
    return is_symmetric(tau, tol) and is_hermitian_pd(tau.imag.astype(np.complex128))


def require_siegel_point(tau, tol: float = DEFAULT_TOL.abs_tol) -> np.ndarray:
    tau = as_matrix(tau)
    if not is_siegel_point(tau, tol):
        raise NotSiegelPointError("not a Siegel point (symmetry or Im > 0 fails)")
    return (tau + tau.T) / 2


def cocycle(gamma, tau) -> np.ndarray:
    """Automorphy factor C tau + D; invertibility is the caller's concern.

    Satisfies cocycle(g1 g2, tau) = cocycle(g1, g2.tau) cocycle(g2, tau).
    """
    gamma = as_matrix(gamma)
    tau = as_matrix(tau)
    _, _, c, d = block_split(gamma)
    return c @ tau + d


def chart_contains(delta, tau, rel_threshold: float = 1e-12) -> bool:
    """True iff det(C tau + D) is nonzero at scale-aware threshold.

    The scale is max(1, maxabs(C tau + D)^g) so the test tracks the
    det's natural magnitude near the excluded locus.
    """
    j = cocycle(delta, tau)
    g = j.shape[0]
    scale = max(1.0, maxabs(j) ** g)
    return abs(np.linalg.det(j)) > rel_threshold * scale


def moebius(gamma, tau, tol: float = DEFAULT_TOL.abs_tol) -> np.ndarray:
    """Action tau -> (A tau + B)(C tau + D)^-1 of a real symplectic matrix.

    Promises a Siegel point back, so gamma must be real; complex matrices go
    through chart_act instead.
    """
    gamma = require_symplectic(gamma, tol)
    if maxabs(gamma.imag) > tol:
        raise ValueError("moebius needs a real symplectic matrix; use chart_act")
    tau = require_siegel_point(tau, tol)
    a, b, _, _ = block_split(gamma)
    j = cocycle(gamma, tau)
    try:
        out = (a @ tau + b) @ mat_inv(j)
    except SingularMatrixError as exc:  # impossible for real gamma, checked anyway
        raise OutOfChartError(str(exc)) from exc
    out = (out + out.T) / 2
    return require_siegel_point(out, max(tol, 1e-9 * max(1.0, maxabs(out))))


def chart_act(delta, z) -> np.ndarray:
    """Grassmannian chart action (A Z + B)(C Z + D)^-1 on symmetric Z.

    Raises OutOfChartError when C Z + D is singular to tolerance (the image
    of (Z : 1) leaves the symmetric-matrix chart). delta may be complex.
    """
    delta = as_matrix(delta)
    z = as_matrix(z)
    if not is_symmetric(z, 1e-9 * max(1.0, maxabs(z))):
        raise ValueError("chart_act needs symmetric Z")
    if not chart_contains(delta, z):
        raise OutOfChartError("C Z + D singular: point leaves the chart")
    a, b, _, _ = block_split(delta)
    out = (a @ z + b) @ mat_inv(cocycle(delta, z))
    return (out + out.T) / 2


def random_siegel_point(g: int, rng: np.random.Generator, spread: float = 1.0) -> np.ndarray:
    """Seeded random tau = S + i(W W^T + g * 1), entries O(1)."""
    s = rng.uniform(-spread, spread, size=(g, g))
    s = (s + s.T) / 2
    w = rng.uniform(-spread, spread, size=(g, g))
    im = w @ w.T + g * np.eye(g)
    return (s + 1j * im).astype(np.complex128)
