"""Dense complex matrix kernel with one shared tolerance policy.

Every matrix in this package is a plain ``numpy.ndarray`` of complex128 in
row-major order; this module owns validation, the max-abs comparison norm,
LU-based inversion with an explicit singularity threshold, 2x2-block
splitting/joining, and the shared matrix JSON format
``{"rows": r, "cols": c, "entries": [[re, im], ...]}``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve


class SingularMatrixError(ValueError):
    """Raised when a matrix is singular to the pivot tolerance."""


class DimensionError(ValueError):
    """Raised on shape mismatches."""


@dataclass(frozen=True)
class Tolerance:
    """Shared tolerance policy: absolute max-abs tolerance and FD step."""

    abs_tol: float = 1e-10
    fd_step: float = 1e-6

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.fd_step > 0):
            raise ValueError("tolerances must be positive")


DEFAULT_TOL = Tolerance()

# PD decision threshold for leading principal minors (desk scale, g <= 4)
PD_MINOR_THRESHOLD = 1e-12
# relative pivot threshold for LU singularity detection
LU_PIVOT_RTOL = 1e-14


def as_matrix(a, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Validate and return a complex128 matrix; entries must be finite."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError(f"expected a matrix, got ndim={m.ndim}")
    if rows is not None and m.shape[0] != rows:
        raise DimensionError(f"expected {rows} rows, got {m.shape[0]}")
    if cols is not None and m.shape[1] != cols:
        raise DimensionError(f"expected {cols} cols, got {m.shape[1]}")
    if not np.all(np.isfinite(m)):  # finite in both real and imaginary part
        raise ValueError("matrix entries must be finite")
    return m


def maxabs(a) -> float:
    """Max-abs entry norm; 0.0 for empty input."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def allclose_abs(a, b, tol: float = DEFAULT_TOL.abs_tol) -> bool:
    """Entrywise |a - b| <= tol (absolute, per the shared policy)."""
    return maxabs(np.asarray(a) - np.asarray(b)) <= tol


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def mat_mul(a, b) -> np.ndarray:
    """Matrix product with an explicit conformability check."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def mat_inv(a) -> np.ndarray:
    """Inverse by LU with partial pivoting.

    Raises SingularMatrixError when any pivot magnitude drops below
    1e-14 * maxabs(a).
    """
    a = as_matrix(a)
    n, m = a.shape
    if n != m:
        raise DimensionError("inverse of a non-square matrix")
    if n == 0:
        return a.copy()
    scale = maxabs(a)
    if scale == 0.0:
        raise SingularMatrixError("zero matrix")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)  # our own pivot check decides
        lu, piv = lu_factor(a, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if np.min(pivots) < LU_PIVOT_RTOL * scale:
        raise SingularMatrixError(
            f"pivot {np.min(pivots):.3e} below {LU_PIVOT_RTOL:.0e} * {scale:.3e}"
        )
    return lu_solve((lu, piv), eye(n), check_finite=False)


def solve(a, b) -> np.ndarray:
    """Solve a @ x = b with the same pivot threshold as mat_inv."""
    a = as_matrix(a)
    b = np.asarray(b, dtype=np.complex128)
    scale = maxabs(a)
    if scale == 0.0:
        raise SingularMatrixError("zero matrix")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(a, check_finite=False)
    if np.min(np.abs(np.diag(lu))) < LU_PIVOT_RTOL * scale:
        raise SingularMatrixError("matrix singular to tolerance")
    return lu_solve((lu, piv), b, check_finite=False)


def block_split(m, g: int | None = None):
    """Split a 2g x 2g matrix into its (A, B; C, D) blocks. Exact."""
    m = as_matrix(m)
    n = m.shape[0]
    if m.shape[1] != n or n % 2:
        raise DimensionError("block_split needs a square even-dimensional matrix")
    if g is None:
        g = n // 2
    elif 2 * g != n:
        raise DimensionError(f"matrix is {n}x{n}, not 2*{g} square")
    return m[:g, :g], m[:g, g:], m[g:, :g], m[g:, g:]


def block_join(a, b, c, d) -> np.ndarray:
    """Assemble (A, B; C, D) from four g x g blocks. Exact round trip."""
    a, b, c, d = (as_matrix(x) for x in (a, b, c, d))
    g = a.shape[0]
    for x in (a, b, c, d):
        if x.shape != (g, g):
            raise DimensionError("blocks must share one square shape")
    out = np.empty((2 * g, 2 * g), dtype=np.complex128)
    out[:g, :g], out[:g, g:], out[g:, :g], out[g:, g:] = a, b, c, d
    return out


def is_symmetric(m, tol: float = DEFAULT_TOL.abs_tol) -> bool:
    m = as_matrix(m)
    return m.shape[0] == m.shape[1] and maxabs(m - m.T) <= tol


def is_hermitian_pd(m, minor_threshold: float = PD_MINOR_THRESHOLD) -> bool:
    """Positive-definiteness via leading principal minors.

    Deterministic and cheap at desk scale (g <= 4); all minors must exceed
    the threshold.
    """
    m = as_matrix(m)
    n = m.shape[0]
    if m.shape[1] != n:
        return False
    if maxabs(m - m.conj().T) > 1e-9 * max(1.0, maxabs(m)):
        return False
    for k in range(1, n + 1):
        minor = np.linalg.det(m[:k, :k]).real
        if minor <= minor_threshold:
            return False
    return True


# ---------------------------------------------------------------------------
# shared matrix JSON format
# ---------------------------------------------------------------------------

def matrix_to_json(m) -> dict:
    """{"rows": r, "cols": c, "entries": [[re, im], ...]} in row-major order."""
    m = as_matrix(m)
    entries = [[float(z.real), float(z.imag)] for z in m.ravel()]
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "entries": entries}


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from exc
    if rows <= 0 or cols <= 0 or len(entries) != rows * cols:
        raise ValueError("matrix JSON entry count does not match rows*cols")
    flat = np.array([complex(re, im) for re, im in entries], dtype=np.complex128)
    return as_matrix(flat.reshape(rows, cols))
