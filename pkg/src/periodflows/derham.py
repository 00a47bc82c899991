"""First de Rham cohomology of the torus C^g/(Z^g + tau Z^g), modelled by
period vectors against the homology basis gamma_i = e_i, delta_i = tau e_i.

A class is the pair of its gamma- and delta-period vectors; this is the
complete data the comparison isomorphism carries, so connections and frames
reduce to differentiation and linear algebra on period vectors.

Normalizations (all verified in the test suite):

* pairing(u, v) = (u_gamma . v_delta - u_delta . v_gamma) / 2 pi i, which
  simultaneously gives <omega_i, eta_j> = delta_ij for the canonical frame
  and <E(gamma_i,.), E(delta_j,.)> = delta_ij / 2 pi i for homology-dual
  classes,
* the canonical frame has omega_k periods (2 pi i e_k, 2 pi i tau e_k) and
  eta_k periods (0, e_k),
* the period matrix (Omega_1, N_1; Omega_2, N_2) has rows indexed by cycles
  and columns by classes; it lies in GSp with multiplier 2 pi i, and its
  symplectic normalization (N_2, Omega_2/2pi i; N_1, Omega_1/2pi i) equals
  (1, tau; 0, 1) on the canonical frame.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    as_matrix,
    block_join,
    block_split,
    eye,
    mat_inv,
    maxabs,
)
from .sympgrp import (
    TWO_PI_I,
    ParabolicElement,
    gsp_multiplier,
    j_matrix,
    symmetric_unit,
)
from .siegel import require_siegel_point


@dataclass(frozen=True)
class CohClass:
    """Cohomology class as its gamma- and delta-period vectors."""

    gamma_periods: np.ndarray
    delta_periods: np.ndarray

    def __post_init__(self):
        gp = np.asarray(self.gamma_periods, dtype=np.complex128).reshape(-1)
        dp = np.asarray(self.delta_periods, dtype=np.complex128).reshape(-1)
        if gp.shape != dp.shape:
            raise ValueError("period vectors must share one length")
        if not (np.all(np.isfinite(gp)) and np.all(np.isfinite(dp))):
            raise ValueError("periods must be finite")
        object.__setattr__(self, "gamma_periods", gp)
        object.__setattr__(self, "delta_periods", dp)

    @property
    def g(self) -> int:
        return self.gamma_periods.shape[0]

    def __add__(self, other: "CohClass") -> "CohClass":
        return CohClass(self.gamma_periods + other.gamma_periods,
                        self.delta_periods + other.delta_periods)

    def __sub__(self, other: "CohClass") -> "CohClass":
        return CohClass(self.gamma_periods - other.gamma_periods,
                        self.delta_periods - other.delta_periods)

    def __mul__(self, scalar) -> "CohClass":
        return CohClass(scalar * self.gamma_periods, scalar * self.delta_periods)

    __rmul__ = __mul__

    def norm(self) -> float:
        return max(maxabs(self.gamma_periods), maxabs(self.delta_periods))


def pairing(u: CohClass, v: CohClass) -> complex:
    """Polarization pairing (u_g . v_d - u_d . v_g) / 2 pi i; antisymmetric."""
    if u.g != v.g:
        raise ValueError("classes live on tori of different dimension")
    return complex(
        (u.gamma_periods @ v.delta_periods - u.delta_periods @ v.gamma_periods)
        / TWO_PI_I
    )


@dataclass(frozen=True)
class HodgeFrame:
    """Symplectic-Hodge frame (omega_1..omega_g, eta_1..eta_g) over one tau.

    Invariant: the Gram matrix of the pairing is the standard form
    (<omega_i, omega_j> = <eta_i, eta_j> = 0, <omega_i, eta_j> = delta_ij).
    """

    tau: np.ndarray
    omega: tuple
    eta: tuple

    def __post_init__(self):
        tau = require_siegel_point(self.tau)
        g = tau.shape[0]
        omega = tuple(self.omega)
        eta = tuple(self.eta)
        if len(omega) != g or len(eta) != g:
            raise ValueError(f"need g={g} omega and eta classes")
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "eta", eta)
        scale = max(1.0, max(c.norm() for c in omega + eta) ** 2)
        if maxabs(gram_matrix(self) - j_matrix(g)) > 1e-8 * scale:
            raise ValueError("frame fails the symplectic Gram invariant")

    @property
    def g(self) -> int:
        return self.tau.shape[0]

    def classes(self) -> tuple:
        return self.omega + self.eta


def gram_matrix(frame: HodgeFrame) -> np.ndarray:
    cls = frame.classes()
    n = len(cls)
    out = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            out[i, j] = pairing(cls[i], cls[j])
    return out


def canonical_frame(tau) -> HodgeFrame:
    """Frame with omega_k = 2 pi i dz_k and eta_k its flow derivative.

    In periods: omega_k -> (2 pi i e_k, 2 pi i tau e_k), eta_k -> (0, e_k).
    """
    tau = require_siegel_point(tau)
    g = tau.shape[0]
    omega = []
    eta = []
    for k in range(g):
        ek = np.zeros(g, dtype=np.complex128)
        ek[k] = 1.0
        omega.append(CohClass(TWO_PI_I * ek, TWO_PI_I * (tau @ ek)))
        eta.append(CohClass(np.zeros(g, dtype=np.complex128), ek))
    return HodgeFrame(tau, omega, eta)


def eta_family(tau, i: int, j: int) -> list:
    """The classes eta_k^{ij} with periods (0, E^{ij} e_k), k = 1..g. 1-based.

    eta_k^{kk} is the canonical eta_k.
    """
    tau = require_siegel_point(tau)
    g = tau.shape[0]
    e_ij = symmetric_unit(i, j, g)
    out = []
    for k in range(g):
        ek = np.zeros(g, dtype=np.complex128)
        ek[k] = 1.0
        out.append(CohClass(np.zeros(g, dtype=np.complex128), e_ij @ ek))
    return out


# ---------------------------------------------------------------------------
# Gauss-Manin differentiation of period functions
# ---------------------------------------------------------------------------

def gauss_manin_fd(frame_family, tau, k: int, l: int, step: float = 1e-5):
    """Central finite difference of a frame family along tau_{kl}, as classes.

    Differentiation of periods is the Gauss-Manin connection in this model;
    the result is scaled by 1/2 pi i, matching the vector fields
    (1/2 pi i) d/d tau_{kl}. Returns (d_omega, d_eta) lists of CohClass.
    1-based (k, l) with k <= l; the perturbation is tau +- step * E^{kl}.
    """
    tau = require_siegel_point(tau)
    g = tau.shape[0]
    e_kl = symmetric_unit(k, l, g)
    if not (0 < step < 1e-2):
        raise ValueError("step under/overflow")
    plus = frame_family(tau + step * e_kl)
    minus = frame_family(tau - step * e_kl)

    def diff(cp: CohClass, cm: CohClass) -> CohClass:
        return CohClass(
            (cp.gamma_periods - cm.gamma_periods) / (2 * step) / TWO_PI_I,
            (cp.delta_periods - cm.delta_periods) / (2 * step) / TWO_PI_I,
        )

    d_omega = [diff(p, m) for p, m in zip(plus.omega, minus.omega)]
    d_eta = [diff(p, m) for p, m in zip(plus.eta, minus.eta)]
    return d_omega, d_eta


# ---------------------------------------------------------------------------
# period matrices
# ---------------------------------------------------------------------------

def period_matrix(frame: HodgeFrame) -> np.ndarray:
    """(Omega_1, N_1; Omega_2, N_2) with (Omega_1)_{ij} = gamma_i-period of omega_j.

    Lies in GSp_2g with multiplier 2 pi i; Omega_1 is invertible and
    Omega_2 Omega_1^-1 recovers tau.
    """
    g = frame.g
    p = np.empty((2 * g, 2 * g), dtype=np.complex128)
    for j, w in enumerate(frame.omega):
        p[:g, j] = w.gamma_periods
        p[g:, j] = w.delta_periods
    for j, e in enumerate(frame.eta):
        p[:g, g + j] = e.gamma_periods
        p[g:, g + j] = e.delta_periods
    return p


def period_matrix_symplectic(p) -> np.ndarray:
    """Symplectic normalization (N_2, Omega_2/2pi i; N_1, Omega_1/2pi i)."""
    p = as_matrix(p)
    o1, n1, o2, n2 = block_split(p)
    return block_join(n2, o2 / TWO_PI_I, n1, o1 / TWO_PI_I)


def frame_from_period_matrix(tau, p) -> HodgeFrame:
    """Rebuild a frame from its period matrix (validates the Gram invariant)."""
    p = as_matrix(p)
    g = p.shape[0] // 2
    omega = [CohClass(p[:g, j], p[g:, j]) for j in range(g)]
    eta = [CohClass(p[:g, g + j], p[g:, g + j]) for j in range(g)]
    return HodgeFrame(tau, omega, eta)


def apply_parabolic(frame: HodgeFrame, p: ParabolicElement) -> HodgeFrame:
    """Right parabolic frame move b . p = (omega A, omega B + eta (A^T)^-1).

    On period matrices this is right multiplication by the embedded
    parabolic, so the Gram matrix is preserved.
    """
    if p.g != frame.g:
        raise ValueError("parabolic size does not match the frame")
    return frame_from_period_matrix(frame.tau, period_matrix(frame) @ p.embed())


def normalize_frame(frame: HodgeFrame, tol: float = DEFAULT_TOL.abs_tol) -> HodgeFrame:
    """Parabolic move making the eta periods (0, e_j); idempotent.

    Uses the chart factorization of P/2pi i: the move is
    p = ((Omega_1/2pi i)^-1, -N_1^T/2pi i).
    """
    p = period_matrix(frame)
    gsp_multiplier(p, max(tol, 1e-8))  # validity check: frame must be GSp
    o1, n1, _, _ = block_split(p)
    move = ParabolicElement(mat_inv(o1 / TWO_PI_I), -(n1 / TWO_PI_I).T)
    return apply_parabolic(frame, move)


def frame_tau_from_periods(p) -> np.ndarray:
    """Omega_2 Omega_1^-1, the Siegel point a period matrix sits over."""
    o1, _, o2, _ = block_split(as_matrix(p))
    return o2 @ mat_inv(o1)
