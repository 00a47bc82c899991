"""Weierstrass layer for the lattice Z + tau Z: invariants g2, g3 by
absolutely convergent lattice sums, the zeta function and quasi-periods,
the assembled 2x2 period matrix with multiplier 2 pi i, and the classical
period/Eisenstein identity report.

This module deliberately shares no algorithm with `qseries`: every quantity
here comes from direct lattice summation, so agreement between the two is a
genuine two-pipeline check.

Normalization: periods (omega1, omega2) = (1, tau). The de Rham class eta
paired against omega with <omega, eta> = 1 carries the periods
-(2 zeta(1/2), 2 zeta(tau/2)); with that sign the assembled period matrix
has multiplier +2 pi i (the raw Weierstrass quasi-periods satisfy
tau eta1 - eta2 = +2 pi i and eta1 = (pi^2/3) E2(tau)). The sign was fixed
once against the multiplier check at tau = 2i and is frozen below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .numerics import as_matrix
from .sympgrp import TWO_PI_I, gsp_multiplier

# frozen by the multiplier normalization: the eta-class periods are
# QUASI_PERIOD_CLASS_SIGN * (2 zeta(1/2), 2 zeta(tau/2))
QUASI_PERIOD_CLASS_SIGN = -1.0

MIN_IM_TAU = 0.5
MIN_CUTOFF = 20


class CutoffError(ValueError):
    """Cutoff too small for the requested accuracy."""


def _check_tau(tau: complex) -> complex:
    tau = complex(tau)
    if tau.imag < MIN_IM_TAU:
        raise ValueError(
            f"Im tau = {tau.imag:g} < {MIN_IM_TAU}; reduce via tau + Z first"
        )
    return tau


def kappa(tau: complex) -> float:
    """min |x + y tau| over the unit box boundary max(|x|,|y|) = 1.

    Every lattice point with max(|m|,|n|) = r then has |m + n tau| >= kappa*r,
    which drives both the disk truncation radius and the tail bounds.
    """
    tau = complex(tau)
    re, im = tau.real, tau.imag
    # edges y = +-1: |x +- tau|, x in [-1, 1]; minimized at x = -+re clamped
    dx = max(0.0, abs(re) - 1.0)
    edge_y = math.hypot(dx, im)
    # edges x = +-1: |1 + y tau|^2 = 1 + 2 y re + y^2 |tau|^2, y in [-1, 1]
    t2 = re * re + im * im
    y_star = min(1.0, max(-1.0, -re / t2))
    edge_x = math.sqrt(max(0.0, 1.0 + 2.0 * y_star * re + y_star * y_star * t2))
    edge_x = min(edge_x, math.sqrt(1.0 + 2.0 * re + t2), math.sqrt(1.0 - 2.0 * re + t2))
    return min(edge_y, edge_x)


def _disk_radius_sq(tau: complex, cutoff: int) -> float:
    return (kappa(tau) * cutoff) ** 2


def power_sum_tail_bound(tau: complex, cutoff: int, k: int) -> float:
    """Rigorous bound on |sum over the truncated-away lattice of lambda^-k|.

    The removed set is contained in {max(|m|,|n|) > cutoff'} with
    cutoff' >= cutoff - 1 shells inside the disk; each shell r has 8r points
    with |lambda| >= kappa r, so the tail is at most
    (8/kappa^k) * cutoff^(2-k) / (k-2). O(R^-2) for k = 4.
    """
    kap = kappa(tau)
    r0 = max(1, cutoff - 1)
    return 8.0 / (kap**k * (k - 2)) * float(r0) ** (2 - k)


def lattice_invariants(tau: complex, cutoff: int = 400):
    """(g2, g3) = (60 S4, 140 S6) with reported error bounds.

    Returns (g2, g3, bounds) where bounds = {"g2": ..., "g3": ...} are the
    rigorous O(R^-2) / O(R^-4) truncation bounds.
    """
    tau = _check_tau(tau)
    if cutoff < MIN_CUTOFF:
        raise CutoffError(f"cutoff {cutoff} < {MIN_CUTOFF}")
    s4, s6 = _kernels.power_sums(tau.real, tau.imag, cutoff, _disk_radius_sq(tau, cutoff))
    bounds = {
        "g2": 60.0 * power_sum_tail_bound(tau, cutoff, 4),
        "g3": 140.0 * power_sum_tail_bound(tau, cutoff, 6),
    }
    return 60.0 * complex(s4), 140.0 * complex(s6), bounds


def weierstrass_zeta(z: complex, tau: complex, cutoff: int = 400) -> complex:
    """zeta(z) = 1/z + sum' [1/(z - lambda) + 1/lambda + z/lambda^2]."""
    tau = _check_tau(tau)
    z = complex(z)
    if cutoff < MIN_CUTOFF:
        raise CutoffError(f"cutoff {cutoff} < {MIN_CUTOFF}")
    kap = kappa(tau)
    if abs(z) > 0.75 * kap * cutoff:
        raise ValueError("z too large for the truncation guard")
    if _distance_to_lattice(z, tau) < 1e-9:
        raise ZeroDivisionError("z lies on the lattice")
    return complex(
        _kernels.zeta_sum(z.real, z.imag, tau.real, tau.imag, cutoff, _disk_radius_sq(tau, cutoff))
    )


def weierstrass_p(z: complex, tau: complex, cutoff: int = 400) -> complex:
    """wp(z) = 1/z^2 + sum' [1/(z - lambda)^2 - 1/lambda^2] = -zeta'(z)."""
    tau = _check_tau(tau)
    z = complex(z)
    if cutoff < MIN_CUTOFF:
        raise CutoffError(f"cutoff {cutoff} < {MIN_CUTOFF}")
    if _distance_to_lattice(z, tau) < 1e-9:
        raise ZeroDivisionError("z lies on the lattice")
    return complex(
        _kernels.wp_sum(z.real, z.imag, tau.real, tau.imag, cutoff, _disk_radius_sq(tau, cutoff))
    )


def _distance_to_lattice(z: complex, tau: complex) -> float:
    # lattice coordinates of z: z = x + y tau
    y = z.imag / tau.imag
    x = z.real - y * tau.real
    best = math.inf
    for m in (math.floor(x), math.ceil(x)):
        for n in (math.floor(y), math.ceil(y)):
            best = min(best, abs(z - (m + n * tau)))
    return best


def quasi_periods(tau: complex, cutoff: int = 400):
    """Periods (eta1, eta2) of the second-kind class paired to omega = dz.

    These are QUASI_PERIOD_CLASS_SIGN * (2 zeta(1/2), 2 zeta(tau/2)); the
    sign is frozen so that the assembled period matrix has multiplier
    +2 pi i. The raw Weierstrass quasi-periods are the negatives.
    """
    tau = _check_tau(tau)
    eta1 = 2.0 * weierstrass_zeta(0.5, tau, cutoff)
    eta2 = 2.0 * weierstrass_zeta(tau / 2.0, tau, cutoff)
    return QUASI_PERIOD_CLASS_SIGN * eta1, QUASI_PERIOD_CLASS_SIGN * eta2


@dataclass(frozen=True)
class LatticePeriods:
    """Period data of Z + tau Z: (1, tau), the eta-class periods, g2, g3."""

    tau: complex
    omega1: complex
    omega2: complex
    eta1: complex
    eta2: complex
    g2: complex
    g3: complex

    def period_matrix(self) -> np.ndarray:
        """(omega1, eta1; omega2, eta2): rows are cycles, columns classes."""
        return as_matrix(
            [[self.omega1, self.eta1], [self.omega2, self.eta2]]
        )


def lattice_periods(tau: complex, cutoff: int = 400) -> LatticePeriods:
    tau = _check_tau(tau)
    g2, g3, _ = lattice_invariants(tau, cutoff)
    eta1, eta2 = quasi_periods(tau, cutoff)
    return LatticePeriods(tau, 1.0 + 0j, tau, eta1, eta2, g2, g3)


def multiplier_residual(periods: LatticePeriods) -> float:
    """|nu(P) - 2 pi i| for the assembled period matrix."""
    nu = gsp_multiplier(periods.period_matrix(), tol=1e-3)
    return abs(nu - TWO_PI_I)


# ---------------------------------------------------------------------------
# the classical period/Eisenstein identities
# ---------------------------------------------------------------------------

def period_identity_report(tau: complex, cutoff: int = 400, order: int = 120) -> dict:
    """Compare lattice-sum quantities against q-series values.

    Checks, with omega1 = 1 and the raw Weierstrass quasi-period
    eta1_w = 2 zeta(1/2) (the sign for which the classical display holds;
    the multiplier-normalized class carries the opposite sign):

        E2(tau) = -12 (omega1 / 2 pi i)(eta1_w / 2 pi i)
        E4(tau) =  12 g2 (omega1 / 2 pi i)^4
        E6(tau) = -216 g3 (omega1 / 2 pi i)^6

    plus the multiplier and tau-recovery checks on the assembled matrix.
    Returns a dict of residuals; nothing is raised on failure.
    """
    from .qseries import eisenstein_value  # local import keeps pipelines separate

    tau = _check_tau(tau)
    per = lattice_periods(tau, cutoff)
    e2 = eisenstein_value(2, tau, order)[0]
    e4 = eisenstein_value(4, tau, order)[0]
    e6 = eisenstein_value(6, tau, order)[0]
    w = per.omega1 / TWO_PI_I
    eta1_raw = per.eta1 / QUASI_PERIOD_CLASS_SIGN
    p = per.period_matrix()
    nu = gsp_multiplier(p, tol=1e-3)
    tau_back = p[1, 0] / p[0, 0]
    g2b, g3b, bounds = lattice_invariants(tau, cutoff)
    return {
        "tau": tau,
        "cutoff": cutoff,
        "order": order,
        "e2_residual": abs(e2 - (-12.0) * w * (eta1_raw / TWO_PI_I)),
        "e4_residual": abs(e4 - 12.0 * per.g2 * w**4),
        "e6_residual": abs(e6 - (-216.0) * per.g3 * w**6),
        "multiplier_residual": abs(nu - TWO_PI_I),
        "tau_residual": abs(tau_back - tau),
        "g2_bound": bounds["g2"],
        "g3_bound": bounds["g3"],
        "class_sign": QUASI_PERIOD_CLASS_SIGN,
    }
