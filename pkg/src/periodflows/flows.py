"""The commuting unipotent flows on symplectic group coordinates, their
twisted leaf parametrizations, and the structural identities tying them to
frames, period matrices and the g = 1 Eisenstein solution.

States are points of Sp_2g(C) representing left cosets under Sp_2g(Z);
coset equality is always tested through `sympgrp.same_integer_coset`, never
by canonicalizing representatives. The flow directions are the square-zero
generators (1/2 pi i)(0, E^{kl}; 0, 0), so the flow is the exact unipotent
product and a fixed-step integrator can only differ from it by roundoff.
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
    is_symmetric,
    mat_inv,
    maxabs,
)
from .sympgrp import (
    TWO_PI_I,
    ParabolicElement,
    lie_generator,
    parabolic_mirror,
    require_symplectic,
    same_integer_coset,
)
from .siegel import (
    OutOfChartError,
    chart_act,
    chart_contains,
    is_siegel_point,
    require_siegel_point,
)


def unipotent(z) -> np.ndarray:
    """(1_g, Z; 0, 1_g) for symmetric Z; the exponential of (0, Z; 0, 0).

    Group law unipotent(Z1) unipotent(Z2) = unipotent(Z1 + Z2) is exact.
    """
    z = as_matrix(z)
    g = z.shape[0]
    if not is_symmetric(z, 1e-9 * max(1.0, maxabs(z))):
        raise ValueError("unipotent block must be symmetric")
    return block_join(eye(g), z, np.zeros((g, g)), eye(g))


def in_period_domain(s, tol: float = DEFAULT_TOL.abs_tol) -> bool:
    """True iff the D block is invertible and B D^-1 is a Siegel point.

    This is the open set of Sp_2g(C) whose points arise as normalized period
    matrices of frames.
    """
    s = as_matrix(s)
    _, b, _, d = block_split(s)
    g = d.shape[0]
    scale = max(1.0, maxabs(d) ** g)
    if abs(np.linalg.det(d)) <= 1e-12 * scale:
        return False
    bd = b @ mat_inv(d)
    return is_siegel_point((bd + bd.T) / 2, max(tol, 1e-9 * max(1.0, maxabs(bd))))


# ---------------------------------------------------------------------------
# flows
# ---------------------------------------------------------------------------

def exact_flow(m0, t) -> np.ndarray:
    """Flow m0 by the commuting fields for time matrix t: m0 unipotent(t / 2 pi i).

    t is the symmetric matrix of per-direction times t_{kl}; the generators
    commute and square to zero, so this product is the exact flow.
    """
    m0 = as_matrix(m0)
    return m0 @ unipotent(as_matrix(t) / TWO_PI_I)


def rk4_flow(m0, k: int, l: int, t: complex, steps: int) -> np.ndarray:
    """Fixed-step RK4 for M' = M A_{kl} along one generator. 1-based (k, l).

    Exists as an independent check: the solution is affine in t (the
    generator squares to zero), so the endpoint must match exact_flow to
    roundoff and stay symplectic at every step.
    """
    m = as_matrix(m0).copy()
    if steps < 1:
        raise ValueError("steps must be >= 1")
    g = m.shape[0] // 2
    gen = lie_generator(k, l, g)
    h = complex(t) / steps
    for _ in range(steps):
        k1 = m @ gen
        k2 = (m + (h / 2) * k1) @ gen
        k3 = (m + (h / 2) * k2) @ gen
        k4 = (m + h * k3) @ gen
        m = m + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    return m


def generator_direction_residual(tau, k: int, l: int, step: float = 1e-6) -> float:
    """FD check that the unipotent curve's tau_{kl}-derivative is the
    left-invariant generator: ||(psi(tau+h E) - psi(tau-h E))/(2h 2pi i)
    - psi(tau) A_{kl}||."""
    from .sympgrp import symmetric_unit

    tau = require_siegel_point(tau)
    g = tau.shape[0]
    e = symmetric_unit(k, l, g)
    fd = (unipotent(tau + step * e) - unipotent(tau - step * e)) / (2 * step * TWO_PI_I)
    return maxabs(fd - unipotent(tau) @ lie_generator(k, l, g))


# ---------------------------------------------------------------------------
# twisted leaves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LeafSpec:
    """A leaf of the flow foliation, indexed by a complex symplectic twist."""

    delta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "delta", require_symplectic(self.delta, 1e-8))

    @property
    def g(self) -> int:
        return self.delta.shape[0] // 2


def leaf_point(delta, tau) -> np.ndarray:
    """Twisted parametrization delta^-1 unipotent(delta . tau) of the leaf.

    Defined where the cocycle of delta is invertible at tau; lands in the
    period domain and factors as unipotent(tau) times the mirrored leaf
    parabolic.
    """
    delta = as_matrix(delta)
    tau = require_siegel_point(tau)
    if not chart_contains(delta, tau):
        raise OutOfChartError("tau outside the leaf chart of delta")
    return mat_inv(delta) @ unipotent(chart_act(delta, tau))


def leaf_parabolic(delta, tau) -> ParabolicElement:
    """The parabolic ((C tau + D)^-1, -C^T / 2 pi i) moving the canonical
    frame onto the leaf point over tau."""
    delta = as_matrix(delta)
    tau = require_siegel_point(tau)
    _, _, c, d = block_split(delta)
    j = c @ tau + d
    return ParabolicElement(mat_inv(j), -c.T / TWO_PI_I)


def parabolic_to_leaf(tau, p: ParabolicElement) -> np.ndarray:
    """The twist whose leaf parabolic at tau is p:
    (A^T, -A^T tau; -2 pi i B^T, A^-1 + 2 pi i B^T tau).

    Right inverse of leaf_parabolic; the result is symplectic and its chart
    contains tau.
    """
    tau = require_siegel_point(tau)
    a, b = p.a, p.b
    delta = block_join(
        a.T,
        -a.T @ tau,
        -TWO_PI_I * b.T,
        mat_inv(a) + TWO_PI_I * (b.T @ tau),
    )
    return require_symplectic(delta, 1e-7 * max(1.0, maxabs(delta) ** 2))


def equivariance_residual(delta, gamma, tau) -> tuple:
    """Representative-level leaf equivariance under integer elements.

    Returns (residual, same_coset) for gamma leaf_point(delta gamma, tau)
    versus leaf_point(delta, gamma . tau); the coset-level equality is the
    normative statement.
    """
    from .siegel import moebius

    delta = as_matrix(delta)
    gamma = as_matrix(gamma)
    lhs = gamma @ leaf_point(delta @ gamma, tau)
    rhs = leaf_point(delta, moebius(gamma.real, tau))
    return maxabs(lhs - rhs), same_integer_coset(lhs, rhs)


def leaf_samples(delta, taus, boundary_margin: float = 1e-3):
    """Leaf points over a tau grid, skipping the chart boundary.

    Filters out grid points where |det(C tau + D)| falls within
    boundary_margin of zero at the det's natural scale, and returns a list
    of (tau, state) pairs, each state in the period domain.
    """
    delta = as_matrix(delta)
    out = []
    for tau in taus:
        tau = require_siegel_point(tau)
        j = cocycle_det_scale(delta, tau)
        if j <= boundary_margin:
            continue
        out.append((tau, leaf_point(delta, tau)))
    if not out:
        raise ValueError("no grid points survive the chart filter")
    return out


def cocycle_det_scale(delta, tau) -> float:
    """|det(C tau + D)| / max(1, ||C tau + D||^g): scale-aware chart margin."""
    from .siegel import cocycle

    j = cocycle(delta, tau)
    g = j.shape[0]
    return abs(np.linalg.det(j)) / max(1.0, maxabs(j) ** g)


def same_leaf_residual(delta, s1, s2) -> float:
    """How far s1 s2^-1 is from the twisted unipotent group of the leaf.

    delta (s1 s2^-1) delta^-1 must be upper unipotent with symmetric block.
    """
    delta = as_matrix(delta)
    q = delta @ (as_matrix(s1) @ mat_inv(s2)) @ mat_inv(delta)
    g = q.shape[0] // 2
    a, b, c, d = block_split(q)
    return max(
        maxabs(a - eye(g)),
        maxabs(d - eye(g)),
        maxabs(c),
        maxabs(b - b.T),
    )


def leaf_parabolic_samples(delta, tau, gammas):
    """The parabolic family {p_{delta gamma, tau}} over a list of integer
    gamma, skipping gammas whose product leaves the chart."""
    delta = as_matrix(delta)
    tau = require_siegel_point(tau)
    out = []
    for gamma in gammas:
        dg = delta @ as_matrix(gamma)
        if not chart_contains(dg, tau):
            continue
        out.append(leaf_parabolic(dg, tau))
    return out


# ---------------------------------------------------------------------------
# quotient structure
# ---------------------------------------------------------------------------

def translation_invariant(tau, n) -> bool:
    """True iff the states over tau + N and tau are the same integer coset.

    Holds exactly when N is integer symmetric; the quotient ratio is then
    unipotent(N) itself.
    """
    tau = require_siegel_point(tau)
    n = as_matrix(n)
    if not is_symmetric(n, 1e-12):
        return False
    shifted = tau + n
    if not is_siegel_point(shifted):
        return False
    return same_integer_coset(unipotent(shifted), unipotent(tau))


def integer_ac_blocks(s, tol: float = 1e-8) -> bool:
    """Necessary condition for membership in the integer-translate closure
    of the unipotent group: the (A, C) blocks are integral.

    One-sided: True does not certify membership.
    """
    s = as_matrix(s)
    a, _, c, _ = block_split(s)
    for blk in (a, c):
        if maxabs(blk.imag) > tol or maxabs(blk.real - np.round(blk.real)) > tol:
            return False
    return True


# ---------------------------------------------------------------------------
# g = 1 bridge: frames -> (e2, e4, e6)
# ---------------------------------------------------------------------------

def frame_e_coordinates(frame, order: int = 120):
    """Coordinates of a g = 1 frame under the Eisenstein identification.

    For a frame (omega, eta) over tau with omega = c dz (c its gamma-period):
    the curve normal form gives e4 = E4 (2 pi i / c)^4,
    e6 = E6 (2 pi i / c)^6, and the uniformizer shift gives
    e2 = -12 (c eta_gamma + pi^2 E2 / 3) / c^2. The canonical frame maps to
    (E2, E4, E6) and the leaf-parabolic frame move reproduces the twisted
    solution.
    """
    import math

    from .qseries import RamanujanPoint, eisenstein_value

    if frame.g != 1:
        raise ValueError("e-coordinates are only defined for g = 1 frames")
    tau = complex(frame.tau[0, 0])
    c = complex(frame.omega[0].gamma_periods[0])
    c_delta = complex(frame.omega[0].delta_periods[0])
    if abs(c_delta - c * tau) > 1e-8 * max(1.0, abs(c)):
        raise ValueError("omega is not a (1,0)-class: delta-period != tau * gamma-period")
    e2v = eisenstein_value(2, tau, order)[0]
    e4v = eisenstein_value(4, tau, order)[0]
    e6v = eisenstein_value(6, tau, order)[0]
    scale = TWO_PI_I / c
    eta_gamma = complex(frame.eta[0].gamma_periods[0])
    eta1_raw = math.pi**2 / 3.0 * e2v  # 2 zeta(1/2) of Z + tau Z
    return RamanujanPoint(
        -12.0 * (c * eta_gamma + eta1_raw) / (c * c),
        e4v * scale**4,
        e6v * scale**6,
    )
