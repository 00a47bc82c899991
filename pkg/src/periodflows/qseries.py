"""Exact rational q-expansions of the level-1 Eisenstein series, the
classical quasi-modular differential system on (E2, E4, E6), numerical
evaluation with tail-bound certificates, and the twisted weight-graded
solutions on the upper half-plane.

Coefficients are exact `fractions.Fraction` values; floating point appears
only at evaluation time, so the residual identities

    12 theta E2 = E2^2 - E4,  3 theta E4 = E2 E4 - E6,  2 theta E6 = E2 E6 - E4^2

are checked coefficient-exactly (theta = q d/dq).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

# q-expansion normalization: constant term 1, first coefficient c_k
EISENSTEIN_COEFF = {2: -24, 4: 240, 6: -504}

# evaluation domain guard: Im tau >= 1/2, i.e. |q| <= e^(-pi)
MIN_IM_TAU = 0.5


class TailBoundError(ValueError):
    """Requested accuracy is not certified at the given truncation order."""


@dataclass(frozen=True)
class QSeries:
    """Truncated power series in q with exact rational coefficients.

    coeffs[n] is the coefficient of q^n; order = len(coeffs) - 1. Binary
    operations truncate to the smaller order of the two operands and never
    below it.
    """

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in self.coeffs)
        )
        if not self.coeffs:
            raise ValueError("series needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.coeffs[: order + 1])

    def __add__(self, other):
        other = _coerce(other, self.order)
        n = min(self.order, other.order)
        return QSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)])

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self.order)
        n = min(self.order, other.order)
        return QSeries([self.coeffs[k] - other.coeffs[k] for k in range(n + 1)])

    def __rsub__(self, other):
        return _coerce(other, self.order) - self

    def __neg__(self):
        return QSeries([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries([c * other for c in self.coeffs])
        other = _coerce(other, self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return QSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return QSeries([c / scalar for c in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, QSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def _coerce(x, order: int) -> QSeries:
    if isinstance(x, QSeries):
        return x
    return QSeries([Fraction(x)] + [Fraction(0)] * order)


def constant(value, order: int) -> QSeries:
    return _coerce(Fraction(value), order)


@lru_cache(maxsize=None)
def divisor_sum(k: int, n: int) -> int:
    """sigma_k(n) by trial division up to sqrt(n); memoized."""
    if n < 1:
        raise ValueError("n must be positive")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**k
            e = n // d
            if e != d:
                total += e**k
        d += 1
    return total


def eisenstein_series(weight: int, order: int) -> QSeries:
    """E_2, E_4 or E_6 to the given order: 1 + c_k sum sigma_{k-1}(n) q^n."""
    if weight not in EISENSTEIN_COEFF:
        raise ValueError(f"unsupported weight {weight}; need one of 2, 4, 6")
    if order < 0:
        raise ValueError("order must be >= 0")
    c = EISENSTEIN_COEFF[weight]
    coeffs = [Fraction(1)]
    coeffs += [Fraction(c * divisor_sum(weight - 1, n)) for n in range(1, order + 1)]
    return QSeries(coeffs)


def q_derivative(f: QSeries) -> QSeries:
    """theta = q d/dq = (1/2 pi i) d/d tau on q-expansions: a_n -> n a_n."""
    return QSeries([n * c for n, c in enumerate(f.coeffs)])


def ramanujan_residuals(order: int) -> tuple:
    """The three residual series 12 theta E2 - (E2^2 - E4), etc.

    All identically zero through the requested order, in exact arithmetic.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    e2 = eisenstein_series(2, order)
    e4 = eisenstein_series(4, order)
    e6 = eisenstein_series(6, order)
    r1 = 12 * q_derivative(e2) - (e2 * e2 - e4)
    r2 = 3 * q_derivative(e4) - (e2 * e4 - e6)
    r3 = 2 * q_derivative(e6) - (e2 * e6 - e4 * e4)
    return r1, r2, r3


def discriminant_series(order: int) -> QSeries:
    """Delta = (E4^3 - E6^2)/1728; integer coefficients, leading term q."""
    e4 = eisenstein_series(4, order)
    e6 = eisenstein_series(6, order)
    return (e4 * e4 * e4 - e6 * e6) / 1728


# ---------------------------------------------------------------------------
# the differential system on (e2, e4, e6)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RamanujanPoint:
    """A point (e2, e4, e6); chart_ok records e4^3 - e6^2 != 0."""

    e2: complex
    e4: complex
    e6: complex

    @property
    def chart_ok(self) -> bool:
        return abs(self.e4**3 - self.e6**2) > 1e-12

    def as_tuple(self) -> tuple:
        return (self.e2, self.e4, self.e6)


def ramanujan_field(pt) -> tuple:
    """((e2^2-e4)/12, (e2 e4-e6)/3, (e2 e6-e4^2)/2) at a point."""
    e2, e4, e6 = pt.as_tuple() if isinstance(pt, RamanujanPoint) else pt
    return ((e2 * e2 - e4) / 12, (e2 * e4 - e6) / 3, (e2 * e6 - e4 * e4) / 2)


# ---------------------------------------------------------------------------
# evaluation with tail-bound certificates
# ---------------------------------------------------------------------------

def _tail_bound(coeff_cap: float, growth_exp: int, order: int, q_abs: float) -> float:
    """Bound sum_{n>order} coeff_cap * n^growth_exp * q_abs^n.

    Explicitly sums 200 dominating terms, then closes with a geometric tail;
    valid on the evaluation domain q_abs <= e^(-pi).
    """
    if q_abs >= 1.0:
        return math.inf
    total = 0.0
    n = order + 1
    for _ in range(200):
        total += coeff_cap * float(n) ** growth_exp * q_abs**n
        n += 1
    ratio = q_abs * (1.0 + 1.0 / n) ** growth_exp
    if ratio >= 1.0:
        return math.inf
    total += coeff_cap * float(n) ** growth_exp * q_abs**n / (1.0 - ratio)
    return total


def nome(tau: complex) -> complex:
    return cmath.exp(2j * cmath.pi * tau)


def eval_qseries(
    f: QSeries,
    tau: complex,
    *,
    coeff_cap: float | None = None,
    growth_exp: int = 12,
    max_tail: float = 1e-9,
):
    """Horner evaluation at q = e^{2 pi i tau} with a certified tail bound.

    Returns (value, tail_bound). The default coefficient model
    |a_n| <= coeff_cap * n^growth_exp uses coeff_cap = 1000 * max|a_n| of the
    truncated series, which dominates every series this package evaluates
    (Eisenstein weights w have |a_n| <= 1000|c_{w/2}| n^{w-1+1}). Raises
    TailBoundError if the certificate exceeds max_tail, and rejects
    Im tau < 1/2 where the crude model is not certified.
    """
    if tau.imag < MIN_IM_TAU:
        raise TailBoundError(f"Im tau = {tau.imag:g} below the {MIN_IM_TAU} evaluation domain")
    q = nome(tau)
    if coeff_cap is None:
        coeff_cap = 1000.0 * max(1.0, max(abs(float(c)) for c in f.coeffs))
    bound = _tail_bound(coeff_cap, growth_exp, f.order, abs(q))
    if not (bound <= max_tail):
        raise TailBoundError(
            f"tail bound {bound:.3e} above requested accuracy {max_tail:.1e} "
            f"at order {f.order}"
        )
    value = complex(0)
    for c in reversed(f.coeffs):
        value = value * q + float(c)
    return value, bound


def eisenstein_value(weight: int, tau: complex, order: int, max_tail: float = 1e-9):
    """Certified value of E_2, E_4 or E_6; tail model C n^weight with
    C = 1000 |c_k| (sigma_{w-1}(n) <= n^w makes the exponent rigorous)."""
    f = eisenstein_series(weight, order)
    cap = 1000.0 * abs(EISENSTEIN_COEFF[weight])
    return eval_qseries(f, tau, coeff_cap=cap, growth_exp=weight, max_tail=max_tail)


def eisenstein_point(tau: complex, order: int = 120, max_tail: float = 1e-9):
    """The solution triple (E2, E4, E6)(tau) with its tail bounds.

    Returns (RamanujanPoint, bounds dict). This is the q-expansion route to
    the analytic solution of the differential system.
    """
    e2, b2 = eisenstein_value(2, tau, order, max_tail)
    e4, b4 = eisenstein_value(4, tau, order, max_tail)
    e6, b6 = eisenstein_value(6, tau, order, max_tail)
    return RamanujanPoint(e2, e4, e6), {"e2": b2, "e4": b4, "e6": b6}


def phi1(tau: complex, order: int = 120, max_tail: float = 1e-9) -> RamanujanPoint:
    """Convenience: the point alone (CLI name `eval phi1`)."""
    return eisenstein_point(tau, order, max_tail)[0]


def twisted_point(delta, tau: complex, order: int = 120) -> RamanujanPoint:
    """Twist of the solution triple by a 2x2 symplectic (a, b; c, d).

    ((c tau + d)^2 E2 + (12 c / 2 pi i)(c tau + d),
     (c tau + d)^4 E4, (c tau + d)^6 E6); solves the rescaled system
    theta phi = (c tau + d)^-2 v(phi) away from c tau + d = 0.
    """
    d_mat = np.asarray(delta, dtype=np.complex128)
    if d_mat.shape != (2, 2):
        raise ValueError("twist needs a 2x2 matrix")
    if abs(np.linalg.det(d_mat) - 1.0) > 1e-9 * max(1.0, float(np.max(np.abs(d_mat))) ** 2):
        raise ValueError("twist needs determinant 1")
    c, d = complex(d_mat[1, 0]), complex(d_mat[1, 1])
    j = c * tau + d
    if abs(j) <= 1e-12:
        raise ValueError("c tau + d = 0: tau outside the twist domain")
    pt = phi1(tau, order)
    two_pi_i = 2j * cmath.pi
    return RamanujanPoint(
        j * j * pt.e2 + (12 * c / two_pi_i) * j,
        j**4 * pt.e4,
        j**6 * pt.e6,
    )


def weierstrass_eta1_value(tau: complex, order: int = 120) -> complex:
    """The quasi-period 2 zeta(1/2) of Z + tau Z via its E2 expression pi^2 E2 / 3."""
    return math.pi**2 / 3 * phi1(tau, order).e2
