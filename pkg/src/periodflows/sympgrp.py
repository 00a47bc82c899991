"""Symplectic and general-symplectic matrices.

Predicates and diagnostics for Sp_2g and GSp_2g, the Siegel parabolic group
and its mirror, the chart factorization of GSp elements with invertible
upper-left block, the square-zero Lie generators of the unipotent flow, and
integer-coset equality in Sp_2g(Z)\\Sp_2g(C).

Conventions: J = (0, 1_g; -1_g, 0); M is symplectic iff M J M^T = J,
equivalently A B^T = B A^T, C D^T = D C^T, A D^T - B C^T = 1_g (and the
transposed set of conditions). A GSp matrix satisfies the first two and
A D^T - B C^T = nu * 1_g with nu != 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    DimensionError,
    as_matrix,
    block_join,
    block_split,
    eye,
    is_symmetric,
    mat_inv,
    maxabs,
)

TWO_PI_I = 2j * np.pi


class NotSymplecticError(ValueError):
    pass


class NotInGSpError(ValueError):
    pass


def j_matrix(g: int) -> np.ndarray:
    """The standard alternating form J = (0, 1_g; -1_g, 0)."""
    if g < 1:
        raise ValueError("g must be >= 1")
    z = np.zeros((g, g), dtype=np.complex128)
    return block_join(z, eye(g), -eye(g), z)


def symmetric_unit(i: int, j: int, g: int) -> np.ndarray:
    """Symmetric g x g matrix with 1 at (i, j) and (j, i), else 0. 1-based."""
    if not (1 <= i <= j <= g):
        raise IndexError(f"need 1 <= i <= j <= g, got ({i}, {j}, {g})")
    e = np.zeros((g, g), dtype=np.complex128)
    e[i - 1, j - 1] = 1.0
    e[j - 1, i - 1] = 1.0
    return e


def lie_generator(k: int, l: int, g: int) -> np.ndarray:
    """Square-zero flow generator (1/2pi i) (0, E^{kl}; 0, 0). 1-based."""
    z = np.zeros((g, g), dtype=np.complex128)
    return block_join(z, symmetric_unit(k, l, g) / TWO_PI_I, z, z)


def symplectic_diagnostics(m) -> dict:
    """Residuals of M J M^T = J and of both equivalent block-condition sets.

    Returns max-abs residuals: "mjmt", and the two triples
    ("ab_t", "cd_t", "adbc") / ("ac_t", "bd_t", "adcb") for
    (A B^T - B A^T, C D^T - D C^T, A D^T - B C^T - 1) and
    (A^T C - C^T A, B^T D - D^T B, A^T D - C^T B - 1).
    """
    m = as_matrix(m)
    n = m.shape[0]
    if m.shape[1] != n or n % 2:
        raise DimensionError("need a square even-dimensional matrix")
    g = n // 2
    jm = j_matrix(g)
    a, b, c, d = block_split(m, g)
    one = eye(g)
    return {
        "mjmt": maxabs(m @ jm @ m.T - jm),
        "ab_t": maxabs(a @ b.T - b @ a.T),
        "cd_t": maxabs(c @ d.T - d @ c.T),
        "adbc": maxabs(a @ d.T - b @ c.T - one),
        "ac_t": maxabs(a.T @ c - c.T @ a),
        "bd_t": maxabs(b.T @ d - d.T @ b),
        "adcb": maxabs(a.T @ d - c.T @ b - one),
    }


def is_symplectic(m, tol: float = DEFAULT_TOL.abs_tol) -> bool:
    """True iff M J M^T = J to tol; both diagnostic condition sets must agree."""
    diag = symplectic_diagnostics(m)
    set1 = max(diag["ab_t"], diag["cd_t"], diag["adbc"])
    set2 = max(diag["ac_t"], diag["bd_t"], diag["adcb"])
    ok = diag["mjmt"] <= tol
    # the two Remark-style characterizations are equivalent; their verdicts
    # must not disagree, otherwise the tolerance is meaningless here
    if (set1 <= tol) != (set2 <= tol):
        scale = max(1.0, maxabs(m) ** 2)
        if abs(set1 - set2) > tol * scale:
            raise NotSymplecticError(
                f"block-condition sets disagree: {set1:.3e} vs {set2:.3e}"
            )
    return ok and set1 <= tol and set2 <= tol


def require_symplectic(m, tol: float = DEFAULT_TOL.abs_tol) -> np.ndarray:
    m = as_matrix(m)
    if not is_symplectic(m, tol):
        raise NotSymplecticError(
            f"matrix is not symplectic to {tol:g}: residual "
            f"{symplectic_diagnostics(m)['mjmt']:.3e}"
        )
    return m


def gsp_multiplier(m, tol: float = DEFAULT_TOL.abs_tol) -> complex:
    """Multiplier nu with A D^T - B C^T = nu 1_g; raises if m is not in GSp.

    Membership requires all three block identities simultaneously.
    A symplectic matrix returns nu = 1.
    """
    m = as_matrix(m)
    n = m.shape[0]
    if m.shape[1] != n or n % 2:
        raise DimensionError("need a square even-dimensional matrix")
    g = n // 2
    a, b, c, d = block_split(m, g)
    prod = a @ d.T - b @ c.T
    nu = complex(np.trace(prod)) / g
    scale = max(1.0, maxabs(m) ** 2)
    res = max(
        maxabs(prod - nu * eye(g)),
        maxabs(a @ b.T - b @ a.T),
        maxabs(c @ d.T - d @ c.T),
    )
    if res > tol * scale:
        raise NotInGSpError(f"not in GSp to tolerance: residual {res:.3e}")
    if abs(nu) <= tol:
        raise NotInGSpError("multiplier vanishes")
    return nu


# ---------------------------------------------------------------------------
# Siegel parabolic group and its mirror
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParabolicElement:
    """Element (A, B; 0, (A^T)^-1) of the Siegel parabolic group.

    A must be invertible and A B^T symmetric.
    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = as_matrix(self.a)
        b = as_matrix(self.b, a.shape[0], a.shape[0])
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        scale = max(1.0, maxabs(a) * maxabs(b))
        if maxabs(a @ b.T - b @ a.T) > 1e-9 * scale:
            raise ValueError("parabolic data needs A B^T = B A^T")

    @property
    def g(self) -> int:
        return self.a.shape[0]

    def embed(self) -> np.ndarray:
        """The symplectic matrix (A, B; 0, (A^T)^-1)."""
        g = self.g
        return block_join(self.a, self.b, np.zeros((g, g)), mat_inv(self.a.T))

    def compose(self, other: "ParabolicElement") -> "ParabolicElement":
        """Group law, read off from the embedded product."""
        prod = self.embed() @ other.embed()
        a, b, _, _ = block_split(prod)
        return ParabolicElement(a, b)

    def inverse(self) -> "ParabolicElement":
        a, b, _, _ = block_split(mat_inv(self.embed()))
        return ParabolicElement(a, b)


def identity_parabolic(g: int) -> ParabolicElement:
    return ParabolicElement(eye(g), np.zeros((g, g), dtype=np.complex128))


def parabolic_mirror(p: ParabolicElement) -> np.ndarray:
    """Mirror homomorphism into the lower parabolic: ((A^T)^-1, 0; 2pi i B, A).

    A group homomorphism landing in Sp_2g, used when parabolic frame moves
    are pushed onto normalized period matrices.
    """
    g = p.g
    return block_join(mat_inv(p.a.T), np.zeros((g, g)), TWO_PI_I * p.b, p.a)


# ---------------------------------------------------------------------------
# chart factorization on {A invertible}
# ---------------------------------------------------------------------------

def gsp_factor(s, tol: float = DEFAULT_TOL.abs_tol):
    """Factor a GSp matrix with invertible A-block as (nu, Z, p).

    Z = C A^-1 is symmetric; p = (A^-1, -B^T) as parabolic data. Inverse of
    gsp_assemble.
    """
    s = as_matrix(s)
    nu = gsp_multiplier(s, tol)
    a, b, c, _ = block_split(s)
    a_inv = mat_inv(a)  # raises SingularMatrixError outside the chart
    z = c @ a_inv
    scale = max(1.0, maxabs(z))
    if maxabs(z - z.T) > 1e-8 * scale:
        raise NotInGSpError(f"C A^-1 not symmetric: {maxabs(z - z.T):.3e}")
    z = (z + z.T) / 2
    return nu, z, ParabolicElement(a_inv, -b.T)


def gsp_assemble(nu: complex, z, p: ParabolicElement) -> np.ndarray:
    """Assemble (X^-1, -Y^T; Z X^-1, (nu 1_g - Z X^-1 Y) X^T) from (nu, Z, p)."""
    z = as_matrix(z)
    if not is_symmetric(z, 1e-8 * max(1.0, maxabs(z))):
        raise ValueError("Z must be symmetric")
    x, y = p.a, p.b
    x_inv = mat_inv(x)
    zx = z @ x_inv
    return block_join(x_inv, -y.T, zx, (nu * eye(p.g) - zx @ y) @ x.T)


# ---------------------------------------------------------------------------
# integer cosets
# ---------------------------------------------------------------------------

def _integer_symplectic_exact(m_int: np.ndarray) -> bool:
    """Exact M J M^T == J over Python integers (object dtype avoids overflow)."""
    n = m_int.shape[0]
    g = n // 2
    mi = m_int.astype(object)
    jm = np.zeros((n, n), dtype=object)
    jm[:g, g:] = np.eye(g, dtype=object)
    jm[g:, :g] = -np.eye(g, dtype=object)
    return bool(np.array_equal(mi @ jm @ mi.T, jm))


def same_integer_coset(s1, s2, tol: float = 1e-8) -> bool:
    """Equality of Sp_2g(Z) s1 and Sp_2g(Z) s2 as left cosets.

    True iff s1 s2^-1 has entries within tol of integers and the rounded
    matrix is exactly integer-symplectic.
    """
    s1 = as_matrix(s1)
    s2 = as_matrix(s2, *s1.shape)
    q = s1 @ mat_inv(s2)
    q_round = np.round(q.real)
    if maxabs(q.imag) > tol or maxabs(q.real - q_round) > tol:
        return False
    return _integer_symplectic_exact(q_round.astype(np.int64))


# ---------------------------------------------------------------------------
# seeded generators for property tests and flows sampling
# ---------------------------------------------------------------------------

def _random_symmetric(g: int, rng: np.random.Generator, complex_entries: bool):
    z = rng.uniform(-2.0, 2.0, size=(g, g))
    if complex_entries:
        z = z + 1j * rng.uniform(-2.0, 2.0, size=(g, g))
    return (z + z.T) / 2


def random_parabolic(g: int, rng: np.random.Generator, complex_entries: bool = True) -> ParabolicElement:
    """Seeded parabolic element with bounded conditioning."""
    # resample until A is comfortably invertible; keeps products within the
    # absolute-tolerance regime
    while True:
        a = rng.uniform(-2.0, 2.0, size=(g, g))
        if complex_entries:
            a = a + 1j * rng.uniform(-2.0, 2.0, size=(g, g))
        if np.linalg.cond(a) <= 20.0:
            break
    s = _random_symmetric(g, rng, complex_entries)
    # B = S (A^T)^-1 gives A B^T = A A^-1 S = S symmetric
    return ParabolicElement(a, s @ mat_inv(a.T))


def random_symplectic_word(
    g: int,
    rng: np.random.Generator,
    word_len: int = 4,
    complex_entries: bool = True,
) -> np.ndarray:
    """Product of <= word_len letters from {psi(Z), J, embedded parabolics}.

    Entries of the letters are drawn uniformly from [-2, 2]; covers both the
    invertible-A chart and its complement.
    """
    m = eye(2 * g)
    jm = j_matrix(g)
    n_letters = int(rng.integers(1, word_len + 1))
    for _ in range(n_letters):
        kind = int(rng.integers(0, 3))
        if kind == 0:
            z = _random_symmetric(g, rng, complex_entries)
            letter = block_join(eye(g), z, np.zeros((g, g)), eye(g))
        elif kind == 1:
            letter = jm
        else:
            letter = random_parabolic(g, rng, complex_entries).embed()
        m = m @ letter
    return m


def random_integer_symplectic(g: int, rng: np.random.Generator, word_len: int = 3) -> np.ndarray:
    """Word in J and integer translations; lands in Sp_2g(Z) exactly."""
    m = eye(2 * g)
    jm = j_matrix(g)
    for _ in range(int(rng.integers(1, word_len + 1))):
        if rng.integers(0, 2):
            n = rng.integers(-2, 3, size=(g, g)).astype(np.complex128)
            n = n + n.T  # integer symmetric
            m = m @ block_join(eye(g), n, np.zeros((g, g)), eye(g))
        else:
            m = m @ jm
    return np.round(m.real).astype(np.complex128)
