import numpy as np
import pytest

from periodflows.numerics import allclose_abs, block_join, eye, maxabs
from periodflows.sympgrp import (
    NotInGSpError,
    ParabolicElement,
    TWO_PI_I,
    gsp_assemble,
    gsp_factor,
    gsp_multiplier,
    identity_parabolic,
    is_symplectic,
    j_matrix,
    lie_generator,
    parabolic_mirror,
    random_integer_symplectic,
    random_parabolic,
    random_symplectic_word,
    same_integer_coset,
    symmetric_unit,
    symplectic_diagnostics,
)


def test_j_matrix_g1():
    assert np.array_equal(j_matrix(1), np.array([[0, 1], [-1, 0]], dtype=complex))


def test_j_antisymmetric_and_involution():
    for g in (1, 2, 3):
        j = j_matrix(g)
        assert np.array_equal(j.T, -j)
        assert allclose_abs(j @ j, -eye(2 * g), 0.0)


def test_symmetric_unit_values():
    assert np.array_equal(symmetric_unit(1, 1, 2), np.array([[1, 0], [0, 0]], dtype=complex))
    assert np.array_equal(symmetric_unit(1, 2, 2), np.array([[0, 1], [1, 0]], dtype=complex))


def test_symmetric_unit_symmetry_all_indices():
    for g in range(1, 5):
        for i in range(1, g + 1):
            for j in range(i, g + 1):
                e = symmetric_unit(i, j, g)
                assert np.array_equal(e, e.T)
    with pytest.raises(IndexError):
        symmetric_unit(2, 1, 3)


def test_is_symplectic_basics():
    for g in (1, 2, 3):
        assert is_symplectic(eye(2 * g))
        assert is_symplectic(j_matrix(g))


def test_is_symplectic_unipotent():
    from periodflows.flows import unipotent

    z = np.array([[0.5 + 0.2j, 1.0 - 1.0j], [1.0 - 1.0j, -0.3j]])
    assert is_symplectic(unipotent(z))


def test_is_symplectic_rejects_bad_multiplier():
    # diag(2, 2, 1, 1): A D^T - B C^T = 2*1 != 1
    m = np.diag([2.0, 2.0, 1.0, 1.0]).astype(complex)
    assert not is_symplectic(m)
    d = symplectic_diagnostics(m)
    assert d["adbc"] > 0.9 and d["adcb"] > 0.9
    # the rescaled version is symplectic
    assert is_symplectic(np.diag([2.0, 2.0, 0.5, 0.5]).astype(complex))


def test_diagnostics_condition_sets_agree_on_random_words():
    rng = np.random.default_rng(11)
    for g in (1, 2, 3):
        for _ in range(10):
            m = random_symplectic_word(g, rng)
            d = symplectic_diagnostics(m)
            tol = 1e-10 * max(1.0, maxabs(m) ** 2)
            assert max(d["ab_t"], d["cd_t"], d["adbc"]) <= tol
            assert max(d["ac_t"], d["bd_t"], d["adcb"]) <= tol


def test_gsp_multiplier_symplectic_is_one():
    rng = np.random.default_rng(12)
    m = random_symplectic_word(2, rng)
    assert abs(gsp_multiplier(m, 1e-8) - 1.0) <= 1e-8


def test_gsp_multiplier_scalar_matrix():
    for g in (1, 2):
        c = 1.5 - 0.5j
        assert abs(gsp_multiplier(c * eye(2 * g)) - c * c) <= 1e-12


def test_gsp_multiplier_rejects_non_gsp():
    m = np.arange(16, dtype=float).reshape(4, 4) + 0j
    with pytest.raises(NotInGSpError):
        gsp_multiplier(m)


def test_gsp_multiplier_of_elliptic_period_matrix():
    # bridge to the Weierstrass layer: assembled matrix has nu = 2 pi i
    from periodflows.elliptic import lattice_periods

    per = lattice_periods(2j, 300)
    nu = gsp_multiplier(per.period_matrix(), 1e-3)
    assert abs(nu - TWO_PI_I) <= 1e-6


def test_gsp_factor_identity():
    nu, z, p = gsp_factor(eye(4))
    assert abs(nu - 1.0) <= 1e-14
    assert maxabs(z) <= 1e-14
    assert maxabs(p.a - eye(2)) <= 1e-14 and maxabs(p.b) <= 1e-14


def test_gsp_assemble_identity_triple():
    m = gsp_assemble(1.0, np.zeros((2, 2)), identity_parabolic(2))
    assert allclose_abs(m, eye(4), 1e-14)


def test_gsp_assemble_explicit_formula():
    rng = np.random.default_rng(13)
    p = random_parabolic(2, rng)
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    z = (z + z.T) / 2
    lam = 2.0 + 1.0j
    x, y = p.a, p.b
    x_inv = np.linalg.inv(x)
    expected = block_join(x_inv, -y.T, z @ x_inv, (lam * eye(2) - z @ x_inv @ y) @ x.T)
    assert maxabs(gsp_assemble(lam, z, p) - expected) <= 1e-12


def test_gsp_assemble_multiplier():
    rng = np.random.default_rng(14)
    for g in (1, 2, 3):
        p = random_parabolic(g, rng)
        z = rng.standard_normal((g, g)) + 1j * rng.standard_normal((g, g))
        z = (z + z.T) / 2
        m = gsp_assemble(TWO_PI_I, z, p)
        scale = max(1.0, maxabs(m) ** 2)
        assert abs(gsp_multiplier(m, 1e-6 * scale) - TWO_PI_I) <= 1e-6 * scale


def test_gsp_factor_assemble_round_trips():
    rng = np.random.default_rng(15)
    done = 0
    while done < 20:
        g = int(rng.integers(1, 4))
        s = random_symplectic_word(g, rng)
        a_block = s[:g, :g]
        if np.linalg.cond(a_block) > 1e3:
            continue
        nu, z, p = gsp_factor(s, 1e-7 * max(1.0, maxabs(s) ** 2))
        back = gsp_assemble(nu, z, p)
        assert maxabs(back - s) <= 1e-9 * max(1.0, maxabs(s))
        done += 1
    # reverse direction on random triples
    for _ in range(10):
        g = int(rng.integers(1, 4))
        p = random_parabolic(g, rng)
        z = rng.standard_normal((g, g)) + 1j * rng.standard_normal((g, g))
        z = (z + z.T) / 2
        nu = complex(rng.standard_normal() + 1j * rng.standard_normal()) + 3.0
        m = gsp_assemble(nu, z, p)
        nu2, z2, p2 = gsp_factor(m, 1e-6 * max(1.0, maxabs(m) ** 2))
        assert abs(nu2 - nu) <= 1e-10 * abs(nu)
        assert maxabs(z2 - z) <= 1e-10 * max(1.0, maxabs(z))
        assert maxabs(p2.a - p.a) <= 1e-10 * max(1.0, maxabs(p.a))
        assert maxabs(p2.b - p.b) <= 1e-10 * max(1.0, maxabs(p.b))


def test_parabolic_mirror_identity_and_shear():
    g = 2
    assert allclose_abs(parabolic_mirror(identity_parabolic(g)), eye(2 * g), 1e-15)
    b = np.array([[1.0, 2.0], [2.0, -1.0]], dtype=complex)
    p = ParabolicElement(eye(g), b)
    expected = block_join(eye(g), np.zeros((g, g)), TWO_PI_I * b, eye(g))
    assert allclose_abs(parabolic_mirror(p), expected, 1e-15)


def test_parabolic_mirror_is_homomorphism_into_sp():
    rng = np.random.default_rng(16)
    for g in (1, 2, 3):
        p1 = random_parabolic(g, rng)
        p2 = random_parabolic(g, rng)
        lhs = parabolic_mirror(p1.compose(p2))
        rhs = parabolic_mirror(p1) @ parabolic_mirror(p2)
        assert maxabs(lhs - rhs) <= 1e-10 * max(1.0, maxabs(rhs))
        m = parabolic_mirror(p1)
        assert is_symplectic(m, 1e-9 * max(1.0, maxabs(m) ** 2))


def test_parabolic_mirror_injective_on_samples():
    rng = np.random.default_rng(17)
    ps = [random_parabolic(2, rng) for _ in range(6)]
    ms = [parabolic_mirror(p) for p in ps]
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            assert maxabs(ms[i] - ms[j]) > 1e-6


def test_lie_generator_nilpotency_exact():
    g = 3
    gens = [lie_generator(k, l, g) for k in range(1, g + 1) for l in range(k, g + 1)]
    for a in gens:
        # Lie algebra shape: B symmetric, C symmetric, D = -A^T
        from periodflows.numerics import block_split

        aa, bb, cc, dd = block_split(a)
        assert maxabs(aa) == 0 and maxabs(cc) == 0
        assert np.array_equal(bb, bb.T)
        assert np.array_equal(dd, -aa.T)
        for b in gens:
            assert maxabs(a @ b) == 0.0


def test_same_coset_reflexive_and_left_translates():
    rng = np.random.default_rng(18)
    for g in (1, 2):
        s = random_symplectic_word(g, rng)
        assert same_integer_coset(s, s)
        gamma = random_integer_symplectic(g, rng)
        assert same_integer_coset(gamma @ s, s)


def test_same_coset_translation_by_integer_symmetric():
    from periodflows.flows import unipotent

    rng = np.random.default_rng(19)
    tau = np.array([[0.2 + 1.3j, 0.4], [0.4, -0.1 + 1.7j]])
    n = np.array([[2.0, 1.0], [1.0, -3.0]], dtype=complex)
    assert same_integer_coset(unipotent(tau + n), unipotent(tau))
    assert not same_integer_coset(unipotent(tau + 0.5 * n), unipotent(tau))


def test_same_coset_is_equivalence_on_finite_set():
    from periodflows.flows import unipotent

    rng = np.random.default_rng(20)
    tau = np.array([[0.3 + 1.1j]])
    base = unipotent(tau)
    gammas = [random_integer_symplectic(1, rng) for _ in range(3)]
    others = [random_symplectic_word(1, rng) for _ in range(2)]
    elems = [base] + [gm @ base for gm in gammas] + others
    n = len(elems)
    rel = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            rel[i, j] = same_integer_coset(elems[i], elems[j])
    assert np.all(np.diag(rel))
    assert np.array_equal(rel, rel.T)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if rel[i, j] and rel[j, k]:
                    assert rel[i, k]
    # the coset classes are not all equal
    assert not np.all(rel)


def test_parabolic_element_validation():
    with pytest.raises(ValueError):
        ParabolicElement(eye(2), np.array([[0.0, 1.0], [0.0, 0.0]]))
