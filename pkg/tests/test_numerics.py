import numpy as np
import pytest

from periodflows.numerics import (
    DimensionError,
    SingularMatrixError,
    allclose_abs,
    as_matrix,
    block_join,
    block_split,
    eye,
    is_hermitian_pd,
    mat_inv,
    mat_mul,
    matrix_from_json,
    matrix_to_json,
    maxabs,
)
from periodflows.sympgrp import j_matrix


def naive_mul(a, b):
    # independent triple-loop oracle
    n, k = a.shape
    k2, m = b.shape
    assert k == k2
    out = np.zeros((n, m), dtype=complex)
    for i in range(n):
        for j in range(m):
            for t in range(k):
                out[i, j] += a[i, t] * b[t, j]
    return out


def test_mat_mul_identity():
    rng = np.random.default_rng(1)
    x = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    assert allclose_abs(mat_mul(eye(2), x), x, 0.0)


def test_j_squared_is_minus_identity():
    for g in (1, 2, 3):
        j = j_matrix(g)
        assert allclose_abs(mat_mul(j, j), -eye(2 * g), 0.0)


def test_mat_mul_matches_naive_oracle():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    assert maxabs(mat_mul(a, b) - naive_mul(a, b)) <= 1e-13


def test_mat_mul_dimension_mismatch():
    with pytest.raises(DimensionError):
        mat_mul(np.ones((2, 3)), np.ones((2, 3)))


def test_inv_identity_and_diagonal():
    assert allclose_abs(mat_inv(eye(3)), eye(3), 0.0)
    d = np.diag([2.0, 4.0j])
    assert allclose_abs(mat_inv(d), np.diag([0.5, -0.25j]), 1e-15)


def test_inv_residual_well_conditioned():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)) + 4 * eye(4)
    assert maxabs(mat_mul(a, mat_inv(a)) - eye(4)) <= 1e-10


def test_inv_singular_raises():
    with pytest.raises(SingularMatrixError):
        mat_inv(np.zeros((2, 2)))
    m = np.array([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(SingularMatrixError):
        mat_inv(m)


def test_inv_involution_property():
    rng = np.random.default_rng(4)
    for _ in range(10):
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)) + 3 * eye(3)
        assert maxabs(mat_inv(mat_inv(a)) - a) <= 1e-8


def test_associativity_to_roundoff():
    rng = np.random.default_rng(5)
    for _ in range(10):
        a, b, c = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)) for _ in range(3))
        scale = maxabs(a) * maxabs(b) * maxabs(c)
        assert maxabs((a @ b) @ c - a @ (b @ c)) <= 1e-9 * scale


def test_block_split_of_j():
    a, b, c, d = block_split(j_matrix(2))
    assert allclose_abs(a, np.zeros((2, 2)), 0.0)
    assert allclose_abs(b, eye(2), 0.0)
    assert allclose_abs(c, -eye(2), 0.0)
    assert allclose_abs(d, np.zeros((2, 2)), 0.0)


def test_block_round_trip_bit_identical():
    rng = np.random.default_rng(6)
    m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    again = block_join(*block_split(m))
    assert np.array_equal(m, again)


def test_block_split_of_unipotent_shape():
    tau = np.array([[0.3 + 1.1j, 0.1], [0.1, 0.2 + 1.4j]])
    from periodflows.flows import unipotent

    a, b, c, d = block_split(unipotent(tau))
    assert np.array_equal(a, eye(2))
    assert np.array_equal(b, tau.astype(complex))
    assert np.array_equal(c, np.zeros((2, 2)))
    assert np.array_equal(d, eye(2))


def test_finite_entry_validation():
    with pytest.raises(ValueError):
        as_matrix(np.array([[np.inf, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        as_matrix(np.array([[np.nan + 1j, 0.0], [0.0, 1.0]]))


def test_pd_by_leading_minors():
    assert is_hermitian_pd(np.array([[2.0, 0.0], [0.0, 1.0]], dtype=complex))
    assert not is_hermitian_pd(np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex))
    assert not is_hermitian_pd(np.zeros((2, 2), dtype=complex))
    # minor ordering matters: [[eps, 1], [1, eps]] fails on the second minor
    assert not is_hermitian_pd(np.array([[1e-6, 1.0], [1.0, 1e-6]], dtype=complex))


def test_matrix_json_round_trip():
    rng = np.random.default_rng(7)
    m = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    obj = matrix_to_json(m)
    assert obj["rows"] == 2 and obj["cols"] == 3 and len(obj["entries"]) == 6
    assert np.array_equal(matrix_from_json(obj), m)


def test_matrix_json_malformed():
    with pytest.raises(ValueError):
        matrix_from_json({"rows": 2, "cols": 2, "entries": [[1, 0]]})
    with pytest.raises(ValueError):
        matrix_from_json({"rows": 2})
