import numpy as np
import pytest

from periodflows.numerics import eye, maxabs
from periodflows.siegel import (
    OutOfChartError,
    chart_act,
    chart_contains,
    cocycle,
    is_siegel_point,
    moebius,
    random_siegel_point,
    require_siegel_point,
)
from periodflows.sympgrp import (
    j_matrix,
    random_integer_symplectic,
    random_symplectic_word,
)
from periodflows.flows import unipotent


def real_symplectic(g, rng):
    return random_symplectic_word(g, rng, complex_entries=False)


def test_membership_basics():
    for g in (1, 2, 3):
        assert is_siegel_point(1j * eye(g))
        assert not is_siegel_point(eye(g))  # real symmetric: Im = 0
    assert not is_siegel_point(np.array([[1j, 1.0], [0.0, 1j]]))  # not symmetric


def test_membership_by_minors():
    tau = np.array([[2j, 1.0], [1.0, 1j]])
    # Im tau = diag-ish [[2,0],[0,1]]: minors 2 and 2 are positive
    assert is_siegel_point(tau)
    bad = np.array([[2j, 1.0 + 3j], [1.0 + 3j, 1j]])
    # det Im = 2 - 9 < 0
    assert not is_siegel_point(bad)


def test_moebius_identity_and_j_fixed_point():
    tau = random_siegel_point(2, np.random.default_rng(0))
    assert maxabs(moebius(eye(4), tau) - tau) == 0.0
    g = 2
    assert maxabs(moebius(j_matrix(g), 1j * eye(g)) - 1j * eye(g)) <= 1e-14


def test_moebius_translation():
    tau = random_siegel_point(2, np.random.default_rng(1))
    n = np.array([[1.0, 2.0], [2.0, 0.0]], dtype=complex)
    assert maxabs(moebius(unipotent(n), tau) - (tau + n)) <= 1e-13


def test_moebius_rejects_complex_matrices():
    z = np.array([[1j]])
    with pytest.raises(ValueError):
        moebius(unipotent(z), np.array([[2j]]))


def test_moebius_preserves_domain_seeded():
    rng = np.random.default_rng(2)
    count = 0
    for g in (1, 2, 3):
        for _ in range(34):
            gamma = real_symplectic(g, rng)
            tau = random_siegel_point(g, rng)
            out = moebius(gamma, tau)
            assert is_siegel_point(out)
            count += 1
    assert count >= 100


def test_moebius_group_action_law():
    rng = np.random.default_rng(3)
    for g in (1, 2):
        for _ in range(10):
            g1 = real_symplectic(g, rng)
            g2 = real_symplectic(g, rng)
            tau = random_siegel_point(g, rng)
            lhs = moebius(g1 @ g2, tau)
            rhs = moebius(g1, moebius(g2, tau))
            assert maxabs(lhs - rhs) <= 1e-8 * max(1.0, maxabs(lhs))


def test_cocycle_identity_and_values():
    g = 2
    tau = random_siegel_point(g, np.random.default_rng(4))
    assert maxabs(cocycle(eye(2 * g), tau) - eye(g)) == 0.0
    assert maxabs(cocycle(j_matrix(g), 1j * eye(g)) - (-1j) * eye(g)) == 0.0


def test_cocycle_law_seeded_including_complex():
    rng = np.random.default_rng(5)
    checked = 0
    for g in (1, 2, 3):
        for _ in range(34):
            d1 = random_symplectic_word(g, rng)
            gamma2 = real_symplectic(g, rng)
            tau = random_siegel_point(g, rng)
            lhs = cocycle(d1 @ gamma2, tau)
            rhs = cocycle(d1, moebius(gamma2, tau)) @ cocycle(gamma2, tau)
            assert maxabs(lhs - rhs) <= 1e-10 * max(1.0, maxabs(lhs), maxabs(rhs))
            checked += 1
    assert checked >= 100


def test_chart_contains_examples():
    g = 2
    tau = random_siegel_point(g, np.random.default_rng(6))
    assert chart_contains(eye(2 * g), tau)
    assert chart_contains(j_matrix(g), 1j * eye(g))


def test_chart_boundary_g1():
    # delta with (c, d) = (1, -tau0) for real tau0 excludes exactly tau = tau0
    tau0 = 0.75
    delta = np.array([[0.0, -1.0], [1.0, -tau0]], dtype=complex)
    # bottom row gives c tau + d = tau - tau0
    assert not chart_contains(delta, np.array([[tau0 + 1e-14j]]))
    assert not chart_contains(delta, np.array([[tau0 + 0.0j]]))
    assert chart_contains(delta, np.array([[tau0 + 1j]]))


def test_chart_membership_stable_under_integer_action():
    # if gamma.tau is in the chart of delta then tau is in the chart of delta gamma
    rng = np.random.default_rng(7)
    for g in (1, 2):
        for _ in range(25):
            delta = random_symplectic_word(g, rng)
            gamma = random_integer_symplectic(g, rng)
            tau = random_siegel_point(g, rng)
            if chart_contains(delta, moebius(gamma, tau)):
                assert chart_contains(delta @ gamma, tau)


def test_chart_act_matches_moebius_for_real_elements():
    rng = np.random.default_rng(8)
    for g in (1, 2):
        gamma = real_symplectic(g, rng)
        tau = random_siegel_point(g, rng)
        assert maxabs(chart_act(gamma, tau) - moebius(gamma, tau)) <= 1e-10


def test_chart_act_unipotent_translation():
    z = np.array([[0.5 + 0.5j, 1.0], [1.0, -2.0 + 0.25j]])
    w = np.array([[1.0 + 1j, 0.0], [0.0, 2.0]])
    w = (w + w.T) / 2
    assert maxabs(chart_act(unipotent(w), z) - (z + w)) <= 1e-13


def test_chart_act_output_symmetric():
    rng = np.random.default_rng(9)
    for _ in range(20):
        g = int(rng.integers(1, 4))
        delta = random_symplectic_word(g, rng)
        tau = random_siegel_point(g, rng)
        if not chart_contains(delta, tau):
            continue
        out = chart_act(delta, tau)
        assert maxabs(out - out.T) <= 1e-9 * max(1.0, maxabs(out))


def test_chart_act_out_of_chart_raises():
    delta = j_matrix(1)
    with pytest.raises(OutOfChartError):
        chart_act(delta, np.zeros((1, 1)))  # C z + D = z = 0


def test_require_siegel_point_symmetrizes():
    tau = np.array([[1j, 0.1 + 1e-12], [0.1, 1j]])
    out = require_siegel_point(tau)
    assert maxabs(out - out.T) == 0.0
