import math

import numpy as np
import pytest

from twistlab.calderon import (
    boundary_norms,
    boundary_norms_grid,
    conformal_constant,
    extremal_selector,
    numeric_derivative,
    selector_derivative,
)
from twistlab.sequences import lp_norm


def test_selector_at_base_point_is_identity():
    x = np.array([3.0, -4.0, 0.0])
    out = extremal_selector(x, 0.5)
    np.testing.assert_allclose(out.real, x, rtol=1e-14)
    np.testing.assert_allclose(out.imag, 0.0, atol=1e-14)


def test_selector_rejects_zero_and_off_strip():
    with pytest.raises(ValueError):
        extremal_selector(np.zeros(3), 0.5)
    with pytest.raises(ValueError):
        extremal_selector(np.array([1.0]), 1.5)


def test_boundary_moduli_for_three_four():
    # on Re z = 0 every nonzero coordinate has modulus ||x||_2 = 5;
    # on Re z = 1 the modulus vector is (9/5, 16/5) with l1 norm 5
    x = np.array([3.0, 4.0])
    for t in (-2.0, 0.0, 0.4):
        left = np.abs(extremal_selector(x, 1j * t))
        np.testing.assert_allclose(left, [5.0, 5.0], rtol=1e-12)
        right = np.abs(extremal_selector(x, 1.0 + 1j * t))
        np.testing.assert_allclose(right, [9.0 / 5.0, 16.0 / 5.0], rtol=1e-12)
        linf, l1 = boundary_norms(x, t)
        assert max(linf, l1) == pytest.approx(5.0, rel=1e-12)


def test_boundary_grid_matches_pointwise():
    rng = np.random.default_rng(121)
    x = rng.standard_normal(17)
    ts = rng.uniform(-5.0, 5.0, 10)
    linf, l1 = boundary_norms_grid(x, ts)
    for i, t in enumerate(ts):
        p_linf, p_l1 = boundary_norms(x, t)
        assert linf[i] == pytest.approx(p_linf, rel=1e-14)
        assert l1[i] == pytest.approx(p_l1, rel=1e-14)


def test_boundary_optimality_random():
    # 10^3 vectors, 10^2 boundary points each
    rng = np.random.default_rng(12)
    ts = np.linspace(-5.0, 5.0, 100)
    worst = 0.0
    for _ in range(1000):
        dim = int(rng.integers(2, 65))
        x = rng.standard_normal(dim)
        norm = lp_norm(x, 2)
        linf, l1 = boundary_norms_grid(x, ts)
        dev = np.abs(np.maximum(linf, l1) - norm) / norm
        worst = max(worst, float(np.max(dev)))
    assert worst <= 1e-9


def test_derivative_order0_and_kp_witness():
    e1 = np.array([1.0, 0.0, 0.0])
    np.testing.assert_array_equal(selector_derivative(e1, 1), np.zeros(3))
    n = 9
    ones = np.ones(n)
    np.testing.assert_allclose(
        selector_derivative(ones, 1), -math.log(n) * ones, rtol=1e-14
    )
    np.testing.assert_array_equal(selector_derivative(e1, 0), e1)


def test_order2_formula_against_numeric():
    x = np.array([3.0, 4.0])
    expected = 2.0 * np.array(
        [3.0 * math.log(3.0 / 5.0) ** 2, 4.0 * math.log(4.0 / 5.0) ** 2]
    )
    np.testing.assert_allclose(selector_derivative(x, 2), expected, rtol=1e-14)
    fd = numeric_derivative(x, 2, 1e-3)
    np.testing.assert_allclose(fd, 2.0 * expected, rtol=1e-6)


def test_numeric_derivative_agreement_random():
    rng = np.random.default_rng(13)
    for _ in range(200):
        dim = int(rng.integers(2, 65))
        x = rng.standard_normal(dim)
        x[x == 0.0] = 1.0
        d1 = selector_derivative(x, 1)
        f1 = numeric_derivative(x, 1, 1e-4)
        assert np.linalg.norm(d1 - f1) <= 1e-6 * np.linalg.norm(d1)
        d2 = selector_derivative(x, 2)
        f2 = numeric_derivative(x, 2, 1e-3)
        assert np.linalg.norm(2.0 * d2 - f2) <= 1e-4 * np.linalg.norm(2.0 * d2)


def test_numeric_derivative_near_basis_vector():
    out = numeric_derivative(np.array([1.0, 0.0]), 1, 1e-4)
    assert np.max(np.abs(out)) <= 1e-7


def test_numeric_derivative_step_validation():
    x = np.array([1.0, 2.0])
    with pytest.raises(ValueError):
        numeric_derivative(x, 1, 1e-7)
    with pytest.raises(ValueError):
        numeric_derivative(x, 1, 0.5)


def test_differential_homogeneity_incl_negative():
    rng = np.random.default_rng(14)
    x = rng.standard_normal(20)
    for lam in (-2.0, -0.5, 4.0):
        for order in (1, 2):
            lhs = selector_derivative(lam * x, order)
            rhs = lam * selector_derivative(x, order)
            np.testing.assert_allclose(lhs, rhs, rtol=1e-12)


def test_selector_homogeneity_negative_scalar():
    x = np.array([1.0, -2.0, 3.0])
    z = 0.3 + 0.2j
    np.testing.assert_allclose(
        extremal_selector(-2.0 * x, z), -2.0 * extremal_selector(x, z), rtol=1e-12
    )


def test_conformal_data():
    data = conformal_constant("symmetric_strip")
    phi = data.phi_eval
    assert abs(phi(0.5)) < 1e-12
    assert abs(data.d) < 1e-8
    assert data.phi_prime_half == pytest.approx(1j * math.pi / 2.0, rel=1e-9)
    val = abs(phi(0.25))
    assert 0.0 < val < 1.0
    # interior spot grid stays inside the disk
    for re in (0.1, 0.5, 0.9):
        for im in (-2.0, 0.0, 1.5):
            assert abs(phi(re + 1j * im)) < 1.0


def test_conformal_rejects_unknown_choice():
    with pytest.raises(ValueError):
        conformal_constant("upper_half_plane")
