import numpy as np
import pytest

from hplaplace.quadrature import (
    GAUSS_LOBATTO,
    NEWTON_COTES,
    error_constant,
    gauss_lobatto,
    lobatto_nodes_legendre,
    newton_cotes_closed,
)


def lobatto4_moment_oracle():
    """Solve the n=4 moment equations on [-1, 1] by direct elimination.

    Symmetry forces nodes {-1, -x, x, 1} and weights {w1, w2, w2, w1};
    matching moments j = 0, 2, 4 pins all three unknowns.
    """
    # 2 w1 + 2 w2       = 2
    # 2 w1 + 2 w2 x^2   = 2/3
    # 2 w1 + 2 w2 x^4   = 2/5
    x2 = (2.0 / 3.0 - 2.0 / 5.0) / (2.0 - 2.0 / 3.0)
    x = np.sqrt(x2)
    w2 = (2.0 - 2.0 / 3.0) / (2.0 * (1.0 - x2))
    w1 = 1.0 - w2
    return x, w1, w2


def test_trapezoidal_case():
    rule = gauss_lobatto(2, 0.0, 1.0)
    assert rule.family == GAUSS_LOBATTO
    assert rule.degree == 1
    np.testing.assert_allclose(rule.nodes, [0.0, 1.0], atol=0)
    np.testing.assert_allclose(rule.weights, [0.5, 0.5], atol=0)


def test_simpson_case():
    rule = gauss_lobatto(3, 0.0, 1.0)
    assert rule.degree == 3
    np.testing.assert_allclose(rule.nodes, [0.0, 0.5, 1.0], atol=0)
    np.testing.assert_allclose(rule.weights, [1 / 6, 2 / 3, 1 / 6], rtol=1e-15)


def test_four_point_rule_against_moment_oracle():
    x, w1, w2 = lobatto4_moment_oracle()
    assert x == pytest.approx(1.0 / np.sqrt(5.0), abs=1e-15)
    rule = gauss_lobatto(4, -1.0, 1.0)
    np.testing.assert_allclose(rule.nodes, [-1.0, -x, x, 1.0], atol=1e-14)
    np.testing.assert_allclose(rule.weights, [w1, w2, w2, w1], atol=1e-14)
    np.testing.assert_allclose(rule.weights, [1 / 6, 5 / 6, 5 / 6, 1 / 6], atol=1e-14)


@pytest.mark.parametrize("n", range(2, 11))
def test_exactness_through_degree(n):
    rule = gauss_lobatto(n, 0.0, 1.0)
    for j in range(0, 2 * n - 2):
        q = float(np.dot(rule.weights, rule.nodes ** j))
        assert abs(q - 1.0 / (j + 1)) * (j + 1) <= 1e-12, (n, j)
    # the rule is not exact one degree past 2n-3; the gap shrinks fast
    # with n but stays far above the exactness tolerance
    miss = abs(float(np.dot(rule.weights, rule.nodes ** (2 * n - 2))) - 1.0 / (2 * n - 1))
    assert miss > 1e-13


@pytest.mark.parametrize("n", range(2, 13))
def test_eigen_and_legendre_paths_agree(n):
    rule = gauss_lobatto(n, -1.0, 1.0)
    x, w = lobatto_nodes_legendre(n)
    assert np.max(np.abs(rule.nodes - x)) < 1e-12
    assert np.max(np.abs(rule.weights - w)) < 1e-12


@pytest.mark.parametrize("n", range(2, 13))
def test_positive_weights_and_sum(n):
    a, b = -0.3, 2.1
    rule = gauss_lobatto(n, a, b)
    assert np.all(rule.weights > 0)
    assert abs(rule.weights.sum() - (b - a)) <= 1e-13 * (b - a)
    assert rule.nodes[0] == a and rule.nodes[-1] == b
    assert np.all(np.diff(rule.nodes) > 0)


@pytest.mark.parametrize("n", range(2, 13))
def test_symmetry_about_midpoint(n):
    rule = gauss_lobatto(n, 0.0, 1.0)
    np.testing.assert_allclose(rule.nodes + rule.nodes[::-1], 1.0, atol=1e-15)
    np.testing.assert_allclose(rule.weights, rule.weights[::-1], atol=0)


def test_affine_covariance():
    a, b = 0.7, 2.2
    unit = gauss_lobatto(7, 0.0, 1.0)
    mapped = gauss_lobatto(7, a, b)
    np.testing.assert_allclose(mapped.nodes, a + (b - a) * unit.nodes, atol=1e-13)
    np.testing.assert_allclose(mapped.weights, (b - a) * unit.weights, atol=1e-13)


def test_rule_cache_reuses_unit_arrays():
    r1 = gauss_lobatto(6, 0.0, 1.0)
    r2 = gauss_lobatto(6, 0.0, 1.0)
    assert r1.nodes is r2.nodes
    assert not r1.nodes.flags.writeable


def test_gauss_lobatto_invalid_arguments():
    with pytest.raises(ValueError):
        gauss_lobatto(1, 0.0, 1.0)
    with pytest.raises(ValueError):
        gauss_lobatto(4, 1.0, 0.0)
    with pytest.raises(ValueError):
        gauss_lobatto(4, 2.0, 2.0)


def test_newton_cotes_values():
    np.testing.assert_allclose(newton_cotes_closed(2).weights, [0.5, 0.5], atol=0)
    np.testing.assert_allclose(newton_cotes_closed(3).weights,
                               np.array([1, 4, 1]) / 6.0, rtol=1e-15)
    np.testing.assert_allclose(newton_cotes_closed(5).weights,
                               np.array([7, 32, 12, 32, 7]) / 90.0, rtol=1e-15)


def test_newton_cotes_degrees_and_nodes():
    for n in range(2, 12):
        rule = newton_cotes_closed(n)
        assert rule.family == NEWTON_COTES
        assert rule.degree == (n if n % 2 == 1 else n - 1)
        np.testing.assert_allclose(rule.nodes, np.arange(n) / (n - 1), atol=0)
        for j in range(rule.degree + 1):
            q = float(np.dot(rule.weights, rule.nodes ** j))
            assert abs(q - 1.0 / (j + 1)) * (j + 1) <= 1e-12


def test_newton_cotes_negative_weights_from_nine_points():
    assert np.all(newton_cotes_closed(8).weights > 0)
    assert np.any(newton_cotes_closed(9).weights < 0)
    assert np.any(newton_cotes_closed(11).weights < 0)


def test_newton_cotes_range():
    with pytest.raises(ValueError):
        newton_cotes_closed(1)
    with pytest.raises(ValueError):
        newton_cotes_closed(12)


def test_error_constant_values():
    assert error_constant(1) == -0.25
    assert error_constant(3) == pytest.approx(-1.0 / 5760.0, rel=1e-15)


def test_error_constant_negative_for_all_odd_degrees():
    for p in range(1, 16, 2):
        assert error_constant(p) < 0.0


def test_error_constant_invalid_arguments():
    for p in (0, 2, -1, 4):
        with pytest.raises(ValueError):
            error_constant(p)
