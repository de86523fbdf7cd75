import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from emwavelets.atoms import lattice_grid
from emwavelets.conformal import (Boost, boost_grid, boost_label, center_velocity,
                                  label_scale_and_helicity, rotate_label, rotation_matrix,
                                  scale_label, translate_grid, translate_label)
from emwavelets.core import causal_lambda, lorentz_square, tube_branch
from emwavelets.kernel import k_kernel, mother_matrix, wavelet_matrix

real4 = st.lists(st.floats(-3, 3), min_size=4, max_size=4).map(np.array)
speeds = st.tuples(*[st.floats(-0.55, 0.55)] * 3)
labels = st.builds(lambda x, s: x + 1j * np.array([0, 0, 0, s]), real4,
                   st.floats(0.3, 3) | st.floats(-3, -0.3))


def test_boost_rejects_superluminal():
    with pytest.raises(ValueError):
        Boost((0.8, 0.7, 0.0))


@settings(max_examples=60, deadline=None)
@given(speeds, real4)
def test_boost_group_and_invariance(v, x):
    b = Boost(v)
    assert abs(lorentz_square(b.apply(x)) - lorentz_square(x)) <= 1e-12 * (1 + x @ x) * 10
    np.testing.assert_allclose(b.inverse().apply(b.apply(x)), x, atol=1e-12 * (1 + np.abs(x).max()) * 10)


@settings(max_examples=60, deadline=None)
@given(labels, real4, real4)
def test_translation(z, a, xp):
    lhs = wavelet_matrix(translate_label(z, a), xp)
    rhs = wavelet_matrix(z, xp - a)
    assert np.max(np.abs(lhs - rhs)) <= 1e-13 * np.max(np.abs(rhs))
    b = -0.5 * a
    np.testing.assert_allclose(translate_label(translate_label(z, a), b),
                               translate_label(z, a + b), atol=1e-15 * 10)
    np.testing.assert_array_equal(translate_label(z, np.zeros(4)), z)


@settings(max_examples=60, deadline=None)
@given(labels, st.floats(0.2, 5), real4)
def test_scaling(z, a, xp):
    lhs = wavelet_matrix(scale_label(z, a), xp)
    rhs = a ** -4 * wavelet_matrix(z, xp / a)
    assert np.max(np.abs(lhs - rhs)) <= 1e-13 * np.max(np.abs(rhs))


def test_scaling_examples():
    z = np.array([0, 0, 0, 1j])
    np.testing.assert_array_equal(scale_label(z, 1.0), z)
    xp = np.array([0.3, -0.2, 0.7, 0.1])
    np.testing.assert_allclose(wavelet_matrix(scale_label(z, 2.0), xp),
                               wavelet_matrix(z, xp / 2) / 16, rtol=1e-13)
    zz = scale_label(z, 3.0)
    np.testing.assert_allclose(k_kernel(zz, zz), np.eye(3) / (8 * np.pi ** 2 * 81), rtol=1e-13)
    with pytest.raises(ValueError):
        scale_label(z, 0.0)


@settings(max_examples=60, deadline=None)
@given(real4, st.floats(0.3, 3))
def test_combined_covariance(xp, s):
    x = np.array([0.4, -0.3, 0.2])
    lab = np.append(x, 1j * s)
    lhs = wavelet_matrix(lab, xp)
    rhs = s ** -4 * mother_matrix(np.append((xp[:3] - x) / s, xp[3] / s))
    assert np.max(np.abs(lhs - rhs)) <= 1e-13 * np.max(np.abs(rhs))


@settings(max_examples=60, deadline=None)
@given(labels, speeds)
def test_boost_label_invariants(z, v):
    b = Boost(v)
    zb = boost_label(z, b)
    assert abs(causal_lambda(zb.imag) - causal_lambda(z.imag)) <= 1e-12 * 10
    assert tube_branch(zb) == tube_branch(z)
    assert label_scale_and_helicity(zb)[1] == label_scale_and_helicity(z)[1]
    np.testing.assert_allclose(center_velocity(zb), v, atol=1e-12)


def test_center_velocity_examples():
    np.testing.assert_array_equal(center_velocity([0, 0, 0, 2j]), [0, 0, 0])
    np.testing.assert_allclose(center_velocity([0.3j, 0, 0, 1j]), [0.3, 0, 0])
    assert label_scale_and_helicity([0, 0, 0, 2j]) == (2.0, 1)
    assert label_scale_and_helicity([0, 0, 0, -0.5j]) == (0.5, -1)
    np.testing.assert_array_equal(boost_label([1, 2, 3, 4j], Boost((0, 0, 0))), [1, 2, 3, 4j])


def test_rotation():
    rot = rotation_matrix([0, 0, 1], np.pi / 2)
    np.testing.assert_allclose(rot @ rot.T, np.eye(3), atol=1e-15)
    z = np.array([1.0, 0, 0, 1j])
    np.testing.assert_allclose(rotate_label(z, rot), [0, 1, 0, 1j], atol=1e-15)


def test_boost_grid():
    g = lattice_grid(2, 3, 1.0)
    same = boost_grid(g, Boost((0, 0, 0)))
    np.testing.assert_array_equal(same.labels, g.labels)
    moved = boost_grid(g, Boost((0.3, 0, 0)))
    assert np.all(tube_branch(moved.labels) != 0)
    np.testing.assert_allclose(center_velocity(moved.labels), np.tile([0.3, 0, 0], (len(g), 1)),
                               atol=1e-14)
    np.testing.assert_array_equal(moved.weights, g.weights)
    later = translate_grid(g, [0, 0, 0, 2.0])
    assert np.all(later.labels[:, 3].real == 2.0)
