import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from emwavelets.core import (CausalVector, FourVector, LightConeMomentum, TubeBranch,
                             TubePoint, build_cone_quadrature, in_tube, lorentz_square,
                             minkowski_dot, step)
from emwavelets.conformal import Boost


def test_lorentz_square_examples():
    assert lorentz_square([0, 0, 0, 1]) == 1
    assert lorentz_square([1, 0, 0, 1]) == 0
    assert np.isclose(lorentz_square([0.6, 0, 0, 1.0]), 0.64, rtol=1e-15)


def test_minkowski_dot_examples():
    assert minkowski_dot([0, 0, 0, 1], [0, 0, 0, 1]) == 1
    assert minkowski_dot([1, 0, 0, 1], [1, 0, 0, 1]) == 0
    assert minkowski_dot([0, 0, 1, 1], [0, 0, -1, 1]) == 2


def test_dataclasses_convert_to_arrays():
    v = FourVector(1.0, 2.0, 3.0, 4.0)
    assert lorentz_square(v) == 16 - 14
    z = TubePoint.of([0, 0, 0, 2j])
    assert z.branch == 1
    assert np.asarray(z)[3] == 2j


def test_in_tube():
    assert in_tube([0, 0, 0, 1j]) is TubeBranch.FUTURE
    assert in_tube([0, 0, 0, -2j]) is TubeBranch.PAST
    assert in_tube([1j, 0, 0, 0.5j]) is TubeBranch.OUTSIDE
    assert in_tube([1, 2, 3, 4]) is TubeBranch.OUTSIDE


def test_causal_vector_rejects_null_and_spacelike():
    with pytest.raises(ValueError):
        CausalVector.of([1, 0, 0, 1])
    with pytest.raises(ValueError):
        CausalVector.of([2, 0, 0, 1])
    y = CausalVector.of([0.6, 0, 0, -1.0])
    assert y.helicity_sign == -1
    assert np.isclose(y.lam, 0.8)


def test_light_cone_momentum_validation():
    with pytest.raises(ValueError):
        LightConeMomentum((0.0, 0.0, 0.0), 0.0)
    with pytest.raises(ValueError):
        LightConeMomentum((1.0, 0.0, 0.0), 2.0)
    assert LightConeMomentum((0.0, 3.0, 4.0), -5.0).branch == -1


def test_step_is_half_at_origin():
    assert step(0.0) == 0.5
    assert step(-1e-300) == 0.0


def test_minimal_quadrature_has_one_node_per_branch():
    q = build_cone_quadrature(1, 1, 10.0, 1.0)
    assert len(q) == 2
    assert q.momenta[0, 3] > 0 > q.momenta[1, 3]


@pytest.mark.parametrize("args", [(0, 4, 1.0, 1.0), (4, 0, 1.0, 1.0), (4, 4, 0.0, 1.0),
                                  (4, 4, 1.0, -1.0)])
def test_quadrature_rejects_bad_parameters(args):
    with pytest.raises(ValueError):
        build_cone_quadrature(*args)


def test_quadrature_structure():
    q = build_cone_quadrature(16, 6, 30.0, 0.5)
    half = len(q) // 2
    assert np.all(q.weights > 0) and np.all(np.isfinite(q.weights))
    np.testing.assert_array_equal(q.momenta[half:], -q.momenta[:half])
    np.testing.assert_allclose(np.abs(q.momenta[:, 3]),
                               np.linalg.norm(q.momenta[:, :3], axis=1), rtol=1e-14)
    assert len(q.nodes) == len(q)


def _s_error(q, lam):
    plus = q.momenta[:, 3] > 0
    val = 2 * np.sum(q.weights[plus] * np.exp(-q.momenta[plus, 3] * lam))
    return abs(val - 1 / (2 * np.pi ** 2 * lam ** 2)) / (1 / (2 * np.pi ** 2 * lam ** 2))


@pytest.mark.parametrize("lam,expected", [(1.0, 0.0506606), (2.0, 0.0126651)])
def test_quadrature_reproduces_s_values(lam, expected):
    q = build_cone_quadrature(64, 16, 60.0, 0.5)
    plus = q.momenta[:, 3] > 0
    val = 2 * np.sum(q.weights[plus] * np.exp(-q.momenta[plus, 3] * lam))
    assert abs(val - expected) < 1e-7


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_quadrature_s_accuracy(lam):
    assert _s_error(build_cone_quadrature(64, 16, 60.0, 0.5), lam) < 1e-6


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_radial_doubling_reduces_error_until_floor(lam):
    floor = 1e-11
    errs = [max(_s_error(build_cone_quadrature(r, 4, 60.0, 0.5), lam), floor)
            for r in (8, 16, 32, 64)]
    assert all(b <= a for a, b in zip(errs, errs[1:]))


velocities = st.tuples(*[st.floats(-0.57, 0.57)] * 3)
vectors = st.lists(st.floats(-10, 10), min_size=4, max_size=4)


@settings(max_examples=60, deadline=None)
@given(velocities, vectors)
def test_lorentz_square_boost_invariant(v, x):
    b = Boost(v)
    x = np.array(x)
    lhs = lorentz_square(b.apply(x))
    rhs = lorentz_square(x)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, np.sum(x ** 2)) / (1 - np.dot(v, v))
