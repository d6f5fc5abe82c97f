import numpy as np
import pytest

from ClumpDEM_CLI.errors import InvalidInputError
from ClumpDEM_CLI.util.linalg import (
    axis_rotation,
    eig_sym3,
    orthonormalize,
    rotate_increment,
    rotation_from_axes,
    rotation_vector_matrix,
    skew,
    world_inertia,
)


def test_eig_sym3_diagonal_sorted_descending():
    eig = eig_sym3(np.diag([1.0, 3.0, 2.0]))
    assert np.allclose(eig.eigenvalues, [3.0, 2.0, 1.0])
    assert np.allclose(np.abs(eig.axes), [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    assert np.linalg.det(eig.rotation) == pytest.approx(1.0)


def test_eig_sym3_matches_numpy(rng):
    for _ in range(50):
        a = rng.normal(size=(3, 3))
        m = a + a.T
        eig = eig_sym3(m)
        assert np.allclose(eig.eigenvalues, np.sort(np.linalg.eigvalsh(m))[::-1], atol=1e-12)
        for value, axis in zip(eig.eigenvalues, eig.axes):
            assert np.allclose(m @ axis, value * axis, atol=1e-10)
        assert np.linalg.det(eig.axes) == pytest.approx(1.0)


def test_eig_sym3_degenerate_and_zero():
    eig = eig_sym3(np.eye(3) * 2.0)
    assert np.allclose(eig.eigenvalues, 2.0)
    assert np.allclose(eig.axes @ eig.axes.T, np.eye(3))
    assert np.allclose(eig_sym3(np.zeros((3, 3))).eigenvalues, 0.0)


def test_eig_sym3_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        eig_sym3([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    with pytest.raises(InvalidInputError):
        eig_sym3(np.full((3, 3), np.nan))
    with pytest.raises(InvalidInputError):
        eig_sym3(np.eye(2))


def test_rotation_from_axes_columns():
    e1, e2, e3 = np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0])
    q = rotation_from_axes(e1, e2, e3)
    assert np.allclose(q[:, 0], e1)
    assert np.allclose(q @ [0.0, 0.0, 1.0], e3)


def test_rotation_from_axes_rejects_bad_bases():
    with pytest.raises(InvalidInputError):
        rotation_from_axes([1, 0, 0], [1, 0, 0], [0, 0, 1])
    with pytest.raises(InvalidInputError):
        rotation_from_axes([1, 0, 0], [0, 1, 0], [0, 0, -1])


def test_skew_is_cross_product(rng):
    a, b = rng.normal(size=3), rng.normal(size=3)
    assert np.allclose(skew(a) @ b, np.cross(a, b))


def test_rotate_increment_quarter_turn():
    q = rotate_increment(np.eye(3), np.array([0.0, 0.0, np.pi / 2]), 1.0)
    assert np.allclose(q, axis_rotation(2, np.pi / 2))
    assert np.allclose(q @ [1.0, 0.0, 0.0], [0.0, 1.0, 0.0])


def test_rotate_increment_zero_omega_is_identity_map():
    q = axis_rotation(0, 0.3)
    out = rotate_increment(q, np.zeros(3), 0.1)
    assert np.array_equal(out, q)
    assert out is not q


def test_rotate_increment_stays_orthonormal(rng):
    q = np.tile(np.eye(3), (4, 1, 1))
    omega = rng.normal(size=(4, 3))
    for _ in range(10000):
        q = rotate_increment(q, omega, 1e-3)
    for m in q:
        assert np.allclose(m.T @ m, np.eye(3), atol=1e-12)
        assert np.linalg.det(m) == pytest.approx(1.0)


@pytest.mark.slow
def test_million_random_increments_stay_orthonormal(rng):
    q = np.tile(np.eye(3), (4, 1, 1))
    for _ in range(1_000_000):
        q = rotate_increment(q, rng.normal(size=(4, 3)), 1e-2)
    for m in q:
        assert np.allclose(m.T @ m, np.eye(3), atol=1e-12)
        assert np.linalg.det(m) == pytest.approx(1.0, abs=1e-12)


def test_rotation_vector_matrix_small_and_zero():
    assert np.allclose(rotation_vector_matrix(np.zeros(3)), np.eye(3))
    phi = np.array([1e-9, 0.0, 0.0])
    assert np.allclose(rotation_vector_matrix(phi), axis_rotation(0, 1e-9))


def test_orthonormalize_repairs_drift():
    q = axis_rotation(1, 0.4) + 1e-6
    fixed = orthonormalize(q)
    assert np.allclose(fixed.T @ fixed, np.eye(3))
    assert np.allclose(fixed, axis_rotation(1, 0.4), atol=1e-5)


def test_world_inertia_rotates_body_diagonal():
    q = axis_rotation(2, np.pi / 2)
    inertia = world_inertia(q, np.array([1.0, 2.0, 3.0]))
    assert np.allclose(inertia, np.diag([2.0, 1.0, 3.0]))
