'''
3-vector / 3x3-matrix helpers shared by every module

Vectors are numpy arrays of shape (3,), matrices of shape (3, 3).
Rotation helpers accept stacked inputs of shape (..., 3) / (..., 3, 3)
so the engine can update every clump with one call.
'''
import math
from typing import Tuple

import numpy as np

from ClumpDEM_CLI.errors import InvalidInputError

Vec3 = np.ndarray
Mat3 = np.ndarray

JACOBI_TOLERANCE = 1e-13
JACOBI_MAX_SWEEPS = 50
SYMMETRY_TOLERANCE = 1e-12
ORTHONORMAL_TOLERANCE = 1e-10


class EigenResult:
    '''
    eigenvalues sorted descending, axes[i] is the unit eigenvector of eigenvalues[i]
    the three axes form a right-handed basis
    '''
    def __init__(self, eigenvalues: np.ndarray, axes: np.ndarray):
        self.eigenvalues = eigenvalues # type: np.ndarray
        self.axes = axes # type: np.ndarray

    @property
    def rotation(self) -> Mat3:
        return rotation_from_axes(*self.axes)


def as_vec3(value, name: str = 'vector') -> Vec3:
    vec = np.asarray(value, dtype=float)
    if vec.shape != (3,):
        raise InvalidInputError(f'{name} must have 3 components, got shape {vec.shape}')
    if not np.all(np.isfinite(vec)):
        raise InvalidInputError(f'{name} has non-finite components: {vec}')
    return vec


def as_mat3(value, name: str = 'matrix') -> Mat3:
    mat = np.asarray(value, dtype=float)
    if mat.shape != (3, 3):
        raise InvalidInputError(f'{name} must be 3x3, got shape {mat.shape}')
    if not np.all(np.isfinite(mat)):
        raise InvalidInputError(f'{name} has non-finite entries')
    return mat


def skew(v: np.ndarray) -> np.ndarray:
    ''' cross-product matrix, skew(a) @ b == cross(a, b); works on stacks '''
    v = np.asarray(v, dtype=float)
    out = np.zeros(v.shape[:-1] + (3, 3))
    out[..., 0, 1] = -v[..., 2]
    out[..., 0, 2] = v[..., 1]
    out[..., 1, 0] = v[..., 2]
    out[..., 1, 2] = -v[..., 0]
    out[..., 2, 0] = -v[..., 1]
    out[..., 2, 1] = v[..., 0]
    return out


def axis_rotation(axis: int, angle: float) -> Mat3:
    ''' right-handed rotation by angle about global axis 0, 1 or 2 '''
    c, s = math.cos(angle), math.sin(angle)
    i, j = [(1, 2), (2, 0), (0, 1)][axis]
    rot = np.eye(3)
    rot[i, i] = c
    rot[j, j] = c
    rot[i, j] = -s
    rot[j, i] = s
    return rot


def _jacobi_sweeps(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    v = np.eye(3)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return a, v
    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(2.0 * (a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2))
        if off < JACOBI_TOLERANCE * scale:
            break
        for p, q in ((0, 1), (0, 2), (1, 2)):
            apq = a[p, q]
            if apq == 0.0:
                continue
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            rot = np.eye(3)
            rot[p, p] = c
            rot[q, q] = c
            rot[p, q] = s
            rot[q, p] = -s
            a = rot.T @ a @ rot
            a = 0.5 * (a + a.T)
            v = v @ rot
    return a, v


def eig_sym3(m) -> EigenResult:
    '''
    cyclic Jacobi eigendecomposition of a symmetric 3x3 matrix

    eigenvalues come back in descending order; if the sorted eigenbasis is
    left-handed the third axis is negated
    '''
    m = as_mat3(m, 'symmetric matrix')
    size = max(float(np.abs(m).max()), np.finfo(float).tiny)
    if float(np.abs(m - m.T).max()) > SYMMETRY_TOLERANCE * size:
        raise InvalidInputError(f'matrix is not symmetric:\n{m}')
    diag, vectors = _jacobi_sweeps(0.5 * (m + m.T))
    values = np.diag(diag).copy()
    order = np.argsort(-values, kind='stable')
    values = values[order]
    vectors = vectors[:, order]
    if np.linalg.det(vectors) < 0.0:
        vectors[:, 2] = -vectors[:, 2]
    return EigenResult(values, vectors.T.copy())


def rotation_from_axes(e1, e2, e3) -> Mat3:
    '''
    Q[a, b] = n_a . e_b, i.e. column b of Q is the axis e_b written in
    global coordinates; body vectors map to the world as Q @ x
    '''
    q = np.column_stack([as_vec3(e1, 'e1'), as_vec3(e2, 'e2'), as_vec3(e3, 'e3')])
    if np.abs(q.T @ q - np.eye(3)).max() > ORTHONORMAL_TOLERANCE:
        raise InvalidInputError('axes are not orthonormal')
    if np.linalg.det(q) < 0.0:
        raise InvalidInputError('axes form a left-handed basis')
    return q


def orthonormalize(q: np.ndarray) -> np.ndarray:
    ''' Gram-Schmidt on the columns, third column rebuilt as c0 x c1 so det stays +1 '''
    q = np.asarray(q, dtype=float)
    c0 = q[..., :, 0]
    c0 = c0 / np.linalg.norm(c0, axis=-1, keepdims=True)
    c1 = q[..., :, 1]
    c1 = c1 - np.sum(c0 * c1, axis=-1, keepdims=True) * c0
    c1 = c1 / np.linalg.norm(c1, axis=-1, keepdims=True)
    c2 = np.cross(c0, c1)
    return np.stack([c0, c1, c2], axis=-1)


def rotation_vector_matrix(phi: np.ndarray) -> np.ndarray:
    ''' Rodrigues formula: rotation by angle |phi| about phi / |phi| '''
    phi = np.asarray(phi, dtype=float)
    angle = np.linalg.norm(phi, axis=-1)
    safe = np.where(angle > 0.0, angle, 1.0)
    k = skew(phi / safe[..., None])
    sin = np.sin(angle)[..., None, None]
    cos = np.cos(angle)[..., None, None]
    eye = np.broadcast_to(np.eye(3), k.shape)
    return eye + sin * k + (1.0 - cos) * (k @ k)


def rotate_increment(q: np.ndarray, omega: np.ndarray, dt: float) -> np.ndarray:
    '''
    compose orientation q with the rotation a world-frame angular
    velocity omega produces during dt, then re-orthonormalize

    q may be a single (3, 3) matrix with omega (3,), or stacks (n, 3, 3) / (n, 3)
    '''
    q = np.asarray(q, dtype=float)
    omega = np.asarray(omega, dtype=float)
    if q.ndim == 2 and not np.any(omega):
        return q.copy()
    return orthonormalize(rotation_vector_matrix(omega * dt) @ q)


def world_inertia(q: np.ndarray, body_diagonal: np.ndarray) -> np.ndarray:
    ''' Q diag(I_body) Q^T, stacked over leading axes '''
    q = np.asarray(q, dtype=float)
    return (q * np.asarray(body_diagonal, dtype=float)[..., None, :]) @ np.swapaxes(q, -1, -2)
