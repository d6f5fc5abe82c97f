'''
mass, center of mass and inertia tensor of a clump by three summations

- pebbles: closed-form sphere inertia shifted with Steiner's theorem
- voxels: point masses at the centers of the filled voxels
- mesh: signed tetrahedra spanned by each surface triangle and one apex
'''
import logging
from typing import List

import numpy as np

from ClumpDEM_CLI.errors import ValidationError
from ClumpDEM_CLI.models.mesh import TriMesh
from ClumpDEM_CLI.models.template import MassProperties, PebbleSpec, pebble_arrays
from ClumpDEM_CLI.models.voxel import VoxelGrid

logger = logging.getLogger('clumpdem.forge')


def _check_density(density: float):
    if not density > 0:
        raise ValidationError(f'density must be positive, got {density}')


def _inertia_from_second_moments(c: np.ndarray) -> np.ndarray:
    ''' I = tr(C) 1 - C for the mass-weighted second-moment matrix C '''
    return np.trace(c) * np.eye(3) - c


def inertia_from_pebbles(pebbles: List[PebbleSpec], density: float) -> MassProperties:
    _check_density(density)
    centers, radii = pebble_arrays(pebbles)
    masses = density * 4.0 / 3.0 * np.pi * radii ** 3
    mass = masses.sum()
    com = masses @ centers / mass
    lever = centers - com
    c = np.einsum('j,ja,jb->ab', masses, lever, lever)
    own = 0.4 * np.sum(masses * radii ** 2)
    inertia = _inertia_from_second_moments(c) + own * np.eye(3)
    return MassProperties(mass, com, inertia, density, 'pebbles')


def inertia_from_voxels(grid: VoxelGrid, density: float) -> MassProperties:
    _check_density(density)
    count = grid.filled
    if count == 0:
        raise ValidationError('voxel mask is empty')
    x, y, z = grid.centers_1d()
    mask = grid.mask
    # projections of the mask onto axes and coordinate planes
    nx, ny, nz = mask.sum(axis=(1, 2)), mask.sum(axis=(0, 2)), mask.sum(axis=(0, 1))
    nxy, nxz, nyz = mask.sum(axis=2), mask.sum(axis=1), mask.sum(axis=0)
    first = np.array([nx @ x, ny @ y, nz @ z], dtype=float)
    second = np.empty((3, 3))
    second[0, 0] = nx @ (x * x)
    second[1, 1] = ny @ (y * y)
    second[2, 2] = nz @ (z * z)
    second[0, 1] = second[1, 0] = x @ nxy @ y
    second[0, 2] = second[2, 0] = x @ nxz @ z
    second[1, 2] = second[2, 1] = y @ nyz @ z
    voxel_mass = density * grid.side ** 3
    com = first / count
    c = voxel_mass * (second - count * np.outer(com, com))
    return MassProperties(voxel_mass * count, com, _inertia_from_second_moments(c), density, 'voxels')


def tetra_signed_volume(apex, a, b, c) -> float:
    ''' one sixth of the 4x4 determinant with rows (x, y, z, 1) of apex, a, b, c '''
    rows = np.ones((4, 4))
    rows[:, :3] = [apex, a, b, c]
    return float(np.linalg.det(rows) / 6.0)


def inertia_from_mesh(mesh: TriMesh, density: float, apex=None) -> MassProperties:
    ''' signed tetrahedra from `apex` (default: vertex centroid) to every face '''
    _check_density(density)
    apex = mesh.vertices.mean(axis=0) if apex is None else np.asarray(apex, dtype=float)
    tri = mesh.triangles() - apex
    a, b, c = tri[:, 0], tri[:, 1], tri[:, 2]
    # 4x4 determinant with the apex row at the origin reduces to -det[a; b; c]
    volumes = -np.einsum('ij,ij->i', a, np.cross(b, c)) / 6.0
    total = volumes.sum()
    scale = float(np.ptp(mesh.vertices, axis=0).max()) ** 3
    if abs(total) <= 1e-12 * scale:
        raise ValidationError('mesh encloses zero volume (degenerate or not closed)')
    if total < 0:
        volumes, total = -volumes, -total
    summed = a + b + c
    # tetra centroid relative to the apex is (a + b + c) / 4
    offset = volumes @ summed / (4.0 * total)
    corner = np.einsum('ija,ijb->iab', tri, tri)
    c_apex = np.einsum('i,iab->ab', volumes / 20.0, corner + np.einsum('ia,ib->iab', summed, summed))
    c_com = c_apex - total * np.outer(offset, offset)
    inertia = density * _inertia_from_second_moments(c_com)
    return MassProperties(density * total, apex + offset, inertia, density, 'mesh')
