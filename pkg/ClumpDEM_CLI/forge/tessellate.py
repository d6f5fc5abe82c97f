'''
triangle meshes of simple solids, outward winding; closed except the open charts
'''
from typing import List

import numpy as np

from ClumpDEM_CLI.models.mesh import TriMesh
from ClumpDEM_CLI.models.template import PebbleSpec


def _latlong(center, radius: float, segments: int, phi: np.ndarray, closed: bool) -> TriMesh:
    n, m = segments, len(phi)
    theta = np.pi * np.arange(1, n) / n
    ring = np.stack([
        np.outer(np.sin(theta), np.cos(phi)),
        np.outer(np.sin(theta), np.sin(phi)),
        np.repeat(np.cos(theta)[:, None], m, axis=1),
    ], axis=-1).reshape(-1, 3)
    vertices = np.vstack([[0.0, 0.0, 1.0], ring, [0.0, 0.0, -1.0]])
    north, south = 0, len(vertices) - 1
    faces = []
    j = np.arange(m) if closed else np.arange(m - 1)
    jn = (j + 1) % m
    k = len(j)
    first = 1 + j
    faces.append(np.stack([np.full(k, north), first, 1 + jn], axis=1))
    for i in range(n - 2):
        top = 1 + i * m
        bottom = top + m
        faces.append(np.stack([top + j, bottom + j, bottom + jn], axis=1))
        faces.append(np.stack([top + j, bottom + jn, top + jn], axis=1))
    last = 1 + (n - 2) * m
    faces.append(np.stack([last + j, np.full(k, south), last + jn], axis=1))
    return TriMesh(np.asarray(center, dtype=float) + radius * vertices, np.vstack(faces))


def latlong_sphere(center, radius: float, segments: int) -> TriMesh:
    '''
    sphere inscribed mesh with `segments` equal latitude steps and
    2 * segments azimuth steps; the poles are single vertices
    '''
    phi = np.pi * np.arange(2 * segments) / segments
    return _latlong(center, radius, segments, phi, closed=True)


def latlong_chart(center, radius: float, segments: int, seam: float = 0.0) -> TriMesh:
    '''
    open latitude-longitude chart: `segments` latitude steps on theta in
    (0, pi), 2 * segments azimuth steps on phi in (seam, seam + 2 pi)

    the 2N - 1 azimuth nodes lie strictly inside the open range, so the two
    strips meeting at the seam meridian are left uncovered
    '''
    phi = seam + np.pi * np.arange(1, 2 * segments) / segments
    return _latlong(center, radius, segments, phi, closed=False)


def icosphere(center, radius: float, subdivisions: int) -> TriMesh:
    t = (1.0 + 5 ** 0.5) / 2.0
    vertices = [
        [-1, t, 0], [1, t, 0], [-1, -t, 0], [1, -t, 0],
        [0, -1, t], [0, 1, t], [0, -1, -t], [0, 1, -t],
        [t, 0, -1], [t, 0, 1], [-t, 0, -1], [-t, 0, 1],
    ]
    faces = [
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ]
    vertices = [list(np.asarray(v, dtype=float) / np.linalg.norm(v)) for v in vertices]
    for _ in range(subdivisions):
        midpoint = {}

        def middle(i, j):
            key = (min(i, j), max(i, j))
            if key not in midpoint:
                v = np.add(vertices[i], vertices[j])
                vertices.append(list(v / np.linalg.norm(v)))
                midpoint[key] = len(vertices) - 1
            return midpoint[key]
        refined = []
        for a, b, c in faces:
            ab, bc, ca = middle(a, b), middle(b, c), middle(c, a)
            refined += [[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]
        faces = refined
    return TriMesh(np.asarray(center, dtype=float) + radius * np.asarray(vertices), faces)


def cube(lo=(0.0, 0.0, 0.0), edge: float = 1.0) -> TriMesh:
    corners = np.array([[x, y, z] for x in (0, 1) for y in (0, 1) for z in (0, 1)], dtype=float)
    # index = 4x + 2y + z
    faces = [
        [0, 1, 3], [0, 3, 2],  # x = 0
        [4, 6, 7], [4, 7, 5],  # x = 1
        [0, 4, 5], [0, 5, 1],  # y = 0
        [2, 3, 7], [2, 7, 6],  # y = 1
        [0, 2, 6], [0, 6, 4],  # z = 0
        [1, 5, 7], [1, 7, 3],  # z = 1
    ]
    return TriMesh(np.asarray(lo, dtype=float) + edge * corners, faces)


def pebbles_mesh(pebbles: List[PebbleSpec], segments: int) -> TriMesh:
    ''' union of per-pebble latitude-longitude meshes, valid for non-overlapping pebbles '''
    vertices, faces, offset = [], [], 0
    for p in pebbles:
        mesh = latlong_sphere(p.center, p.radius, segments)
        vertices.append(mesh.vertices)
        faces.append(mesh.faces + offset)
        offset += len(mesh.vertices)
    return TriMesh(np.vstack(vertices), np.vstack(faces))


def two_sphere_clump(radius: float = 1.0) -> List[PebbleSpec]:
    ''' two equal spheres touching at the origin, centers on the x axis '''
    return [PebbleSpec((-radius, 0.0, 0.0), radius), PebbleSpec((radius, 0.0, 0.0), radius)]


def two_sphere_reference(radius: float = 1.0, density: float = 1.0):
    ''' exact (mass, I_major, I_minor) of two_sphere_clump '''
    mass = 2.0 * density * 4.0 / 3.0 * np.pi * radius ** 3
    minor = 0.4 * mass * radius ** 2
    major = minor + mass * radius ** 2
    return mass, major, minor


def two_sphere_chart(segments: int, radius: float = 1.0) -> TriMesh:
    '''
    latitude-longitude charts of two_sphere_clump, poles along z, each seam
    45 degrees off the clump axis and the two charts mirrored through the origin
    '''
    left = latlong_chart((-radius, 0.0, 0.0), radius, segments, seam=1.25 * np.pi)
    right = latlong_chart((radius, 0.0, 0.0), radius, segments, seam=0.25 * np.pi)
    faces = np.vstack([left.faces, right.faces + len(left.vertices)])
    return TriMesh(np.vstack([left.vertices, right.vertices]), faces)
