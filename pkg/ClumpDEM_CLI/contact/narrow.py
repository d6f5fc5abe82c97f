from typing import List, Optional, Union

import numpy as np

from ClumpDEM_CLI.errors import GeometryError
from ClumpDEM_CLI.models.contact import Contact, ContactBatch
from ClumpDEM_CLI.models.pebble import Pebble, PebbleSet
from ClumpDEM_CLI.models.wall import CylinderWall, PlaneWall, Wall

PAIR_CHUNK = 1 << 20


def narrow_pairs(pebbles: PebbleSet, pairs: np.ndarray) -> ContactBatch:
    '''
    sphere-sphere tests of candidate pairs; keeps pairs with overlap > 0
    normal points from the second pebble to the first, the contact point
    sits in the middle of the overlap
    '''
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if len(pairs) == 0:
        return ContactBatch.empty()
    if len(pairs) > PAIR_CHUNK:
        return ContactBatch.concat([
            narrow_pairs(pebbles, pairs[begin:begin + PAIR_CHUNK]) for begin in range(0, len(pairs), PAIR_CHUNK)
        ])
    a, b = pairs[:, 0], pairs[:, 1]
    delta = pebbles.centers[a] - pebbles.centers[b]
    dist = np.sqrt(np.einsum('ij,ij->i', delta, delta))
    overlap = pebbles.radii[a] + pebbles.radii[b] - dist
    hit = overlap > 0
    if np.any(dist[hit] == 0.0):
        k = np.flatnonzero(hit & (dist == 0.0))[0]
        raise GeometryError(f'pebbles {a[k]} and {b[k]} have coincident centers')
    a, b, delta, dist, overlap = a[hit], b[hit], delta[hit], dist[hit], overlap[hit]
    normal = delta / dist[:, None]
    point = pebbles.centers[b] + normal * (pebbles.radii[b] - 0.5 * overlap)[:, None]
    return ContactBatch(a, b, np.full(len(a), -1), normal, overlap, point)


def _plane_contacts(plane: PlaneWall, centers: np.ndarray, radii: np.ndarray):
    overlap = radii - (centers - plane.point) @ plane.normal
    normal = np.broadcast_to(plane.normal, centers.shape)
    return overlap, normal


def _cylinder_contacts(cylinder: CylinderWall, centers: np.ndarray, radii: np.ndarray):
    rel = centers - cylinder.point
    perp = rel - np.outer(rel @ cylinder.axis, cylinder.axis)
    rho = np.linalg.norm(perp, axis=1)
    overlap = radii - (cylinder.radius - rho)
    on_axis = (rho == 0.0) & (overlap > 0)
    if np.any(on_axis):
        raise GeometryError(f'pebble on the cylinder axis with radius >= {cylinder.radius}: normal undefined')
    normal = -perp / np.where(rho > 0, rho, 1.0)[:, None]
    return overlap, normal


def narrow_walls(pebbles: PebbleSet, walls: List[Wall], rows: Optional[np.ndarray] = None) -> ContactBatch:
    ''' wall tests of the primaries (or the given rows), normal points from the wall into the pebble '''
    if rows is None:
        rows = np.arange(pebbles.n_primary)
    batches = []
    for index, wall in enumerate(walls):
        centers, radii = pebbles.centers[rows], pebbles.radii[rows]
        if isinstance(wall, PlaneWall):
            overlap, normal = _plane_contacts(wall, centers, radii)
        elif isinstance(wall, CylinderWall):
            overlap, normal = _cylinder_contacts(wall, centers, radii)
        else:
            raise TypeError(f'unsupported wall {wall!r}')
        hit = overlap > 0
        if not np.any(hit):
            continue
        overlap, normal = overlap[hit], np.asarray(normal)[hit]
        point = centers[hit] - normal * (radii[hit] - 0.5 * overlap)[:, None]
        a = rows[hit]
        batches.append(ContactBatch(a, np.full(len(a), -1), np.full(len(a), index), normal, overlap, point))
    return ContactBatch.concat(batches)


def narrow_phase(first: Pebble, second: Union[Pebble, Wall]) -> Optional[Contact]:
    ''' contact between a pebble and another pebble or a wall, None when not overlapping '''
    if isinstance(second, Pebble):
        if np.array_equal(first.center, second.center):
            raise GeometryError(f'pebbles {first.id} and {second.id} have coincident centers')
        table = PebbleSet([first.center, second.center], [first.radius, second.radius])
        batch = narrow_pairs(table, np.array([[0, 1]]))
        ids = (first.id, second.id)
    else:
        table = PebbleSet([first.center], [first.radius])
        batch = narrow_walls(table, [second])
        ids = (first.id, 0)
    if len(batch) == 0:
        return None
    contact = batch.contact(0)
    contact.ids = ids
    return contact
