'''
periodic box handling

clumps never get ghosts; only their pebbles are imaged across periodic
faces, and only for contact detection
'''
import itertools

import numpy as np

from ClumpDEM_CLI.errors import ValidationError
from ClumpDEM_CLI.models.box import PeriodicBox
from ClumpDEM_CLI.models.pebble import PebbleSet

SHIFTS = np.array([s for s in itertools.product((-1, 0, 1), repeat=3) if any(s)], dtype=np.int64)


def min_image(delta: np.ndarray, box: PeriodicBox = None) -> np.ndarray:
    ''' map each periodic component of delta into [-L/2, L/2); works on stacks '''
    delta = np.asarray(delta, dtype=float)
    if box is None or not box.any_periodic:
        return delta
    lengths = box.lengths
    wrapped = delta - lengths * np.floor(delta / lengths + 0.5)
    return np.where(box.periodic, wrapped, delta)


def wrap_positions(points: np.ndarray, box: PeriodicBox = None) -> np.ndarray:
    ''' translate points by whole periods into [lo, hi) on periodic axes '''
    points = np.asarray(points, dtype=float)
    if box is None or not box.any_periodic:
        return points
    wrapped = box.lo + np.mod(points - box.lo, box.lengths)
    # mod can round up to exactly L
    wrapped = np.where(wrapped >= box.hi, box.lo, wrapped)
    return np.where(box.periodic, wrapped, points)


def wrap_clump(clump, box: PeriodicBox):
    ''' move the center of mass back into the box; velocities and orientation are untouched '''
    clump.position = wrap_positions(clump.position, box)
    return clump


def ghost_range(radii: np.ndarray, max_radius: float, margin: float) -> np.ndarray:
    ''' distance from a periodic face inside which a pebble is imaged '''
    return np.asarray(radii, dtype=float) + max_radius + margin


def validate_box(box: PeriodicBox, max_radius: float, margin: float):
    ''' every periodic length must exceed twice the largest ghost range '''
    if box is None:
        return
    reach = 2.0 * (2.0 * max_radius + margin)
    short = box.periodic & (box.lengths <= reach)
    if np.any(short):
        raise ValidationError(
            f'periodic box lengths {box.lengths[short].tolist()} must exceed {reach:.6g} '
            f'(twice the ghost range of the largest pebble)'
        )


def ghost_pebbles(pebbles: PebbleSet, box: PeriodicBox, margin: float = 0.0) -> PebbleSet:
    '''
    primaries plus their periodic images: a pebble within its ghost range
    of a periodic face is imaged across it, near an edge or corner also
    across the combinations (up to 7 images in a triple-periodic box)
    '''
    if box is None or not box.any_periodic or pebbles.n_primary == 0:
        return pebbles.primaries() if len(pebbles) != pebbles.n_primary else pebbles
    n = pebbles.n_primary
    centers = pebbles.centers[:n]
    reach = ghost_range(pebbles.radii[:n], float(pebbles.radii[:n].max()), margin)[:, None]
    near_lo = box.periodic & (centers - box.lo < reach)
    near_hi = box.periodic & (box.hi - centers < reach)
    # allowed[i, s, k]: shift SHIFTS[s] is admissible on axis k for pebble i
    allowed = np.where(
        SHIFTS[None, :, :] == 1, near_lo[:, None, :],
        np.where(SHIFTS[None, :, :] == -1, near_hi[:, None, :], True),
    )
    source, shift = np.nonzero(np.all(allowed, axis=2))
    return pebbles.append_ghosts(source, SHIFTS[shift] * box.lengths)
