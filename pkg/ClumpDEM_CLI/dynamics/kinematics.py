from typing import Tuple

import numpy as np

from ClumpDEM_CLI.models.box import PeriodicBox
from ClumpDEM_CLI.world.boundaries import wrap_positions


def pebble_levers(orientations: np.ndarray, offsets: np.ndarray, owners: np.ndarray) -> np.ndarray:
    ''' world-frame vectors from each owner's center of mass to its pebble, Q @ offset '''
    return np.einsum('nij,nj->ni', orientations[owners], offsets)


def pebble_state(positions: np.ndarray, velocities: np.ndarray, orientations: np.ndarray, omegas: np.ndarray,
                 offsets: np.ndarray, owners: np.ndarray, box: PeriodicBox = None) -> Tuple[np.ndarray, np.ndarray]:
    '''
    centers and velocities of pebbles riding on their clumps:
    center = wrap(x_c + Q offset), velocity = v_c + omega x (Q offset)
    '''
    lever = pebble_levers(orientations, offsets, owners)
    centers = wrap_positions(positions[owners] + lever, box)
    return centers, velocities[owners] + np.cross(omegas[owners], lever)


def update_pebbles(clump, box: PeriodicBox = None) -> Tuple[np.ndarray, np.ndarray]:
    ''' (centers, velocities) of one clump's pebbles '''
    offsets = clump.template.offsets
    owners = np.zeros(len(offsets), dtype=np.int64)
    return pebble_state(
        clump.position[None, :], clump.velocity[None, :], clump.orientation[None, :, :],
        clump.omega[None, :], offsets, owners, box,
    )
