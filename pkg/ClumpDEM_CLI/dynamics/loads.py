from typing import Tuple

import numpy as np

from ClumpDEM_CLI.models.box import PeriodicBox
from ClumpDEM_CLI.world.boundaries import min_image


def accumulate_loads(positions: np.ndarray, masses: np.ndarray, gravity: np.ndarray, owners: np.ndarray,
                     forces: np.ndarray, points: np.ndarray, box: PeriodicBox = None) -> Tuple[np.ndarray, np.ndarray]:
    '''
    total force and torque about the center of mass of every clump

    forces[k] acts at points[k] on clump owners[k]; the lever is the
    minimum-image vector from the center of mass to the point. Gravity acts
    once per clump at its center of mass and adds no torque.
    '''
    force = masses[:, None] * np.asarray(gravity, dtype=float)[None, :]
    torque = np.zeros_like(force)
    if len(owners):
        lever = min_image(points - positions[owners], box)
        np.add.at(force, owners, forces)
        np.add.at(torque, owners, np.cross(lever, forces))
    return force, torque


def aggregate_loads(clump, forces, points, gravity=(0.0, 0.0, 0.0), box: PeriodicBox = None) -> Tuple[np.ndarray, np.ndarray]:
    ''' (F, M) of one clump from the pebble contact forces acting on it at the given points '''
    forces = np.asarray(forces, dtype=float).reshape(-1, 3)
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    force, torque = accumulate_loads(
        clump.position[None, :], np.array([clump.mass]), gravity,
        np.zeros(len(forces), dtype=np.int64), forces, points, box,
    )
    return force[0], torque[0]
