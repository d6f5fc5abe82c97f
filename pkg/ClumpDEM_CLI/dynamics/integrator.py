'''
time integration of rigid clumps

Translation uses velocity Verlet. Rotation uses a leap-frog scheme in the
inertial frame: omega lives at half steps, and the angular acceleration at
the integer step is found by fixed-point iteration on Euler's equations
with omega estimated as the mean of the two half-step values.
'''
from typing import Tuple

import numpy as np

from ClumpDEM_CLI.errors import InvalidInputError
from ClumpDEM_CLI.models.contact import ContactModel
from ClumpDEM_CLI.util.linalg import rotate_increment, world_inertia

SINGULAR_TOLERANCE = 1e-12


def kick(velocity: np.ndarray, force: np.ndarray, mass: np.ndarray, dt: float) -> np.ndarray:
    ''' half-step velocity update v + dt/2 F/M, not in place '''
    return velocity + 0.5 * dt * force / np.asarray(mass, dtype=float)[..., None]


def drift(position: np.ndarray, velocity: np.ndarray, dt: float) -> np.ndarray:
    ''' full-step position update x + dt v, not in place '''
    return position + dt * velocity


def integrate_translation(clump, force, dt: float):
    '''
    first half of a velocity-Verlet step of one clump: half kick with the
    current force, then drift; finish_translation completes the step once
    the force at the new position is known
    '''
    clump.velocity = kick(clump.velocity, np.asarray(force, dtype=float), clump.mass, dt)
    clump.position = drift(clump.position, clump.velocity, dt)
    return clump


def finish_translation(clump, force, dt: float):
    clump.velocity = kick(clump.velocity, np.asarray(force, dtype=float), clump.mass, dt)
    return clump


def solve_euler(inertia_world: np.ndarray, omega: np.ndarray, torque: np.ndarray) -> np.ndarray:
    '''
    angular acceleration from I domega/dt = M - W with W = omega x (I omega)
    for a full (not necessarily diagonal) world-frame inertia; stacks allowed
    '''
    inertia_world = np.asarray(inertia_world, dtype=float)
    omega = np.asarray(omega, dtype=float)
    torque = np.asarray(torque, dtype=float)
    det = np.linalg.det(inertia_world)
    scale = (np.trace(inertia_world, axis1=-2, axis2=-1) / 3.0) ** 3
    if np.any(~np.isfinite(det)) or np.any(np.abs(det) <= SINGULAR_TOLERANCE * np.abs(scale)):
        raise InvalidInputError('inertia tensor is singular')
    w = np.cross(omega, np.einsum('...ij,...j->...i', inertia_world, omega))
    return np.linalg.solve(inertia_world, (torque - w)[..., None])[..., 0]


def leapfrog_omega(inertia_world: np.ndarray, omega_half: np.ndarray, torque: np.ndarray, dt: float,
                   iterations: int) -> Tuple[np.ndarray, np.ndarray]:
    '''
    advance omega from t - dt/2 to t + dt/2

    returns (omega at t + dt/2, omega at t); omega at t is the average of the
    two half-step values
    '''
    estimate = omega_half
    for _ in range(iterations):
        omega_dot = solve_euler(inertia_world, estimate, torque)
        advanced = omega_half + omega_dot * dt
        estimate = 0.5 * (omega_half + advanced)
    return advanced, estimate


def integrate_rotation(clump, torque, dt: float, iterations: int = 3):
    ''' leap-frog rotation step of one clump: omega to t + dt/2, then Q to t + dt '''
    inertia = world_inertia(clump.orientation, clump.template.principal)
    advanced, synced = leapfrog_omega(inertia, clump.omega, np.asarray(torque, dtype=float), dt, iterations)
    clump.omega = advanced
    clump.omega_sync = synced
    clump.orientation = rotate_increment(clump.orientation, advanced, dt)
    return clump


def recommended_dt(model: ContactModel, min_mass: float, fraction: float = 1.0 / 50.0) -> float:
    ''' a fraction of the linear contact period pi sqrt(m / kn) of the lightest pebble '''
    return fraction * np.pi * np.sqrt(min_mass / model.kn)
