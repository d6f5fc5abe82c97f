import numpy as np

from ClumpDEM_CLI.models.energy import EnergyReport
from ClumpDEM_CLI.util.linalg import world_inertia


def kinetic_energies(state):
    ''' (translational, rotational) using omega synchronized to the integer step '''
    translational = 0.5 * float(np.sum(state.mass * np.einsum('ij,ij->i', state.velocity, state.velocity)))
    inertia = world_inertia(state.orientation, state.inertia_body)
    spin = np.einsum('ni,nij,nj->n', state.omega_sync, inertia, state.omega_sync)
    return translational, 0.5 * float(np.sum(spin))


def gravitational_energy(state, gravity: np.ndarray) -> float:
    ''' -sum M g.x, i.e. M g h for gravity (0, 0, -g) '''
    return -float(np.sum(state.mass * (state.position @ np.asarray(gravity, dtype=float))))


def energy_report(world) -> EnergyReport:
    translational, rotational = kinetic_energies(world.state)
    return EnergyReport(
        world.time, translational, rotational,
        gravitational_energy(world.state, world.settings.gravity),
        world.elastic_energy(),
    )


def linear_momentum(state) -> np.ndarray:
    return state.mass @ state.velocity


def angular_momentum(state) -> np.ndarray:
    ''' world-frame angular momentum about the origin: orbital plus spin '''
    orbital = np.cross(state.position, state.mass[:, None] * state.velocity).sum(axis=0)
    inertia = world_inertia(state.orientation, state.inertia_body)
    return orbital + np.einsum('nij,nj->i', inertia, state.omega_sync)
