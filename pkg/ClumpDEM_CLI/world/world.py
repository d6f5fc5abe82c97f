import logging
from typing import Callable, List, Optional

import numpy as np

from ClumpDEM_CLI.contact.forces import TangentialHistory, contact_forces, elastic_energy
from ClumpDEM_CLI.contact.hgrid import hgrid_build, hgrid_candidates
from ClumpDEM_CLI.contact.narrow import narrow_pairs, narrow_walls
from ClumpDEM_CLI.dynamics.energy import energy_report
from ClumpDEM_CLI.dynamics.integrator import drift, kick, leapfrog_omega
from ClumpDEM_CLI.dynamics.kinematics import pebble_state
from ClumpDEM_CLI.dynamics.loads import accumulate_loads
from ClumpDEM_CLI.models.box import PeriodicBox
from ClumpDEM_CLI.models.clump import ClumpInstance, ClumpState
from ClumpDEM_CLI.models.contact import ContactBatch, ContactModel
from ClumpDEM_CLI.models.energy import EnergyReport
from ClumpDEM_CLI.models.pebble import PebbleSet
from ClumpDEM_CLI.models.settings import IntegratorSettings
from ClumpDEM_CLI.models.wall import Wall
from ClumpDEM_CLI.util.linalg import rotate_increment, world_inertia
from ClumpDEM_CLI.world.boundaries import ghost_pebbles, min_image, validate_box, wrap_positions

DEFAULT_MARGIN_FRACTION = 0.2


class World:
    '''
    registry of clumps, their pebbles, walls and the periodic box, plus the
    contact model, integrator settings, tangential-spring history and counters

    one step():
      1. omega(t - dt/2) -> omega(t + dt/2) with the torques at t; omega(t) synced
      2. observer(world) sees the complete state at t
      3. Q(t) -> Q(t + dt); velocity half kick; drift; wrap centers of mass
      4. pebbles re-derived; contacts and loads at t + dt
      5. second velocity half kick
    '''
    def __init__(self, model: ContactModel, settings: IntegratorSettings, box: PeriodicBox = None,
                 walls: Optional[List[Wall]] = None, max_levels: int = 3, base_cell: float = 0.0,
                 ghost_margin: Optional[float] = None):
        self.logger = logging.getLogger('clumpdem.world')
        self.model = model # type: ContactModel
        self.settings = settings # type: IntegratorSettings
        self.box = box # type: Optional[PeriodicBox]
        self.walls = list(walls or []) # type: List[Wall]
        self.max_levels = max_levels # type: int
        self.base_cell = base_cell # type: float
        self.ghost_margin = ghost_margin # type: Optional[float]
        self.clumps = [] # type: List[ClumpInstance]
        self.state = ClumpState(0)
        self.time = 0.0
        self.steps = 0
        # contacts opened since the start, all kinds and wall-only
        self.collision_count = 0
        self.wall_collision_count = 0
        self.history = TangentialHistory()
        self.contacts = ContactBatch.empty()
        self.contact_springs = np.zeros((0, 3))
        self.open_keys = np.zeros(0, dtype=np.int64)
        self.key_stride = 1
        self.pebbles = PebbleSet(np.zeros((0, 3)), np.zeros(0))
        self.offsets = np.zeros((0, 3))
        self.owners = np.zeros(0, dtype=np.int64)
        self.radii = np.zeros(0)
        self._ready = False

    def add_clump(self, clump: ClumpInstance) -> ClumpInstance:
        self.clumps.append(clump)
        self._ready = False
        return clump

    def add_clumps(self, clumps: List[ClumpInstance]) -> List[ClumpInstance]:
        for clump in clumps:
            self.add_clump(clump)
        return clumps

    @property
    def margin(self) -> float:
        if self.ghost_margin is not None:
            return self.ghost_margin
        return DEFAULT_MARGIN_FRACTION * (float(self.radii.max()) if len(self.radii) else 0.0)

    def prepare(self):
        ''' (re)build the clump arrays and pebble table, then contacts and loads at the current time '''
        state = ClumpState(len(self.clumps))
        for index, clump in enumerate(self.clumps):
            clump.bind(state, index)
        self.state = state
        templates = [c.template for c in self.clumps]
        if templates:
            self.offsets = np.concatenate([t.offsets for t in templates])
            self.radii = np.concatenate([t.radii for t in templates])
            self.owners = np.concatenate([np.full(t.pebble_count, k, dtype=np.int64) for k, t in enumerate(templates)])
        validate_box(self.box, float(self.radii.max()) if len(self.radii) else 0.0, self.margin)
        self.history.clear()
        self.state.position[:] = wrap_positions(self.state.position, self.box)
        self._ready = True
        self.compute_forces(count_collisions=False)
        self.logger.info(
            f'world ready: {len(self.clumps)} clumps, {len(self.radii)} pebbles, '
            f'{len(self.walls)} walls, box={self.box}'
        )

    def update_pebbles(self) -> PebbleSet:
        s = self.state
        centers, velocities = pebble_state(s.position, s.velocity, s.orientation, s.omega, self.offsets, self.owners, self.box)
        self.pebbles = PebbleSet(centers, self.radii, velocities, self.owners)
        return self.pebbles

    def point_velocity(self, owners: np.ndarray, points: np.ndarray) -> np.ndarray:
        s = self.state
        lever = min_image(points - s.position[owners], self.box)
        return s.velocity[owners] + np.cross(s.omega[owners], lever)

    def detect(self, table: PebbleSet) -> ContactBatch:
        batches = []
        if len(self.clumps) >= 2:
            grid = hgrid_build(table, self.max_levels, self.base_cell)
            batches.append(narrow_pairs(table, hgrid_candidates(grid)))
        if self.walls:
            batches.append(narrow_walls(table, self.walls))
        return ContactBatch.concat(batches)

    def compute_forces(self, count_collisions: bool = True):
        pebbles = self.update_pebbles()
        table = ghost_pebbles(pebbles, self.box, self.margin) if self.box is not None else pebbles
        contacts = self.detect(table)
        s = self.state
        pair = ~contacts.is_wall
        owner_a = self.owners[table.primary[contacts.a]]
        owner_b = self.owners[table.primary[contacts.b[pair]]]
        velocity_b = np.zeros((len(contacts), 3))
        velocity_b[pair] = self.point_velocity(owner_b, contacts.point[pair])
        for index, wall in enumerate(self.walls):
            on_wall = contacts.wall == index
            if np.any(on_wall):
                velocity_b[on_wall] = wall.velocity_at(contacts.point[on_wall])
        rel_vel = self.point_velocity(owner_a, contacts.point) - velocity_b
        keys = self.contact_keys(table, contacts)
        self.open_keys = keys
        self.key_stride = table.n_primary + len(self.walls)
        springs, opened = self.history.lookup(keys)
        forces, springs = contact_forces(contacts.normal, contacts.overlap, rel_vel, springs, self.model, self.settings.dt)
        self.history.replace(keys, springs)
        if count_collisions:
            self.collision_count += int(opened.sum())
            self.wall_collision_count += int((opened & contacts.is_wall).sum())
        self.contacts = contacts
        self.contact_springs = springs
        s.force[:], s.torque[:] = accumulate_loads(
            s.position, s.mass, self.settings.gravity,
            np.concatenate([owner_a, owner_b]),
            np.concatenate([forces, -forces[pair]]),
            np.concatenate([contacts.point, contacts.point[pair]]),
            self.box,
        )

    def contact_keys(self, table: PebbleSet, contacts: ContactBatch) -> np.ndarray:
        stride = table.n_primary + len(self.walls)
        other = np.where(contacts.is_wall, table.n_primary + contacts.wall, table.primary[np.maximum(contacts.b, 0)])
        return table.primary[contacts.a] * stride + other

    def contact_pairs(self) -> np.ndarray:
        ''' sorted (i, j), i < j, primary pebble ids of the open pebble-pebble contacts '''
        keys = self.open_keys[~self.contacts.is_wall]
        return np.stack([keys // self.key_stride, keys % self.key_stride], axis=1)

    def step(self, observer: Optional[Callable[['World'], None]] = None):
        if not self._ready:
            self.prepare()
        s, dt = self.state, self.settings.dt
        inertia = world_inertia(s.orientation, s.inertia_body)
        s.omega[:], s.omega_sync[:] = leapfrog_omega(inertia, s.omega, s.torque, dt, self.settings.omega_iterations)
        if observer is not None:
            observer(self)
        s.orientation[:] = rotate_increment(s.orientation, s.omega, dt)
        s.velocity[:] = kick(s.velocity, s.force, s.mass, dt)
        s.position[:] = wrap_positions(drift(s.position, s.velocity, dt), self.box)
        self.compute_forces()
        s.velocity[:] = kick(s.velocity, s.force, s.mass, dt)
        self.time += dt
        self.steps += 1

    def elastic_energy(self) -> float:
        return elastic_energy(self.contacts.overlap, self.contact_springs, self.model)

    def energy_report(self) -> EnergyReport:
        return energy_report(self)
