'''
elastic frictionless gas of T-bars in a triple-periodic box

clumps are deposited without overlaps, at rest rotationally, with random
translational velocities (zero total momentum, rms speed `speed`)
'''
from typing import Dict

import numpy as np

from ClumpDEM_CLI.dynamics.energy import linear_momentum
from ClumpDEM_CLI.errors import ValidationError
from ClumpDEM_CLI.models.energy import EnergyReport
from ClumpDEM_CLI.scenarios import shapes
from ClumpDEM_CLI.scenarios.base import Scenario
from ClumpDEM_CLI.world.placement import PlacementRequest, place_clumps
from ClumpDEM_CLI.world.world import World


def random_velocities(rng: np.random.Generator, count: int, speed: float) -> np.ndarray:
    velocities = rng.normal(size=(count, 3))
    velocities -= velocities.mean(axis=0)
    rms = np.sqrt(np.mean(np.einsum('ij,ij->i', velocities, velocities)))
    return velocities * (speed / rms) if rms > 0 else velocities


class TGas(Scenario):
    name = 'tgas'

    def build(self) -> World:
        opts = self.options
        box = self.cfg.box()
        if not np.all(box.periodic):
            raise ValidationError('the T-gas needs a triple-periodic box')
        template = shapes.tbar()
        rng = np.random.default_rng(self.cfg.seed)
        clumps = place_clumps(PlacementRequest(template, opts['count'], box, self.cfg.seed), box, rng=rng)
        velocities = random_velocities(rng, len(clumps), opts['speed']) if len(clumps) > 1 else np.zeros((1, 3))
        for clump, velocity in zip(clumps, velocities):
            clump.velocity = velocity
        world = self.make_world(float(template.pebble_masses().min()), box=box)
        world.add_clumps(clumps)
        self.momentum_0 = None
        self.momentum_scale = 0.0
        self.total_0 = None
        self.max_momentum_drift = 0.0
        self.max_energy_drift = 0.0
        return world

    def observe(self, world: World, energy: EnergyReport):
        s = world.state
        momentum = linear_momentum(s)
        total = energy.kinetic + energy.elastic
        if self.momentum_0 is None:
            self.momentum_0 = momentum
            self.momentum_scale = float(np.sum(s.mass * np.linalg.norm(s.velocity, axis=1)))
            self.total_0 = total
            return
        if self.momentum_scale > 0:
            drift = float(np.linalg.norm(momentum - self.momentum_0)) / self.momentum_scale
            self.max_momentum_drift = max(self.max_momentum_drift, drift)
        if self.total_0 > 0:
            self.max_energy_drift = max(self.max_energy_drift, abs(total / self.total_0 - 1.0))

    def finish(self, world: World) -> Dict[str, object]:
        late = self.second_half()
        translational = float(np.mean([s.translational for s in late])) if late else 0.0
        rotational = float(np.mean([s.rotational for s in late])) if late else 0.0
        ratio = rotational / translational if translational > 0 else float('nan')
        self.logger.info(f'<E_rot>/<E_trans> = {ratio:.4f}, {world.collision_count} collisions')
        return {
            'clumps': len(world.clumps),
            'mean_E_trans': translational,
            'mean_E_rot': rotational,
            'ratio': ratio,
            'momentum_drift': self.max_momentum_drift,
            'energy_drift': self.max_energy_drift,
        }


def run_tgas(cfg, out_dir='output', show_progress: bool = False, threads: int = 1):
    return TGas(cfg, out_dir, show_progress, threads).run()
