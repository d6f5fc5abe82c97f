'''
torque-free T-bar spun about one principal axis

T-bar: 5 touching pebbles (r = 0.5) along x plus a 4-pebble stem along -y.
A flip is a sign change of the spin axis projected on its initial world
direction; spin about the intermediate axis flips periodically.
'''
from typing import Dict

import numpy as np

from ClumpDEM_CLI.dynamics.energy import angular_momentum
from ClumpDEM_CLI.models.clump import ClumpInstance
from ClumpDEM_CLI.models.energy import EnergyReport
from ClumpDEM_CLI.scenarios import shapes
from ClumpDEM_CLI.scenarios.base import Scenario
from ClumpDEM_CLI.world.world import World


class TBar(Scenario):
    name = 'tbar'

    def build(self) -> World:
        opts = self.options
        template = shapes.tbar()
        axis = opts['spin_axis'] - 1
        omega = np.full(3, opts['spin_rate'] * opts['perturbation'])
        omega[axis] = opts['spin_rate']
        world = self.make_world(float(template.pebble_masses().min()))
        # body frame coincides with the world frame at t = 0
        world.add_clump(ClumpInstance(template, omega=omega))
        self.axis = axis
        self.initial_direction = np.eye(3)[axis]
        self.flips = 0
        self.last_sign = 1.0
        self.rotational_0 = None
        self.momentum_0 = None
        self.max_energy_drift = 0.0
        self.max_momentum_drift = 0.0
        self.flip_times = []
        return world

    def observe(self, world: World, energy: EnergyReport):
        projection = float(world.state.orientation[0][:, self.axis] @ self.initial_direction)
        sign = np.sign(projection)
        if sign != 0 and sign != self.last_sign:
            self.flips += 1
            self.flip_times.append(world.time)
            self.last_sign = sign
        momentum = float(np.linalg.norm(angular_momentum(world.state)))
        if self.rotational_0 is None:
            self.rotational_0, self.momentum_0 = energy.rotational, momentum
            return
        self.max_energy_drift = max(self.max_energy_drift, abs(energy.rotational / self.rotational_0 - 1.0))
        self.max_momentum_drift = max(self.max_momentum_drift, abs(momentum / self.momentum_0 - 1.0))

    def finish(self, world: World) -> Dict[str, object]:
        self.logger.info(f'{self.flips} flips, E_rot drift {self.max_energy_drift:.3e}')
        return {
            'spin_axis': self.options['spin_axis'],
            'principal': ';'.join(repr(float(v)) for v in world.clumps[0].template.principal),
            'flips': self.flips,
            'flip_times': ';'.join(f'{t:.4f}' for t in self.flip_times),
            'E_rot_drift': self.max_energy_drift,
            'L_drift': self.max_momentum_drift,
        }


def run_tbar(cfg, out_dir='output', show_progress: bool = False, threads: int = 1):
    return TBar(cfg, out_dir, show_progress, threads).run()
