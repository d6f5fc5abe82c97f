'''
rod bouncing between elastic frictionless walls

1d: walls on the y faces only, the rod moves along y and spins about z
    (one translational and one rotational degree of freedom)
2d: walls on the x and y faces, launched at an angle in the xy plane
    (two translational, one rotational)

rod: a chain of touching pebbles of radius 0.5, lying along x tilted by
`tilt` rad about z; the run stops after `collisions` wall contacts
'''
from typing import Dict

import numpy as np

from ClumpDEM_CLI.errors import ValidationError
from ClumpDEM_CLI.models.clump import ClumpInstance
from ClumpDEM_CLI.models.wall import box_walls
from ClumpDEM_CLI.scenarios import shapes
from ClumpDEM_CLI.scenarios.base import Scenario
from ClumpDEM_CLI.util.linalg import axis_rotation
from ClumpDEM_CLI.world.world import World

LAUNCH_ANGLE = 0.6
WALL_AXES = {'1d': (1,), '2d': (0, 1)}


class Bounce(Scenario):
    name = 'bounce'

    def build(self) -> World:
        opts = self.options
        template = shapes.rod(opts['pebbles'])
        box = self.cfg.box()
        axes = WALL_AXES[opts['mode']]
        half = 0.5 * box.lengths[list(axes)]
        if np.any(half <= template.bounding_radius):
            raise ValidationError(
                f'rod of reach {template.bounding_radius:.3g} cannot turn between walls {2 * half.min():.3g} apart'
            )
        world = self.make_world(float(template.pebble_masses().min()), walls=box_walls(box.lo, box.hi, axes))
        speed = opts['speed']
        if opts['mode'] == '1d':
            velocity = (0.0, speed, 0.0)
        else:
            velocity = (speed * np.cos(LAUNCH_ANGLE), speed * np.sin(LAUNCH_ANGLE), 0.0)
        orientation = axis_rotation(2, opts['tilt']) @ template.rotation
        world.add_clump(ClumpInstance(template, box.center, velocity, orientation=orientation))
        return world

    def stop_when(self, world: World) -> bool:
        target = self.options['collisions']
        return target > 0 and world.wall_collision_count >= target

    def finish(self, world: World) -> Dict[str, object]:
        late = self.second_half()
        translational = float(np.mean([s.translational for s in late])) if late else 0.0
        rotational = float(np.mean([s.rotational for s in late])) if late else 0.0
        ratio = rotational / translational if translational > 0 else float('nan')
        self.logger.info(f'<E_rot>/<E_trans> = {ratio:.4f} over {world.wall_collision_count} wall collisions')
        return {
            'mode': self.options['mode'],
            'mean_E_trans': translational,
            'mean_E_rot': rotational,
            'ratio': ratio,
        }


def run_single_bounce(cfg, out_dir='output', show_progress: bool = False, threads: int = 1):
    return Bounce(cfg, out_dir, show_progress, threads).run()
