'''
clumps tumbling in a horizontal drum

the drum is a cylinder of `radius` around the y axis closed by two planes
`length` apart. Clumps are deposited inside, settle for `settle_time`
seconds, then the drum turns at `omega` rad/s. Avalanches show up as local
maxima of the smoothed E_grav(t).
'''
from typing import Dict

import numpy as np
from scipy import signal

from ClumpDEM_CLI.errors import ConfigError
from ClumpDEM_CLI.extractor import Extractor
from ClumpDEM_CLI.models.box import PeriodicBox
from ClumpDEM_CLI.models.energy import EnergyReport
from ClumpDEM_CLI.models.mesh import TriMesh
from ClumpDEM_CLI.models.template import ClumpTemplate
from ClumpDEM_CLI.models.wall import CylinderWall, PlaneWall
from ClumpDEM_CLI.scenarios import shapes
from ClumpDEM_CLI.scenarios.base import Scenario
from ClumpDEM_CLI.world.placement import PlacementRequest, place_clumps
from ClumpDEM_CLI.world.world import World

SMOOTHING = 5
PROMINENCE = 0.02


def count_events(values: np.ndarray, smoothing: int = SMOOTHING, prominence: float = PROMINENCE) -> int:
    ''' local maxima of the moving average that stand out by prominence x the value range '''
    values = np.asarray(values, dtype=float)
    if len(values) < smoothing + 2:
        return 0
    smooth = np.convolve(values, np.ones(smoothing) / smoothing, mode='valid')
    spread = float(np.ptp(smooth))
    if spread == 0:
        return 0
    peaks, _ = signal.find_peaks(smooth, prominence=prominence * spread)
    return len(peaks)


def drum_template(path) -> ClumpTemplate:
    loaded = Extractor().load(path)
    if isinstance(loaded, ClumpTemplate):
        return loaded
    if isinstance(loaded, TriMesh):
        raise ConfigError(f'{path} is a surface mesh, the drum needs pebbles or a template', 'scenario.templates')
    return shapes.forge_template(loaded, 1.0, 'drum')


class Drum(Scenario):
    name = 'drum'

    def build(self) -> World:
        if not self.cfg.templates:
            raise ConfigError('the drum needs a clump template file', 'scenario.templates')
        opts = self.options
        template = drum_template(self.cfg.templates[0])
        radius, length = opts['radius'], opts['length']
        self.cylinder = CylinderWall((0.0, 0.0, 0.0), (0.0, 1.0, 0.0), radius)
        walls = [
            self.cylinder,
            PlaneWall((0.0, -0.5 * length, 0.0), (0.0, 1.0, 0.0)),
            PlaneWall((0.0, 0.5 * length, 0.0), (0.0, -1.0, 0.0)),
        ]
        reach = radius - template.bounding_radius
        domain = PeriodicBox((-radius, -0.5 * length, -radius), (radius, 0.5 * length, radius), (False, False, False))
        request = PlacementRequest(
            template, opts['count'], domain, self.cfg.seed,
            region=lambda com: float(np.hypot(com[0], com[2])) < reach,
        )
        world = self.make_world(float(template.pebble_masses().min()), walls=walls)
        world.add_clumps(place_clumps(request))
        self.rotating = False
        self.times = []
        self.egrav = []
        self.scale = float(template.mass * opts['count'] * np.linalg.norm(self.cfg['integrator']['gravity']) * radius)
        return world

    def observe(self, world: World, energy: EnergyReport):
        if not self.rotating and world.time >= self.options['settle_time']:
            self.cylinder.omega = self.options['omega']
            self.rotating = True
            self.logger.info(f'drum turning at {self.cylinder.omega} rad/s from t={world.time:.3f} s')
        self.times.append(world.time)
        self.egrav.append(energy.gravitational / self.scale if self.scale > 0 else energy.gravitational)

    def finish(self, world: World) -> Dict[str, object]:
        times, egrav = np.asarray(self.times), np.asarray(self.egrav)
        settle = self.options['settle_time']
        turning = times >= settle
        events = count_events(egrav[turning])
        revolutions = self.options['omega'] * max(world.time - settle, 0.0) / (2.0 * np.pi)
        per_revolution = events / revolutions if revolutions > 0 else float('nan')
        self.logger.info(f'{events} avalanche events over {revolutions:.2f} revolutions')
        return {
            'template': world.clumps[0].template.name,
            'clumps': len(world.clumps),
            'events': events,
            'revolutions': revolutions,
            'events_per_revolution': per_revolution,
            'E_grav_min': float(egrav[turning].min()) if turning.any() else float('nan'),
            'E_grav_max': float(egrav[turning].max()) if turning.any() else float('nan'),
        }


def run_drum(cfg, out_dir='output', show_progress: bool = False, threads: int = 1):
    return Drum(cfg, out_dir, show_progress, threads).run()
