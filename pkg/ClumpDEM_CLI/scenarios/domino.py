'''
domino chain on a frictional floor under gravity

each domino is a 2 x 3 x 5 block of touching pebbles (r = 0.2): 0.8 thick
along the chain, 1.2 wide, 2.0 tall. A dense sphere (r = 0.3) launched at
0.85 of the domino height starts the wave. A domino counts as toppled once
its tilt from vertical exceeds `tilt_threshold` degrees.

the steady window runs from the topple of the 3rd domino to the topple of
the 3rd from last; the slope of the dominoes' E_grav(t) is fitted there
'''
from typing import Dict, List, Tuple

import numpy as np
from scipy import stats

from ClumpDEM_CLI.models.clump import ClumpInstance
from ClumpDEM_CLI.models.energy import EnergyReport
from ClumpDEM_CLI.models.wall import PlaneWall
from ClumpDEM_CLI.scenarios import shapes
from ClumpDEM_CLI.scenarios.base import Scenario
from ClumpDEM_CLI.world.world import World

CUE_RADIUS = 0.3
CUE_DENSITY = 10.0
CUE_HEIGHT = 0.85
WINDOW_SKIP = 3


def steady_window(topple_times: np.ndarray, skip: int = WINDOW_SKIP) -> Tuple[float, float]:
    '''
    (start, end) from the topple of domino #skip to domino #(count - skip + 1);
    nan when fewer than skip dominoes toppled
    '''
    count = len(topple_times)
    times = topple_times[np.isfinite(topple_times)]
    if len(times) < skip:
        return float('nan'), float('nan')
    times = np.sort(times)
    last = min(count - skip, len(times) - 1)
    return float(times[skip - 1]), float(times[last])


def fit_slope(times: np.ndarray, values: np.ndarray, window: Tuple[float, float]) -> Tuple[float, float]:
    ''' least-squares slope and R^2 of values(t) inside window '''
    start, end = window
    if not np.isfinite(start):
        return float('nan'), float('nan')
    inside = (times >= start) & (times <= end)
    if inside.sum() < 3:
        return float('nan'), float('nan')
    fit = stats.linregress(times[inside], values[inside])
    return float(fit.slope), float(fit.rvalue ** 2)


class Domino(Scenario):
    name = 'domino'

    def build(self) -> World:
        opts = self.options
        template = shapes.domino()
        cue = shapes.sphere(CUE_RADIUS, CUE_DENSITY)
        recipe = template.offsets @ template.rotation.T
        base = -float(np.min(recipe[:, 2] - template.radii))
        height = float(np.max(recipe[:, 2] + template.radii)) + base
        thickness = float(np.max(recipe[:, 0] + template.radii))
        world = self.make_world(
            float(min(template.pebble_masses().min(), cue.pebble_masses().min())),
            walls=[PlaneWall((0.0, 0.0, 0.0), (0.0, 0.0, 1.0))],
        )
        count, spacing = opts['count'], opts['spacing']
        for k in range(count):
            world.add_clump(ClumpInstance(template, (k * spacing, 0.0, base), orientation=template.rotation))
        cue_x = -thickness - 2.0 * CUE_RADIUS
        world.add_clump(ClumpInstance(cue, (cue_x, 0.0, CUE_HEIGHT * height), (opts['cue_speed'], 0.0, 0.0)))
        self.count = count
        # body-frame vertical of every domino
        self.up = template.rotation.T @ np.array([0.0, 0.0, 1.0])
        self.threshold = np.cos(np.radians(opts['tilt_threshold']))
        self.topple_times = np.full(count, np.nan)
        self.times = [] # type: List[float]
        self.egrav = [] # type: List[float]
        return world

    def domino_egrav(self, world: World) -> float:
        s = world.state
        n = self.count
        return -float(np.sum(s.mass[:n] * (s.position[:n] @ world.settings.gravity)))

    def observe(self, world: World, energy: EnergyReport):
        vertical = world.state.orientation[:self.count] @ self.up
        toppled = (vertical[:, 2] < self.threshold) & np.isnan(self.topple_times)
        self.topple_times[toppled] = world.time
        self.times.append(world.time)
        self.egrav.append(self.domino_egrav(world))

    def stop_when(self, world: World) -> bool:
        # one topple past the end of the steady window is enough
        return int(np.isfinite(self.topple_times).sum()) >= self.count - WINDOW_SKIP + 2

    def finish(self, world: World) -> Dict[str, object]:
        times, egrav = np.asarray(self.times), np.asarray(self.egrav)
        window = steady_window(self.topple_times)
        slope, r_squared = fit_slope(times, egrav, window)
        toppled = int(np.isfinite(self.topple_times).sum())
        self.logger.info(f'{toppled}/{self.count} toppled, slope {slope:.5g} J/s, R^2 {r_squared:.4f}')
        return {
            'cue_speed': self.options['cue_speed'],
            'toppled': toppled,
            'topple_times': ';'.join(f'{t:.4f}' for t in self.topple_times),
            'window_start': window[0],
            'window_end': window[1],
            'slope': slope,
            'r_squared': r_squared,
            'E_grav_start': float(egrav[0]) if len(egrav) else float('nan'),
            'E_grav_end': float(egrav[-1]) if len(egrav) else float('nan'),
        }


def run_domino(cfg, out_dir='output', show_progress: bool = False, threads: int = 1):
    return Domino(cfg, out_dir, show_progress, threads).run()
