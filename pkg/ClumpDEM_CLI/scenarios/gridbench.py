'''
hierarchical grid benchmark

the same scene is stepped twice, with one grid level and with three; the
open contact sets are compared at every sampled step and the wall clock
per step of each mode is reported

raspberry scene: cores of radius 1 studded with `satellites` pebbles of
radius 1/ratio, on a cubic lattice tight enough for satellites to touch the
neighbouring cores; spheres scene: unit spheres on the same kind of lattice
'''
import time
from typing import List, Tuple

import numpy as np

from ClumpDEM_CLI.models.clump import ClumpInstance
from ClumpDEM_CLI.models.template import ClumpTemplate
from ClumpDEM_CLI.scenarios import shapes
from ClumpDEM_CLI.scenarios.base import RunReport, Scenario
from ClumpDEM_CLI.util.writer import EnergyWriter, write_summary
from ClumpDEM_CLI.world.placement import random_orientation
from ClumpDEM_CLI.world.world import World

MODES = (1, 3)


def lattice(count: int, spacing: float) -> np.ndarray:
    side = int(np.ceil(count ** (1.0 / 3.0)))
    ijk = np.stack(np.meshgrid(*[np.arange(side)] * 3, indexing='ij'), axis=-1).reshape(-1, 3)
    return spacing * ijk[:count].astype(float)


class GridBench(Scenario):
    name = 'bench'

    def scene(self) -> Tuple[ClumpTemplate, float]:
        ''' template and lattice spacing '''
        opts = self.options
        if opts['scene'] == 'spheres':
            return shapes.sphere(1.0), 1.95
        template = shapes.raspberry(opts['satellites'], opts['ratio'])
        return template, 2.0 + 0.5 / opts['ratio']

    def build_mode(self, max_levels: int) -> World:
        template, spacing = self.scene()
        world = self.make_world(float(template.pebble_masses().min()))
        world.max_levels = max_levels
        rng = np.random.default_rng(self.cfg.seed)
        for position in lattice(self.options['clumps'], spacing):
            world.add_clump(ClumpInstance(template, position, orientation=random_orientation(rng)))
        world.prepare()
        return world

    def step_mode(self, world: World, writer=None) -> Tuple[float, List[np.ndarray]]:
        ''' seconds per step and the contact sets at the sampled steps '''
        every = self.options['sample_every']
        sets = [world.contact_pairs()]
        elapsed = 0.0
        for index in range(1, self.options['steps'] + 1):
            observer = None
            if writer is not None and (index - 1) % every == 0:
                observer = lambda w: writer.write(w.energy_report())
            start = time.perf_counter()
            world.step(observer)
            elapsed += time.perf_counter() - start
            if index % every == 0:
                sets.append(world.contact_pairs())
        return elapsed / self.options['steps'], sets

    def run(self) -> RunReport:
        start = time.perf_counter()
        timings, contact_sets, worlds = {}, {}, {}
        with EnergyWriter(self.path('energy.csv')) as writer:
            for max_levels in MODES:
                world = worlds[max_levels] = self.build_mode(max_levels)
                timings[max_levels], contact_sets[max_levels] = self.step_mode(
                    world, writer if max_levels == MODES[-1] else None,
                )
                self.logger.info(
                    f'max_levels={max_levels}: {timings[max_levels] * 1e3:.2f} ms/step, '
                    f'{len(world.radii)} pebbles, {len(world.contact_pairs())} contacts'
                )
        fine, coarse = (contact_sets[m] for m in MODES)
        identical = len(fine) == len(coarse) and all(np.array_equal(a, b) for a, b in zip(fine, coarse))
        same_state = all(
            np.array_equal(getattr(worlds[MODES[0]].state, field), getattr(worlds[MODES[1]].state, field))
            for field in ('position', 'velocity', 'orientation', 'omega')
        )
        world = worlds[MODES[-1]]
        radii = world.radii
        summary = {
            'scenario': self.name,
            'scene': self.options['scene'],
            'seed': self.cfg.seed,
            'threads': self.threads,
            'dt': world.settings.dt,
            'steps': self.options['steps'],
            'pebbles': len(radii),
            'radius_ratio': float(radii.max() / radii.min()),
            'seconds_per_step_1': timings[1],
            'seconds_per_step_3': timings[3],
            'speedup': timings[1] / timings[3] if timings[3] > 0 else float('nan'),
            'contacts_sampled': int(sum(len(s) for s in coarse)),
            'identical_contacts': identical,
            'identical_state': same_state,
        }
        summary_csv = write_summary(self.path('summary.csv'), summary)
        wall_time = time.perf_counter() - start
        self.logger.info(f'bench: speedup {summary["speedup"]:.2f}, contacts identical: {identical}')
        return RunReport(self.name, wall_time, 2 * self.options['steps'], self.path('energy.csv'), summary_csv, summary)


def bench_grid(cfg, out_dir='output', show_progress: bool = False, threads: int = 1):
    return GridBench(cfg, out_dir, show_progress, threads).run()
