import logging
import time
from pathlib import Path
from typing import Dict, List, Optional

from ClumpDEM_CLI.config import ScenarioConfig
from ClumpDEM_CLI.models.energy import EnergyReport
from ClumpDEM_CLI.simulator import Simulator
from ClumpDEM_CLI.util.writer import EnergyWriter, write_snapshot, write_summary
from ClumpDEM_CLI.world.world import World


class RunReport:

    def __init__(self, name: str, wall_time: float, steps: int, energy_csv: Optional[Path], summary_csv: Path,
                 summary: Dict[str, object], snapshots: Optional[List[Path]] = None):
        self.name = name # type: str
        self.wall_time = wall_time # type: float
        self.steps = steps # type: int
        self.energy_csv = energy_csv # type: Optional[Path]
        self.summary_csv = summary_csv # type: Path
        self.summary = summary # type: Dict[str, object]
        self.snapshots = snapshots or [] # type: List[Path]

    def __getitem__(self, key: str):
        return self.summary[key]

    def __repr__(self):
        return f'RunReport({self.name!r}, steps={self.steps}, wall={self.wall_time:.2f}s)'


class Scenario:
    '''
    one experiment: build() the world, run it for the configured duration
    while sampling energies, then finish() into summary scalars

    subclasses override build() and finish(); observe() and stop_when()
    are optional hooks
    '''
    name = ''

    def __init__(self, cfg: ScenarioConfig, out_dir='output', show_progress: bool = False, threads: int = 1):
        self.logger = logging.getLogger(f'clumpdem.scenario.{self.name}')
        self.cfg = cfg
        self.options = cfg.options
        self.out_dir = Path(out_dir)
        self.show_progress = show_progress
        self.threads = threads
        self.samples = [] # type: List[EnergyReport]
        self.snapshots = [] # type: List[Path]
        self.world = None # type: Optional[World]

    def build(self) -> World:
        raise NotImplementedError

    def observe(self, world: World, energy: EnergyReport):
        pass

    def stop_when(self, world: World) -> bool:
        return False

    def finish(self, world: World) -> Dict[str, object]:
        return {}

    def make_world(self, min_mass: Optional[float] = None, walls=None, box=None) -> World:
        cfg = self.cfg
        return World(
            cfg.contact_model(),
            cfg.integrator_settings(min_mass),
            box=box,
            walls=walls,
            max_levels=cfg['contact']['max_levels'],
            base_cell=cfg['contact']['base_cell'],
            ghost_margin=cfg.ghost_margin(),
        )

    def path(self, suffix: str) -> Path:
        return self.out_dir / f'{self.name}_{suffix}'

    def second_half(self) -> List[EnergyReport]:
        if not self.samples:
            return []
        half = 0.5 * self.samples[-1].time
        return [s for s in self.samples if s.time >= half]

    def run(self) -> RunReport:
        start = time.perf_counter()
        world = self.world = self.build()
        world.prepare()
        scenario = self.cfg['scenario']
        snapshot_every = scenario['snapshot_interval']
        next_snapshot = [0.0]

        with EnergyWriter(self.path('energy.csv')) as writer:
            def sample(w: World):
                energy = w.energy_report()
                writer.write(energy)
                self.samples.append(energy)
                self.observe(w, energy)
                if snapshot_every > 0 and w.time >= next_snapshot[0] - 1e-12:
                    frame = len(self.snapshots)
                    self.snapshots.append(write_snapshot(self.path(f'snapshot_{frame:05d}.csv'), w))
                    next_snapshot[0] += snapshot_every

            simulator = Simulator(self.show_progress)
            steps = simulator.run(
                world, self.cfg.duration, self.name, scenario['output_interval'],
                on_sample=sample, stop_when=self.stop_when,
            )
        summary = {
            'scenario': self.name,
            'seed': self.cfg.seed,
            'threads': self.threads,
            'dt': world.settings.dt,
            'steps': steps,
            'time': world.time,
            'terminated': simulator.terminate,
            'collisions': world.collision_count,
            'wall_collisions': world.wall_collision_count,
        }
        summary.update(self.finish(world))
        summary_csv = write_summary(self.path('summary.csv'), summary)
        wall_time = time.perf_counter() - start
        self.logger.info(f'{self.name}: {steps} steps, wall clock {wall_time:.2f} s')
        return RunReport(self.name, wall_time, steps, self.path('energy.csv'), summary_csv, summary, self.snapshots)
