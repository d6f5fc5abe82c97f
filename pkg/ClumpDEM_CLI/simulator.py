import logging
import signal
import time
from typing import Callable, Optional

from rich.progress import (
    BarColumn,
    TextColumn,
    TimeRemainingColumn,
    Progress,
)

from ClumpDEM_CLI.world.world import World


class Simulator:
    '''
    drives World.step() up to a simulated time, calling on_sample every
    sample_interval of simulated time, with a progress bar

    SIGINT / SIGTERM only raise the terminate flag; the loop leaves at the
    next step boundary so the caller can still write its outputs
    '''
    def __init__(self, show_progress: bool = True):
        self.logger = logging.getLogger('clumpdem.simulator')
        self.progress = Progress(
            TextColumn("[bold blue]{task.fields[name]}", justify="right"),
            BarColumn(bar_width=None),
            "[progress.percentage]{task.percentage:>3.1f}%",
            "•",
            TextColumn("t={task.completed:.3f}s"),
            "•",
            TimeRemainingColumn(),
            disable=not show_progress,
        )
        self.terminate = False
        self.steps = 0
        self.wall_time = 0.0

    def stop(self, signum: int, frame):
        self.logger.warning(f'signal {signum} received, stopping after the current step')
        self.terminate = True

    def install_signals(self) -> dict:
        previous = {}
        for signum in (signal.SIGINT, signal.SIGTERM):
            try:
                previous[signum] = signal.signal(signum, self.stop)
            except ValueError:
                # not the main thread
                pass
        return previous

    def run(self, world: World, duration: float, name: str = 'run', sample_interval: Optional[float] = None,
            on_sample: Optional[Callable[[World], None]] = None,
            stop_when: Optional[Callable[[World], bool]] = None) -> int:
        '''
        advance world by duration; on_sample sees the synchronized state at
        t = 0, sample_interval, 2 sample_interval, ...
        returns the number of steps taken
        '''
        dt = world.settings.dt
        total = max(1, int(round(duration / dt)))
        every = max(1, int(round(sample_interval / dt))) if sample_interval else 0
        self.terminate = False
        previous = self.install_signals()
        self.logger.info(f'{name}: {total} steps of dt={dt:.6g} s')
        start = time.perf_counter()
        steps = 0
        try:
            with self.progress:
                task = self.progress.add_task('run', name=name, total=total * dt)
                for index in range(total):
                    if self.terminate:
                        self.logger.warning(f'{name}: terminated at t={world.time:.6g} s')
                        break
                    sample = on_sample if on_sample is not None and every and index % every == 0 else None
                    world.step(sample)
                    steps += 1
                    if index % 100 == 0:
                        self.progress.update(task, completed=world.time)
                    if stop_when is not None and stop_when(world):
                        self.logger.info(f'{name}: stop condition met at t={world.time:.6g} s')
                        break
                self.progress.update(task, completed=world.time)
        finally:
            for signum, handler in previous.items():
                signal.signal(signum, handler)
        self.steps = steps
        self.wall_time = time.perf_counter() - start
        self.logger.info(f'{name}: {steps} steps in {self.wall_time:.2f} s wall clock')
        return steps
