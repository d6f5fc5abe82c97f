import csv
from pathlib import Path
from typing import Dict

from ClumpDEM_CLI.models.energy import EnergyReport

SNAPSHOT_FIELDS = ['id', 'clump', 'x', 'y', 'z', 'r']


class EnergyWriter:
    '''
    energy time series, one row per sample; the file is truncated on open
    '''
    def __init__(self, path):
        self.path = Path(path)
        self.file = None
        self.writer = None # type: csv.DictWriter

    def __enter__(self):
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.file = self.path.open('w', newline='', encoding='utf-8')
        self.writer = csv.DictWriter(self.file, fieldnames=EnergyReport.FIELDS)
        self.writer.writeheader()
        return self

    def write(self, report: EnergyReport):
        self.writer.writerow({k: repr(float(v)) for k, v in report.to_row().items()})

    def __exit__(self, exc_type, exc, tb):
        self.file.close()
        return False


def write_summary(path, summary: Dict[str, object]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=['key', 'value'])
        writer.writeheader()
        for key, value in summary.items():
            writer.writerow({'key': key, 'value': repr(value) if isinstance(value, float) else value})
    return path


def write_snapshot(path, world) -> Path:
    ''' one row per primary pebble: id, owning clump and wrapped center '''
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pebbles = world.pebbles
    with path.open('w', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=SNAPSHOT_FIELDS)
        writer.writeheader()
        for i in range(pebbles.n_primary):
            x, y, z = pebbles.centers[i]
            writer.writerow({
                'id': i, 'clump': int(pebbles.clump_ids[i]),
                'x': repr(float(x)), 'y': repr(float(y)), 'z': repr(float(z)), 'r': repr(float(pebbles.radii[i])),
            })
    return path


def read_energy(path):
    ''' rows of an energy CSV as dicts of floats '''
    with Path(path).open(newline='', encoding='utf-8') as f:
        return [{k: float(v) for k, v in row.items()} for row in csv.DictReader(f)]
