'''
convergence of the voxel and mesh summations on the two-sphere clump
'''
import csv
import logging
from pathlib import Path
from typing import List, Sequence

import numpy as np
from scipy import stats

from ClumpDEM_CLI.errors import ValidationError
from ClumpDEM_CLI.forge.inertia import inertia_from_mesh, inertia_from_voxels
from ClumpDEM_CLI.forge.tessellate import two_sphere_chart, two_sphere_clump, two_sphere_reference
from ClumpDEM_CLI.forge.voxelize import voxelize

logger = logging.getLogger('clumpdem.forge')

METHODS = ('mesh', 'voxels')
FIELDS = ['method', 'N', 'dM', 'dI1', 'dI3']


class BenchRow:

    def __init__(self, method: str, n: int, d_mass: float, d_major: float, d_minor: float):
        self.method = method # type: str
        self.n = n # type: int
        self.d_mass = d_mass # type: float
        self.d_major = d_major # type: float
        self.d_minor = d_minor # type: float

    def to_row(self) -> dict:
        return dict(zip(FIELDS, [self.method, self.n, self.d_mass, self.d_major, self.d_minor]))

    def __repr__(self):
        return f'BenchRow({self.method}, N={self.n}, dM={self.d_mass:.3e}, dI1={self.d_major:.3e}, dI3={self.d_minor:.3e})'


def resolutions(max_n: int) -> List[int]:
    ''' 8, 16, ... up to max_n '''
    if max_n < 8:
        raise ValidationError(f'max N must be at least 8, got {max_n}')
    return [8 * 2 ** k for k in range(int(np.log2(max_n / 8)) + 1)]


def convergence_benchmark(max_n: int, methods: Sequence[str] = METHODS, ns: Sequence[int] = None) -> List[BenchRow]:
    '''
    relative errors of mass and of the largest/smallest principal moment

    mesh: tetrahedra from the contact point (the origin) over each sphere's
    open chart of N latitude x 2N azimuth segments
    voxels: N voxels per sphere diameter, i.e. 2N along the cubic box edge
    '''
    pebbles = two_sphere_clump()
    mass, major, minor = two_sphere_reference()
    rows = []
    for method in methods:
        if method not in METHODS:
            raise ValidationError(f'unknown benchmark method {method!r}')
        for n in (ns or resolutions(max_n)):
            if method == 'mesh':
                props = inertia_from_mesh(two_sphere_chart(n), 1.0, apex=(0.0, 0.0, 0.0))
            else:
                props = inertia_from_voxels(voxelize(pebbles, 2 * n), 1.0)
            principal = props.principal_values()
            row = BenchRow(
                method, n,
                abs(props.mass - mass) / mass,
                abs(principal[0] - major) / major,
                abs(principal[2] - minor) / minor,
            )
            logger.info(repr(row))
            rows.append(row)
    return rows


def convergence_slope(rows: List[BenchRow], method: str, field: str = 'd_mass') -> float:
    ''' least-squares slope of log(error) against log(N) '''
    picked = [r for r in rows if r.method == method]
    if len(picked) < 2:
        raise ValidationError(f'need at least two {method} rows to fit a slope')
    n = np.log([r.n for r in picked])
    err = np.log([max(getattr(r, field), np.finfo(float).tiny) for r in picked])
    return float(stats.linregress(n, err).slope)


def write_bench(rows: List[BenchRow], path) -> Path:
    path = Path(path)
    with path.open('w', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row.to_row())
    return path
