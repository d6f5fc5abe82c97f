'''
programmatic clump recipes: regular pebble packings forged into
principal-frame templates
'''
from typing import List

import numpy as np

from ClumpDEM_CLI.errors import ValidationError
from ClumpDEM_CLI.forge.align import align_principal
from ClumpDEM_CLI.forge.inertia import inertia_from_pebbles
from ClumpDEM_CLI.models.template import ClumpTemplate, PebbleSpec


def forge_template(pebbles: List[PebbleSpec], density: float = 1.0, name: str = 'clump') -> ClumpTemplate:
    ''' pebble-sum mass properties, then the principal-frame template '''
    return align_principal(inertia_from_pebbles(pebbles, density), pebbles, name)


def rod_pebbles(count: int = 4, radius: float = 0.5) -> List[PebbleSpec]:
    ''' linear chain along x, touching neighbours '''
    if count < 1:
        raise ValidationError(f'a rod needs at least one pebble, got {count}')
    xs = 2.0 * radius * (np.arange(count) - 0.5 * (count - 1))
    return [PebbleSpec((x, 0.0, 0.0), radius) for x in xs]


def tbar_pebbles(bar: int = 5, stem: int = 4, radius: float = 0.5) -> List[PebbleSpec]:
    '''
    bar of touching pebbles along x at y = 0, stem hanging from its middle
    pebble along -y
    '''
    step = 2.0 * radius
    xs = step * (np.arange(bar) - 0.5 * (bar - 1))
    pebbles = [PebbleSpec((x, 0.0, 0.0), radius) for x in xs]
    pebbles += [PebbleSpec((0.0, -step * (k + 1), 0.0), radius) for k in range(stem)]
    return pebbles


def block_pebbles(nx: int = 2, ny: int = 3, nz: int = 5, radius: float = 0.2) -> List[PebbleSpec]:
    ''' simple cubic packing of touching pebbles, centred on the origin '''
    step = 2.0 * radius
    axes = [step * (np.arange(n) - 0.5 * (n - 1)) for n in (nx, ny, nz)]
    grid = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, 3)
    return [PebbleSpec(c, radius) for c in grid]


def fibonacci_sphere(count: int) -> np.ndarray:
    ''' count nearly uniform unit vectors on the golden-angle spiral '''
    k = np.arange(count) + 0.5
    z = 1.0 - 2.0 * k / count
    rho = np.sqrt(1.0 - z * z)
    phi = np.pi * (3.0 - np.sqrt(5.0)) * k
    return np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)


def raspberry_pebbles(core_radius: float = 1.0, satellites: int = 100, ratio: float = 30.0) -> List[PebbleSpec]:
    ''' core pebble with small satellites centred on its surface (radius ratio core/satellite) '''
    small = core_radius / ratio
    pebbles = [PebbleSpec((0.0, 0.0, 0.0), core_radius)]
    pebbles += [PebbleSpec(core_radius * u, small) for u in fibonacci_sphere(satellites)]
    return pebbles


def rod(count: int = 4, radius: float = 0.5, density: float = 1.0) -> ClumpTemplate:
    return forge_template(rod_pebbles(count, radius), density, 'rod')


def tbar(density: float = 1.0) -> ClumpTemplate:
    return forge_template(tbar_pebbles(), density, 'tbar')


def domino(density: float = 1.0) -> ClumpTemplate:
    return forge_template(block_pebbles(), density, 'domino')


def sphere(radius: float, density: float = 1.0) -> ClumpTemplate:
    return forge_template([PebbleSpec((0.0, 0.0, 0.0), radius)], density, 'sphere')


def raspberry(satellites: int = 100, ratio: float = 30.0, density: float = 1.0) -> ClumpTemplate:
    return forge_template(raspberry_pebbles(1.0, satellites, ratio), density, 'raspberry')
