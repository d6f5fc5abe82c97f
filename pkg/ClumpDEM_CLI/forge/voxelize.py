import logging
from typing import List

import numpy as np

from ClumpDEM_CLI.errors import ValidationError
from ClumpDEM_CLI.models.template import PebbleSpec, pebble_arrays
from ClumpDEM_CLI.models.voxel import VoxelGrid

logger = logging.getLogger('clumpdem.forge')

DEFAULT_RESOLUTION = 256


def bounding_cube(centers: np.ndarray, radii: np.ndarray):
    ''' origin and edge of the smallest cube centred on the clump bounding box '''
    lo = (centers - radii[:, None]).min(axis=0)
    hi = (centers + radii[:, None]).max(axis=0)
    edge = float((hi - lo).max())
    return 0.5 * (lo + hi) - 0.5 * edge, edge


def voxelize(pebbles: List[PebbleSpec], resolution: int = DEFAULT_RESOLUTION) -> VoxelGrid:
    '''
    mark every voxel whose center lies strictly inside at least one pebble
    the mask is filled slab by slab along x to keep memory at O(N^2) per pebble
    '''
    if resolution < 2:
        raise ValidationError(f'voxel resolution must be at least 2, got {resolution}')
    centers, radii = pebble_arrays(pebbles)
    origin, edge = bounding_cube(centers, radii)
    side = edge / resolution
    grid = VoxelGrid(origin, side, resolution, np.zeros((resolution,) * 3, dtype=bool))
    axes = grid.centers_1d()
    for center, radius in zip(centers, radii):
        lo = np.clip(np.floor((center - radius - origin) / side).astype(int), 0, resolution)
        hi = np.clip(np.ceil((center + radius - origin) / side).astype(int) + 1, 0, resolution)
        dx2, dy2, dz2 = ((axes[k, lo[k]:hi[k]] - center[k]) ** 2 for k in range(3))
        dyz = dy2[:, None] + dz2[None, :]
        r2 = radius * radius
        for i, d in enumerate(dx2):
            if d >= r2:
                continue
            grid.mask[lo[0] + i, lo[1]:hi[1], lo[2]:hi[2]] |= dyz < r2 - d
    logger.debug(f'voxelized {len(radii)} pebbles at N={resolution}: {grid.filled} filled voxels')
    return grid
