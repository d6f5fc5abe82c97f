import numpy as np

from ClumpDEM_CLI.models.box import PeriodicBox
from ClumpDEM_CLI.models.pebble import PebbleSet
from ClumpDEM_CLI.world.boundaries import min_image

CHUNK = 512


def brute_force_pairs(pebbles: PebbleSet, box: PeriodicBox = None) -> np.ndarray:
    '''
    every overlapping pair (i, j), i < j, among the primaries by an O(n^2) scan;
    distances use the minimum image when a periodic box is given.
    Touching pebbles (distance == r_i + r_j) do not overlap.
    '''
    n = pebbles.n_primary
    centers, radii, clumps = pebbles.centers[:n], pebbles.radii[:n], pebbles.clump_ids[:n]
    found = []
    for start in range(0, n, CHUNK):
        rows = np.arange(start, min(start + CHUNK, n))
        delta = min_image(centers[rows, None, :] - centers[None, :, :], box)
        d2 = np.einsum('ijk,ijk->ij', delta, delta)
        reach = radii[rows, None] + radii[None, :]
        hit = (d2 < reach * reach) & (rows[:, None] < np.arange(n)[None, :])
        same = (clumps[rows, None] == clumps[None, :]) & (clumps[rows, None] >= 0)
        i, j = np.nonzero(hit & ~same)
        found.append(np.stack([rows[i], j], axis=1))
    if not found:
        return np.zeros((0, 2), dtype=np.int64)
    return np.concatenate(found).astype(np.int64)


def overlapping(pebbles: PebbleSet, pairs: np.ndarray) -> np.ndarray:
    ''' candidate pairs whose centers are closer than the radii sum '''
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    delta = pebbles.centers[pairs[:, 0]] - pebbles.centers[pairs[:, 1]]
    reach = pebbles.radii[pairs[:, 0]] + pebbles.radii[pairs[:, 1]]
    return pairs[np.einsum('ij,ij->i', delta, delta) < reach * reach]
