'''
hierarchical grid broad phase

level k has cell size top / 2^(L-1-k), the coarsest (top) cell fits the
largest pebble; a pebble lives on the finest level whose cell is at least
its diameter. A pebble is tested against its own level and every coarser
level, which finds each overlapping pair exactly once.
'''
import itertools
import logging
from typing import Dict, List, Tuple

import numpy as np

from ClumpDEM_CLI.errors import ValidationError
from ClumpDEM_CLI.models.pebble import PebbleSet

logger = logging.getLogger('clumpdem.contact')

NEIGHBOUR_OFFSETS = np.array(list(itertools.product((-1, 0, 1), repeat=3)), dtype=np.int64)
MAX_KEY = 2 ** 62
# pebble rows queried per batch
QUERY_CHUNK = 2048


class GridLevel:
    '''
    one level of the grid stored as a sorted cell table:
    keys[c] is the packed cell coordinate, members[starts[c]:starts[c] + counts[c]]
    the pebble rows hashed into it
    '''
    def __init__(self, index: int, cell_size: float, base: int, keys: np.ndarray, starts: np.ndarray,
                 counts: np.ndarray, members: np.ndarray):
        self.index = index # type: int
        self.cell_size = cell_size # type: float
        self.base = base # type: int
        self.keys = keys # type: np.ndarray
        self.starts = starts # type: np.ndarray
        self.counts = counts # type: np.ndarray
        self.members = members # type: np.ndarray

    def pack(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        return (coords[..., 0] * self.base + coords[..., 1]) * self.base + coords[..., 2]

    def unpack(self, keys: np.ndarray) -> np.ndarray:
        k = np.asarray(keys, dtype=np.int64)
        return np.stack([k // (self.base * self.base), (k // self.base) % self.base, k % self.base], axis=-1)

    def cell(self, ijk) -> np.ndarray:
        key = int(self.pack(np.asarray(ijk)))
        pos = int(np.searchsorted(self.keys, key))
        if pos == len(self.keys) or self.keys[pos] != key:
            return np.zeros(0, dtype=np.int64)
        return self.members[self.starts[pos]:self.starts[pos] + self.counts[pos]]

    def cell_map(self) -> Dict[Tuple[int, int, int], List[int]]:
        return {
            tuple(int(v) for v in ijk): self.members[s:s + c].tolist()
            for ijk, s, c in zip(self.unpack(self.keys), self.starts, self.counts)
        }

    @property
    def population(self) -> int:
        return len(self.members)

    def __repr__(self):
        return f'GridLevel({self.index}, cell={self.cell_size:.6g}, cells={len(self.keys)}, pebbles={self.population})'


class HGrid:

    def __init__(self, pebbles: PebbleSet, levels: List[GridLevel], level_of_pebble: np.ndarray,
                 origin: np.ndarray, max_levels: int):
        self.pebbles = pebbles # type: PebbleSet
        self.levels = levels # type: List[GridLevel]
        self.level_of_pebble = level_of_pebble # type: np.ndarray
        self.origin = origin # type: np.ndarray
        self.max_levels = max_levels # type: int

    def coords(self, rows: np.ndarray, level: GridLevel) -> np.ndarray:
        ''' integer cell coordinates (shifted to start at 1) of pebble rows on a level '''
        return np.floor((self.pebbles.centers[rows] - self.origin) / level.cell_size).astype(np.int64) + 1

    @property
    def occupied_levels(self) -> int:
        return sum(1 for level in self.levels if level.population > 0)

    def __repr__(self):
        return f'HGrid({self.levels})'


def level_sizes(top: float, max_levels: int) -> np.ndarray:
    return top / 2.0 ** np.arange(max_levels - 1, -1, -1)


def hgrid_build(pebbles: PebbleSet, max_levels: int = 3, base_cell: float = 0.0) -> HGrid:
    if max_levels < 1:
        raise ValidationError(f'max_levels must be at least 1, got {max_levels}')
    n = len(pebbles)
    diameters = 2.0 * pebbles.radii
    top = max(float(diameters.max()) if n else 1.0, base_cell)
    sizes = level_sizes(top, max_levels)
    level_of_pebble = np.minimum(np.searchsorted(sizes, diameters, side='left'), max_levels - 1)
    origin = pebbles.centers.min(axis=0) if n else np.zeros(3)
    extent = float(np.ptp(pebbles.centers, axis=0).max()) if n else 0.0
    levels = []
    for k, size in enumerate(sizes):
        base = int(extent / size) + 4
        if base ** 3 >= MAX_KEY:
            raise ValidationError(f'grid level {k} needs {base}^3 cells, domain too large for cell size {size:.3g}')
        rows = np.flatnonzero(level_of_pebble == k)
        level = GridLevel(k, float(size), base, *(np.zeros(0, dtype=np.int64),) * 4)
        if len(rows):
            coords = np.floor((pebbles.centers[rows] - origin) / size).astype(np.int64) + 1
            keys = level.pack(coords)
            order = np.argsort(keys, kind='stable')
            level.keys, level.starts, level.counts = np.unique(keys[order], return_index=True, return_counts=True)
            level.members = rows[order]
        levels.append(level)
    logger.debug(f'hgrid: {levels}')
    return HGrid(pebbles, levels, level_of_pebble, origin, max_levels)


def _expand(level: GridLevel, queries: np.ndarray, keys: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    ''' all (query, member) pairs for query rows and the cell key each one looks up '''
    if len(level.keys) == 0 or len(keys) == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    pos = np.searchsorted(level.keys, keys)
    pos_clipped = np.minimum(pos, len(level.keys) - 1)
    found = level.keys[pos_clipped] == keys
    queries = queries[found]
    starts = level.starts[pos_clipped[found]]
    counts = level.counts[pos_clipped[found]]
    total = int(counts.sum())
    first = np.repeat(queries, counts)
    shift = np.repeat(starts - (np.cumsum(counts) - counts), counts)
    second = level.members[shift + np.arange(total)]
    return first, second


def hgrid_candidates(grid: HGrid) -> np.ndarray:
    '''
    candidate pairs (i, j), sorted, one row per unordered pair

    i is always a primary pebble; j is a primary with i < j, or a ghost
    whose primary is greater than i. Pairs of the same clump and
    ghost-ghost pairs are dropped.
    '''
    pebbles = grid.pebbles
    firsts, seconds = [], []
    for fine in grid.levels:
        if fine.population == 0:
            continue
        for coarse in grid.levels[fine.index:]:
            if coarse.population == 0:
                continue
            for begin in range(0, fine.population, QUERY_CHUNK):
                rows = fine.members[begin:begin + QUERY_CHUNK]
                coords = grid.coords(rows, coarse)
                lookup = coarse.pack(coords[:, None, :] + NEIGHBOUR_OFFSETS[None, :, :]).reshape(-1)
                queries = np.repeat(rows, len(NEIGHBOUR_OFFSETS))
                first, second = _expand(coarse, queries, lookup)
                owner_a, owner_b = pebbles.clump_ids[first], pebbles.clump_ids[second]
                keep = (owner_a != owner_b) | (owner_a < 0)
                if coarse is fine:
                    keep &= first < second
                firsts.append(first[keep])
                seconds.append(second[keep])
    if not firsts:
        return np.zeros((0, 2), dtype=np.int64)
    return filter_pairs(pebbles, np.concatenate(firsts), np.concatenate(seconds))


def filter_pairs(pebbles: PebbleSet, first: np.ndarray, second: np.ndarray) -> np.ndarray:
    ''' apply the exclusion rules and orient/sort the surviving pairs '''
    n = pebbles.n_primary
    ghost_a, ghost_b = first >= n, second >= n
    keep = ~(ghost_a & ghost_b)
    # put the primary first
    swap = ghost_a & ~ghost_b
    a = np.where(swap, second, first)[keep]
    b = np.where(swap, first, second)[keep]
    clump_a, clump_b = pebbles.clump_ids[a], pebbles.clump_ids[b]
    keep = ~((clump_a == clump_b) & (clump_a >= 0))
    a, b = a[keep], b[keep]
    pa, pb = pebbles.primary[a], pebbles.primary[b]
    # primary-primary pairs arrive in either order; pebble-ghost pairs keep one side only
    primary_pair = b < n
    lo = np.where(primary_pair, np.minimum(a, b), a)
    hi = np.where(primary_pair, np.maximum(a, b), b)
    keep = np.where(primary_pair, True, pa < pb)
    lo, hi = lo[keep], hi[keep]
    order = np.lexsort((hi, pebbles.primary[hi], lo))
    pairs = np.stack([lo[order], hi[order]], axis=1)
    if len(pairs) > 1:
        duplicate = np.all(pairs[1:] == pairs[:-1], axis=1)
        pairs = pairs[np.concatenate([[True], ~duplicate])]
    return pairs
