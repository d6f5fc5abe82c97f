from typing import Optional

import numpy as np

from ClumpDEM_CLI.errors import ValidationError

FREE = -1


class Pebble:
    '''
    a sphere taking part in contact detection
    clump_id is FREE (-1) for a sphere that belongs to no clump
    a ghost is a periodic image of pebble primary_id
    '''
    def __init__(self, id: int, center, radius: float, clump_id: int = FREE, velocity=None,
                 is_ghost: bool = False, primary_id: Optional[int] = None):
        if radius <= 0:
            raise ValidationError(f'pebble #{id} radius must be positive, got {radius}')
        self.id = id # type: int
        self.clump_id = clump_id # type: int
        self.center = np.asarray(center, dtype=float) # type: np.ndarray
        self.radius = float(radius) # type: float
        self.velocity = np.zeros(3) if velocity is None else np.asarray(velocity, dtype=float) # type: np.ndarray
        self.is_ghost = is_ghost # type: bool
        self.primary_id = id if primary_id is None else primary_id # type: int

    def __repr__(self):
        kind = f'ghost of #{self.primary_id}' if self.is_ghost else 'primary'
        return f'Pebble(#{self.id}, clump={self.clump_id}, r={self.radius!r}, {kind})'


class PebbleSet:
    '''
    struct-of-arrays pebble table; primaries occupy rows [0, n_primary),
    ghosts (if any) follow and point back through primary[]
    '''
    def __init__(self, centers, radii, velocities=None, clump_ids=None, primary=None, n_primary: Optional[int] = None):
        self.centers = np.asarray(centers, dtype=float).reshape(-1, 3) # type: np.ndarray
        n = len(self.centers)
        self.radii = np.asarray(radii, dtype=float).reshape(n) # type: np.ndarray
        if n > 0 and self.radii.min() <= 0:
            raise ValidationError('pebble radii must be positive')
        if velocities is None:
            velocities = np.zeros((n, 3))
        if clump_ids is None:
            clump_ids = np.full(n, FREE)
        if primary is None:
            primary = np.arange(n)
        self.velocities = np.asarray(velocities, dtype=float).reshape(n, 3) # type: np.ndarray
        self.clump_ids = np.asarray(clump_ids, dtype=np.int64).reshape(n) # type: np.ndarray
        self.primary = np.asarray(primary, dtype=np.int64).reshape(n) # type: np.ndarray
        self.n_primary = n if n_primary is None else int(n_primary) # type: int

    def __len__(self):
        return len(self.centers)

    @property
    def is_ghost(self) -> np.ndarray:
        return np.arange(len(self)) >= self.n_primary

    @property
    def max_radius(self) -> float:
        return float(self.radii.max()) if len(self) else 0.0

    def primaries(self) -> 'PebbleSet':
        n = self.n_primary
        return PebbleSet(self.centers[:n], self.radii[:n], self.velocities[:n], self.clump_ids[:n])

    def append_ghosts(self, source: np.ndarray, shifts: np.ndarray) -> 'PebbleSet':
        ''' new table with images of primaries source[k] displaced by shifts[k] '''
        source = np.asarray(source, dtype=np.int64)
        n = self.n_primary
        return PebbleSet(
            np.concatenate([self.centers[:n], self.centers[source] + shifts]),
            np.concatenate([self.radii[:n], self.radii[source]]),
            np.concatenate([self.velocities[:n], self.velocities[source]]),
            np.concatenate([self.clump_ids[:n], self.clump_ids[source]]),
            np.concatenate([np.arange(n), source]),
            n,
        )

    def canonical_pairs(self, pairs: np.ndarray) -> np.ndarray:
        ''' map rows to primary ids, order each row ascending, sort and drop duplicates '''
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        if len(pairs) == 0:
            return pairs
        mapped = np.sort(self.primary[pairs], axis=1)
        return np.unique(mapped, axis=0)
