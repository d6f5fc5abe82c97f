from typing import List, Optional

import numpy as np

from ClumpDEM_CLI.errors import ValidationError

PEBBLE_PEBBLE = 'pebble-pebble'
PEBBLE_WALL = 'pebble-wall'


class ContactModel:
    '''
    linear spring-dashpot normal law with a Coulomb-capped tangential spring
    kn, kt in N/m; gn, gt in N*s/m; mu dimensionless
    '''
    def __init__(self, kn: float, gn: float = 0.0, kt: float = 0.0, gt: float = 0.0, mu: float = 0.0):
        if not kn > 0:
            raise ValidationError(f'kn must be positive, got {kn}')
        for name, value in (('gn', gn), ('kt', kt), ('gt', gt), ('mu', mu)):
            if value < 0:
                raise ValidationError(f'{name} must be non-negative, got {value}')
        self.kn = float(kn) # type: float
        self.gn = float(gn) # type: float
        self.kt = float(kt) # type: float
        self.gt = float(gt) # type: float
        self.mu = float(mu) # type: float

    def __repr__(self):
        return f'ContactModel(kn={self.kn!r}, gn={self.gn!r}, kt={self.kt!r}, gt={self.gt!r}, mu={self.mu!r})'


class Contact:
    '''
    one overlap; normal is a unit vector pointing from the second body to the first
    for a wall contact ids is (pebble, wall index)
    '''
    def __init__(self, kind: str, ids: tuple, normal, overlap: float, point, spring=None):
        self.kind = kind # type: str
        self.ids = ids # type: tuple
        self.normal = np.asarray(normal, dtype=float) # type: np.ndarray
        self.overlap = float(overlap) # type: float
        self.point = np.asarray(point, dtype=float) # type: np.ndarray
        self.spring = np.zeros(3) if spring is None else np.asarray(spring, dtype=float) # type: np.ndarray

    def __repr__(self):
        return f'Contact({self.kind}, ids={self.ids}, overlap={self.overlap:.6g}, normal={self.normal.tolist()})'


class ContactBatch:
    '''
    array form of many contacts

    a is the pebble row of the first body; b the pebble row of the second body
    or -1 for a wall, in which case wall holds the wall index (else -1)
    '''
    def __init__(self, a, b, wall, normal, overlap, point):
        self.a = np.asarray(a, dtype=np.int64) # type: np.ndarray
        self.b = np.asarray(b, dtype=np.int64) # type: np.ndarray
        self.wall = np.asarray(wall, dtype=np.int64) # type: np.ndarray
        self.normal = np.asarray(normal, dtype=float).reshape(-1, 3) # type: np.ndarray
        self.overlap = np.asarray(overlap, dtype=float) # type: np.ndarray
        self.point = np.asarray(point, dtype=float).reshape(-1, 3) # type: np.ndarray

    @classmethod
    def empty(cls) -> 'ContactBatch':
        e = np.zeros(0, dtype=np.int64)
        return cls(e, e, e, np.zeros((0, 3)), np.zeros(0), np.zeros((0, 3)))

    @classmethod
    def concat(cls, batches: List['ContactBatch']) -> 'ContactBatch':
        batches = [b for b in batches if len(b) > 0]
        if len(batches) == 0:
            return cls.empty()
        if len(batches) == 1:
            return batches[0]
        return cls(*(np.concatenate([getattr(b, f) for b in batches]) for f in ('a', 'b', 'wall', 'normal', 'overlap', 'point')))

    def __len__(self):
        return len(self.a)

    @property
    def is_wall(self) -> np.ndarray:
        return self.wall >= 0

    def contact(self, i: int, spring: Optional[np.ndarray] = None) -> Contact:
        if self.wall[i] >= 0:
            kind, ids = PEBBLE_WALL, (int(self.a[i]), int(self.wall[i]))
        else:
            kind, ids = PEBBLE_PEBBLE, (int(self.a[i]), int(self.b[i]))
        return Contact(kind, ids, self.normal[i], self.overlap[i], self.point[i], spring)
