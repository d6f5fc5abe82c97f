import numpy as np

from ClumpDEM_CLI.errors import ValidationError


class PeriodicBox:
    '''
    axis-aligned domain [lo, hi); periodic[k] tells whether axis k wraps
    '''
    def __init__(self, lo, hi, periodic=(True, True, True)):
        self.lo = np.asarray(lo, dtype=float).reshape(3) # type: np.ndarray
        self.hi = np.asarray(hi, dtype=float).reshape(3) # type: np.ndarray
        self.periodic = np.asarray(periodic, dtype=bool).reshape(3) # type: np.ndarray
        if np.any(self.hi <= self.lo):
            raise ValidationError(f'box max {self.hi} must exceed min {self.lo} on every axis')

    @property
    def lengths(self) -> np.ndarray:
        return self.hi - self.lo

    @property
    def any_periodic(self) -> bool:
        return bool(self.periodic.any())

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (self.lo + self.hi)

    def contains(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        return np.all((points >= self.lo) & (points < self.hi), axis=-1)

    def __repr__(self):
        flags = ''.join('P' if p else '-' for p in self.periodic)
        return f'PeriodicBox(lo={self.lo.tolist()}, hi={self.hi.tolist()}, periodic={flags})'
