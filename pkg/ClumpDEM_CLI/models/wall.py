from typing import List

import numpy as np

from ClumpDEM_CLI.errors import ValidationError


def _unit(v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(3)
    norm = np.linalg.norm(v)
    if not norm > 0:
        raise ValidationError(f'{name} must be non-zero')
    return v / norm


class Wall:
    kind = 'wall'

    def velocity_at(self, points: np.ndarray) -> np.ndarray:
        return np.zeros_like(points)


class PlaneWall(Wall):
    '''
    infinite plane through point; normal points out of the wall towards the particles
    '''
    kind = 'plane'

    def __init__(self, point, normal):
        self.point = np.asarray(point, dtype=float).reshape(3) # type: np.ndarray
        self.normal = _unit(normal, 'plane normal') # type: np.ndarray

    def __repr__(self):
        return f'PlaneWall(point={self.point.tolist()}, normal={self.normal.tolist()})'


class CylinderWall(Wall):
    '''
    particles live inside the cylinder of radius around the axis through point;
    the wall spins at omega rad/s about axis
    '''
    kind = 'cylinder'

    def __init__(self, point, axis, radius: float, omega: float = 0.0):
        if radius <= 0:
            raise ValidationError(f'cylinder radius must be positive, got {radius}')
        self.point = np.asarray(point, dtype=float).reshape(3) # type: np.ndarray
        self.axis = _unit(axis, 'cylinder axis') # type: np.ndarray
        self.radius = float(radius) # type: float
        self.omega = float(omega) # type: float

    def velocity_at(self, points: np.ndarray) -> np.ndarray:
        return np.cross(self.omega * self.axis, np.asarray(points, dtype=float) - self.point)

    def __repr__(self):
        return f'CylinderWall(point={self.point.tolist()}, axis={self.axis.tolist()}, R={self.radius!r}, omega={self.omega!r})'


def box_walls(lo, hi, axes=(0, 1, 2)) -> List[PlaneWall]:
    ''' the faces of an axis-aligned box on the given axes, normals facing inward '''
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    walls = []
    for k in axes:
        n = np.zeros(3)
        n[k] = 1.0
        walls.append(PlaneWall(lo, n))
        walls.append(PlaneWall(hi, -n))
    return walls
