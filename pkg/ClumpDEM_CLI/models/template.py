from typing import List, Optional

import numpy as np

from ClumpDEM_CLI.errors import ValidationError


class PebbleSpec:
    '''
    one sphere of a clump recipe, center in the recipe (or body) frame
    '''
    def __init__(self, center, radius: float):
        center = np.asarray(center, dtype=float)
        if center.shape != (3,) or not np.all(np.isfinite(center)):
            raise ValidationError(f'pebble center must be a finite 3-vector, got {center}')
        if not np.isfinite(radius) or radius <= 0:
            raise ValidationError(f'pebble radius must be positive, got {radius}')
        self.center = center # type: np.ndarray
        self.radius = float(radius) # type: float

    def __repr__(self):
        return f'PebbleSpec(center={self.center.tolist()}, radius={self.radius!r})'


def pebble_arrays(pebbles: List[PebbleSpec]):
    ''' (centers (n, 3), radii (n,)) of a pebble list '''
    if len(pebbles) == 0:
        raise ValidationError('at least one pebble is required')
    centers = np.array([p.center for p in pebbles], dtype=float)
    radii = np.array([p.radius for p in pebbles], dtype=float)
    return centers, radii


def pebbles_from_arrays(centers: np.ndarray, radii: np.ndarray) -> List[PebbleSpec]:
    return [PebbleSpec(c, r) for c, r in zip(np.asarray(centers, dtype=float), np.asarray(radii, dtype=float))]


class MassProperties:
    '''
    mass, center of mass and inertia tensor about the center of mass
    method records which summation produced the numbers
    '''
    def __init__(self, mass: float, com, inertia, density: Optional[float] = None, method: str = ''):
        self.mass = float(mass) # type: float
        self.com = np.asarray(com, dtype=float) # type: np.ndarray
        self.inertia = np.asarray(inertia, dtype=float) # type: np.ndarray
        self.density = density # type: Optional[float]
        self.method = method # type: str
        if not self.mass > 0:
            raise ValidationError(f'mass must be positive, got {self.mass}')

    def principal_values(self) -> np.ndarray:
        return np.sort(np.linalg.eigvalsh(self.inertia))[::-1]

    def satisfies_triangle_inequality(self, rtol: float = 1e-9) -> bool:
        l1, l2, l3 = self.principal_values()
        return bool(l2 + l3 >= l1 * (1.0 - rtol) and l3 >= -rtol * l1)

    def __repr__(self):
        return (
            f'MassProperties(method={self.method!r}, mass={self.mass!r}, '
            f'com={self.com.tolist()}, principal={self.principal_values().tolist()})'
        )


class ClumpTemplate:
    '''
    immutable clump recipe

    pebbles sit in the body frame whose origin is the center of mass and
    whose axes are the principal directions, so the body inertia is the
    diagonal (I1, I2, I3) with I1 >= I2 >= I3
    '''
    def __init__(self, name: str, pebbles: List[PebbleSpec], density: float, mass: float, inertia_body,
                 rotation=None):
        if len(pebbles) == 0:
            raise ValidationError(f'template {name!r} has no pebbles')
        inertia_body = np.asarray(inertia_body, dtype=float)
        if inertia_body.shape == (3,):
            inertia_body = np.diag(inertia_body)
        if mass <= 0 or np.any(np.diag(inertia_body) < 0):
            raise ValidationError(f'template {name!r} has non-physical mass properties')
        self.name = name # type: str
        self.pebbles = list(pebbles) # type: List[PebbleSpec]
        self.density = float(density) # type: float
        self.mass = float(mass) # type: float
        self.inertia_body = inertia_body # type: np.ndarray
        # alignment rotation applied when the template was forged, identity if unknown
        self.rotation = np.eye(3) if rotation is None else np.asarray(rotation, dtype=float) # type: np.ndarray
        self.offsets, self.radii = pebble_arrays(self.pebbles)
        self.offsets.setflags(write=False)
        self.radii.setflags(write=False)

    @property
    def principal(self) -> np.ndarray:
        return np.diag(self.inertia_body).copy()

    @property
    def bounding_radius(self) -> float:
        ''' radius of the smallest origin-centred sphere enclosing every pebble '''
        return float(np.max(np.linalg.norm(self.offsets, axis=1) + self.radii))

    @property
    def pebble_count(self) -> int:
        return len(self.pebbles)

    def pebble_masses(self) -> np.ndarray:
        return self.density * 4.0 / 3.0 * np.pi * self.radii ** 3

    def __repr__(self):
        return (
            f'ClumpTemplate({self.name!r}, pebbles={self.pebble_count}, '
            f'mass={self.mass!r}, principal={self.principal.tolist()})'
        )
