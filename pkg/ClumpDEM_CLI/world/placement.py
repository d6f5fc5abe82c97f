import logging
from typing import Callable, List, Optional

import numpy as np

from ClumpDEM_CLI.errors import PlacementError, ValidationError
from ClumpDEM_CLI.models.box import PeriodicBox
from ClumpDEM_CLI.models.clump import ClumpInstance
from ClumpDEM_CLI.models.pebble import PebbleSet
from ClumpDEM_CLI.models.template import ClumpTemplate
from ClumpDEM_CLI.util.linalg import axis_rotation
from ClumpDEM_CLI.world.boundaries import min_image, wrap_positions

logger = logging.getLogger('clumpdem.placement')


def random_orientation(rng: np.random.Generator) -> np.ndarray:
    '''
    uniformly distributed rotation: spin alpha about the third axis, then
    tilt the third axis to (sin t cos p, sin t sin p, cos t) with
    t = arccos(u), u ~ U(-1, 1), p ~ U(0, 2 pi)
    '''
    alpha = rng.uniform(0.0, 2.0 * np.pi)
    phi = rng.uniform(0.0, 2.0 * np.pi)
    theta = np.arccos(rng.uniform(-1.0, 1.0))
    return axis_rotation(2, phi) @ axis_rotation(1, theta) @ axis_rotation(2, alpha)


class PlacementRequest:
    '''
    count clumps of one template dropped into domain without overlaps

    on non-periodic axes the center of mass is kept a bounding radius away
    from the faces; region, if given, must accept a candidate center
    '''
    def __init__(self, template: ClumpTemplate, count: int, domain: PeriodicBox, seed: int = 0,
                 max_attempts: int = 1000, region: Optional[Callable[[np.ndarray], bool]] = None):
        if count < 1:
            raise ValidationError(f'placement count must be at least 1, got {count}')
        if max_attempts < 1:
            raise ValidationError(f'max_attempts must be at least 1, got {max_attempts}')
        self.template = template # type: ClumpTemplate
        self.count = count # type: int
        self.domain = domain # type: PeriodicBox
        self.seed = seed # type: int
        self.max_attempts = max_attempts # type: int
        self.region = region


def _overlaps(centers: np.ndarray, radii: np.ndarray, others: np.ndarray, other_radii: np.ndarray,
              box: Optional[PeriodicBox]) -> bool:
    if len(others) == 0:
        return False
    delta = min_image(centers[:, None, :] - others[None, :, :], box)
    d2 = np.einsum('ijk,ijk->ij', delta, delta)
    reach = radii[:, None] + other_radii[None, :]
    return bool(np.any(d2 <= reach * reach))


def place_clumps(req: PlacementRequest, box: PeriodicBox = None, existing: Optional[PebbleSet] = None,
                 rng: Optional[np.random.Generator] = None) -> List[ClumpInstance]:
    '''
    sequential random deposition: uniform center of mass, uniform orientation,
    accepted when no pebble touches or overlaps an existing pebble
    (minimum-image distances when box is periodic)
    '''
    rng = rng if rng is not None else np.random.default_rng(req.seed)
    template = req.template
    domain = req.domain
    periodic = box.periodic if box is not None else np.zeros(3, dtype=bool)
    inset = np.where(periodic, 0.0, template.bounding_radius)
    lo, hi = domain.lo + inset, domain.hi - inset
    if np.any(hi < lo):
        raise PlacementError(0, req.count, 0)
    if existing is not None:
        centers, radii = existing.centers[:existing.n_primary], existing.radii[:existing.n_primary]
    else:
        centers, radii = np.zeros((0, 3)), np.zeros(0)
    placed = []
    for k in range(req.count):
        for attempt in range(1, req.max_attempts + 1):
            com = rng.uniform(lo, hi)
            orientation = random_orientation(rng)
            if req.region is not None and not req.region(com):
                continue
            pebbles = wrap_positions(com + template.offsets @ orientation.T, box)
            if _overlaps(pebbles, template.radii, centers, radii, box):
                continue
            placed.append(ClumpInstance(template, com, orientation=orientation))
            centers = np.concatenate([centers, pebbles])
            radii = np.concatenate([radii, template.radii])
            logger.debug(f'clump {k + 1}/{req.count} placed after {attempt} attempt(s)')
            break
        else:
            logger.error(f'placement failed: {len(placed)} of {req.count} clumps placed')
            raise PlacementError(len(placed), req.count, req.max_attempts)
    logger.info(f'placed {len(placed)} {template.name!r} clumps')
    return placed
