import logging
from typing import List

import numpy as np

from ClumpDEM_CLI.models.template import ClumpTemplate, MassProperties, PebbleSpec, pebble_arrays, pebbles_from_arrays
from ClumpDEM_CLI.util.linalg import eig_sym3, rotation_from_axes

logger = logging.getLogger('clumpdem.forge')


def align_principal(props: MassProperties, pebbles: List[PebbleSpec], name: str = 'clump') -> ClumpTemplate:
    '''
    move the clump into its principal frame: x' = Q^T (x - x_c), I' = Q^T I Q
    where the columns of Q are the principal directions, largest moment first
    '''
    eig = eig_sym3(props.inertia)
    q = rotation_from_axes(*eig.axes)
    centers, radii = pebble_arrays(pebbles)
    body = (centers - props.com) @ q
    rotated = q.T @ props.inertia @ q
    principal = np.diag(rotated).copy()
    logger.info(f'{name}: principal moments {principal.tolist()} ({props.method})')
    density = props.density if props.density is not None else 0.0
    return ClumpTemplate(name, pebbles_from_arrays(body, radii), density, props.mass, np.diag(principal), rotation=q)
