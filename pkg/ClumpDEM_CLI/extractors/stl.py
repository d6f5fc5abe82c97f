import re

import numpy as np

from ClumpDEM_CLI.errors import ValidationError
from ClumpDEM_CLI.extractors.base import BaseParser
from ClumpDEM_CLI.models.mesh import TriMesh

HEADER_SIZE = 80
FACET_SIZE = 50
FACET_DTYPE = np.dtype([('normal', '<f4', (3,)), ('vertices', '<f4', (3, 3)), ('attr', '<u2')])
VERTEX_PATTERN = re.compile(rb'vertex\s+(\S+)\s+(\S+)\s+(\S+)')
WELD_TOLERANCE = 1e-9


def is_ascii_stl(data: bytes) -> bool:
    return data.lstrip().startswith(b'solid') and b'facet' in data


def is_binary_stl(data: bytes) -> bool:
    if len(data) < HEADER_SIZE + 4:
        return False
    count = int(np.frombuffer(data, dtype='<u4', count=1, offset=HEADER_SIZE)[0])
    return len(data) == HEADER_SIZE + 4 + FACET_SIZE * count


class STLParser(BaseParser):
    '''
    ASCII or little-endian binary STL; coincident corners are welded
    '''
    def __init__(self, path=None):
        super().__init__(path)
        self.suffix = '.stl'

    def parse(self, data: bytes) -> TriMesh:
        # binary headers may start with "solid" too, the exact size decides first
        if is_binary_stl(data):
            triangles = self.parse_binary(data)
        elif is_ascii_stl(data):
            triangles = self.parse_ascii(data)
        elif data.lstrip().startswith(b'solid'):
            # an ASCII header without a single facet
            raise ValidationError(f'{self.path}: STL has no facets')
        else:
            raise self.error('not an ASCII or binary STL file')
        if len(triangles) == 0:
            raise ValidationError(f'{self.path}: STL has no facets')
        mesh = weld(triangles)
        self.logger.info(f'{self.path}: {len(triangles)} facets, {len(mesh.vertices)} welded vertices')
        return mesh

    def parse_ascii(self, data: bytes) -> np.ndarray:
        values = []
        for number, match in enumerate(VERTEX_PATTERN.finditer(data), start=1):
            try:
                values.append([float(v) for v in match.groups()])
            except ValueError:
                line = data.count(b'\n', 0, match.start()) + 1
                raise self.error(f'bad vertex {match.group(0)!r}', line) from None
        if len(values) % 3 != 0:
            raise self.error(f'{len(values)} vertices do not form whole triangles')
        return np.array(values, dtype=float).reshape(-1, 3, 3)

    def parse_binary(self, data: bytes) -> np.ndarray:
        count = int(np.frombuffer(data, dtype='<u4', count=1, offset=HEADER_SIZE)[0])
        facets = np.frombuffer(data, dtype=FACET_DTYPE, count=count, offset=HEADER_SIZE + 4)
        return facets['vertices'].astype(float)


def weld(triangles: np.ndarray) -> TriMesh:
    ''' merge corners closer than WELD_TOLERANCE * bounding-box diagonal '''
    corners = np.asarray(triangles, dtype=float).reshape(-1, 3)
    diagonal = float(np.linalg.norm(np.ptp(corners, axis=0)))
    if diagonal == 0.0:
        raise ValidationError('mesh has zero extent')
    keys = np.round((corners - corners.min(axis=0)) / (WELD_TOLERANCE * diagonal)).astype(np.int64)
    _, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
    vertices = corners[first]
    return TriMesh(vertices, inverse.reshape(-1, 3))


def to_binary(triangles: np.ndarray, header: bytes = b'ClumpDEM') -> bytes:
    triangles = np.asarray(triangles, dtype=float).reshape(-1, 3, 3)
    facets = np.zeros(len(triangles), dtype=FACET_DTYPE)
    facets['normal'] = _normals(triangles)
    facets['vertices'] = triangles
    count = np.array([len(triangles)], dtype='<u4').tobytes()
    return header[:HEADER_SIZE].ljust(HEADER_SIZE, b' ') + count + facets.tobytes()


def to_ascii(triangles: np.ndarray, name: str = 'clumpdem') -> bytes:
    triangles = np.asarray(triangles, dtype=float).reshape(-1, 3, 3)
    lines = [f'solid {name}']
    for tri, normal in zip(triangles, _normals(triangles)):
        lines.append(f'  facet normal {float(normal[0])!r} {float(normal[1])!r} {float(normal[2])!r}')
        lines.append('    outer loop')
        for v in tri:
            lines.append(f'      vertex {float(v[0])!r} {float(v[1])!r} {float(v[2])!r}')
        lines.append('    endloop')
        lines.append('  endfacet')
    lines.append(f'endsolid {name}')
    return ('\n'.join(lines) + '\n').encode('ascii')


def _normals(triangles: np.ndarray) -> np.ndarray:
    n = np.cross(triangles[:, 1] - triangles[:, 0], triangles[:, 2] - triangles[:, 0])
    length = np.linalg.norm(n, axis=1, keepdims=True)
    return n / np.where(length > 0, length, 1.0)
