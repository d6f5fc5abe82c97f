import numpy as np

from ClumpDEM_CLI.errors import ValidationError


class TriMesh:
    '''
    triangulated surface, faces wound so normals point outward; closed unless built as an open chart
    '''
    def __init__(self, vertices, faces):
        vertices = np.asarray(vertices, dtype=float).reshape(-1, 3)
        faces = np.asarray(faces, dtype=np.int64).reshape(-1, 3)
        if len(faces) == 0:
            raise ValidationError('mesh has no faces')
        if faces.min() < 0 or faces.max() >= len(vertices):
            raise ValidationError('face index out of range')
        if not np.all(np.isfinite(vertices)):
            raise ValidationError('mesh has non-finite vertices')
        self.vertices = vertices # type: np.ndarray
        self.faces = faces # type: np.ndarray
        areas = self.face_areas()
        scale = max(float(np.ptp(vertices, axis=0).max()), np.finfo(float).tiny)
        degenerate = np.flatnonzero(areas <= 1e-14 * scale * scale)
        if len(degenerate) > 0:
            raise ValidationError(f'{len(degenerate)} degenerate face(s), first is #{degenerate[0]}')

    def face_areas(self) -> np.ndarray:
        a, b, c = (self.vertices[self.faces[:, k]] for k in range(3))
        return 0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=1)

    def triangles(self) -> np.ndarray:
        ''' (n_faces, 3, 3) corner coordinates '''
        return self.vertices[self.faces]

    def __repr__(self):
        return f'TriMesh(vertices={len(self.vertices)}, faces={len(self.faces)})'
