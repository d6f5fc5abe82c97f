import numpy as np

from ClumpDEM_CLI.errors import ValidationError


class VoxelGrid:
    '''
    cubic box of N^3 voxels of side d starting at origin
    mask[m, n, k] is True when the center of voxel (m, n, k) lies inside the solid
    '''
    def __init__(self, origin, side: float, resolution: int, mask: np.ndarray):
        if side <= 0:
            raise ValidationError(f'voxel side must be positive, got {side}')
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (resolution,) * 3:
            raise ValidationError(f'mask shape {mask.shape} does not match resolution {resolution}')
        self.origin = np.asarray(origin, dtype=float) # type: np.ndarray
        self.side = float(side) # type: float
        self.resolution = int(resolution) # type: int
        self.mask = mask # type: np.ndarray

    def centers_1d(self) -> np.ndarray:
        ''' voxel-center coordinates along each axis, shape (3, N) '''
        index = np.arange(self.resolution) + 0.5
        return self.origin[:, None] + self.side * index[None, :]

    @property
    def filled(self) -> int:
        return int(np.count_nonzero(self.mask))

    @property
    def box_size(self) -> float:
        return self.side * self.resolution

    def __repr__(self):
        return f'VoxelGrid(N={self.resolution}, d={self.side!r}, filled={self.filled})'
