import numpy as np

from ClumpDEM_CLI.errors import ValidationError


class IntegratorSettings:

    def __init__(self, dt: float, omega_iterations: int = 3, gravity=(0.0, 0.0, 0.0)):
        if not dt > 0:
            raise ValidationError(f'time step must be positive, got {dt}')
        if not 1 <= omega_iterations <= 10:
            raise ValidationError(f'omega_iterations must be in [1, 10], got {omega_iterations}')
        self.dt = float(dt) # type: float
        self.omega_iterations = int(omega_iterations) # type: int
        self.gravity = np.asarray(gravity, dtype=float).reshape(3) # type: np.ndarray

    def __repr__(self):
        return f'IntegratorSettings(dt={self.dt!r}, omega_iterations={self.omega_iterations}, gravity={self.gravity.tolist()})'
