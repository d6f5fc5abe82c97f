import numpy as np

from ClumpDEM_CLI.models.template import ClumpTemplate


class ClumpState:
    '''
    struct-of-arrays rigid-body state of n clumps

    omega holds the angular velocity at the last half step (leap-frog),
    omega_sync its average with the previous half step, i.e. the value at
    the current integer step
    '''
    def __init__(self, n: int):
        self.position = np.zeros((n, 3))
        self.velocity = np.zeros((n, 3))
        self.orientation = np.tile(np.eye(3), (n, 1, 1))
        self.omega = np.zeros((n, 3))
        self.omega_sync = np.zeros((n, 3))
        self.force = np.zeros((n, 3))
        self.torque = np.zeros((n, 3))
        self.mass = np.zeros(n)
        self.inertia_body = np.zeros((n, 3))

    def __len__(self):
        return len(self.mass)


def _field(name: str, doc: str):
    def getter(self):
        return self._state.__dict__[name][self._index]

    def setter(self, value):
        self._state.__dict__[name][self._index] = value
    return property(getter, setter, doc=doc)


class ClumpInstance:
    '''
    handle on one clump's dynamic state

    a fresh instance owns a private one-row ClumpState; once added to a
    World it is rebound to the world's arrays, so reads and writes through
    the handle always see the live values
    '''
    position = _field('position', 'center of mass, m')
    velocity = _field('velocity', 'center-of-mass velocity, m/s')
    orientation = _field('orientation', 'rotation matrix Q, body -> world')
    omega = _field('omega', 'world-frame angular velocity at the last half step, rad/s')
    omega_sync = _field('omega_sync', 'angular velocity synchronized to the integer step, rad/s')
    force = _field('force', 'accumulated force, N')
    torque = _field('torque', 'accumulated torque about the center of mass, N*m')

    def __init__(self, template: ClumpTemplate, position=(0.0, 0.0, 0.0), velocity=(0.0, 0.0, 0.0),
                 orientation=None, omega=(0.0, 0.0, 0.0)):
        self.template = template # type: ClumpTemplate
        self._state = ClumpState(1)
        self._index = 0
        self._state.mass[0] = template.mass
        self._state.inertia_body[0] = template.principal
        self.position = position
        self.velocity = velocity
        if orientation is not None:
            self.orientation = orientation
        self.omega = omega
        self.omega_sync = omega

    @property
    def mass(self) -> float:
        return self.template.mass

    @property
    def index(self) -> int:
        return self._index

    def bind(self, state: ClumpState, index: int):
        ''' move this clump's values into row index of state and follow that row from now on '''
        for field in vars(state):
            getattr(state, field)[index] = getattr(self._state, field)[self._index]
        self._state = state
        self._index = index
        return self

    def world_inertia(self) -> np.ndarray:
        q = self.orientation
        return q @ self.template.inertia_body @ q.T

    def pebble_centers(self) -> np.ndarray:
        ''' unwrapped world centers of this clump's pebbles '''
        return self.position + self.template.offsets @ self.orientation.T

    def __repr__(self):
        return f'ClumpInstance({self.template.name!r}, x={self.position.tolist()}, v={self.velocity.tolist()})'
