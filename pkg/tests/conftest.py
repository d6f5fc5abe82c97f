import numpy as np
import pytest

from ClumpDEM_CLI.forge.tessellate import two_sphere_clump
from ClumpDEM_CLI.models.clump import ClumpInstance
from ClumpDEM_CLI.models.contact import ContactModel
from ClumpDEM_CLI.models.settings import IntegratorSettings
from ClumpDEM_CLI.scenarios import shapes
from ClumpDEM_CLI.world.world import World


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def two_spheres():
    return two_sphere_clump(1.0)


@pytest.fixture
def unit_sphere():
    return shapes.sphere(0.5)


@pytest.fixture
def make_world():
    ''' World factory with a linear elastic model unless told otherwise '''
    def factory(kn=1.0e4, dt=1.0e-4, gravity=(0.0, 0.0, 0.0), **kwargs):
        model = kwargs.pop('model', None) or ContactModel(kn)
        return World(model, IntegratorSettings(dt, 3, gravity), **kwargs)
    return factory


@pytest.fixture
def sphere_pair(make_world, unit_sphere):
    ''' two unit-diameter spheres approaching head on along x at 1 m/s each '''
    def factory(**kwargs):
        world = make_world(**kwargs)
        world.add_clump(ClumpInstance(unit_sphere, (-0.75, 0.0, 0.0), (1.0, 0.0, 0.0)))
        world.add_clump(ClumpInstance(unit_sphere, (0.75, 0.0, 0.0), (-1.0, 0.0, 0.0)))
        return world
    return factory
