import numpy as np
import pytest
from scipy import stats

from ClumpDEM_CLI.contact.brute import brute_force_pairs
from ClumpDEM_CLI.errors import PlacementError, ValidationError
from ClumpDEM_CLI.models.box import PeriodicBox
from ClumpDEM_CLI.models.pebble import PebbleSet
from ClumpDEM_CLI.scenarios import shapes
from ClumpDEM_CLI.world.boundaries import wrap_positions
from ClumpDEM_CLI.world.placement import PlacementRequest, place_clumps, random_orientation


def pebble_table(clumps, box=None) -> PebbleSet:
    centers = np.concatenate([wrap_positions(c.pebble_centers(), box) for c in clumps])
    radii = np.concatenate([c.template.radii for c in clumps])
    owners = np.concatenate([np.full(c.template.pebble_count, k) for k, c in enumerate(clumps)])
    return PebbleSet(centers, radii, clump_ids=owners)


@pytest.mark.parametrize('periodic', [False, True])
def test_placed_clumps_do_not_overlap(periodic):
    box = PeriodicBox((0.0, 0.0, 0.0), (14.0, 14.0, 14.0), (periodic,) * 3)
    template = shapes.tbar()
    clumps = place_clumps(PlacementRequest(template, 12, box, seed=3), box)
    assert len(clumps) == 12
    assert len(brute_force_pairs(pebble_table(clumps, box), box)) == 0
    if not periodic:
        centers = pebble_table(clumps).centers
        assert np.all(centers >= box.lo) and np.all(centers <= box.hi)


def test_placement_is_deterministic():
    box = PeriodicBox((0.0, 0.0, 0.0), (6.0, 6.0, 6.0))
    request = PlacementRequest(shapes.rod(), 10, box, seed=11)
    first = place_clumps(request, box)
    second = place_clumps(request, box)
    for a, b in zip(first, second):
        assert np.array_equal(a.position, b.position)
        assert np.array_equal(a.orientation, b.orientation)


def test_placement_respects_region_and_existing_pebbles():
    box = PeriodicBox((0.0, 0.0, 0.0), (6.0, 6.0, 6.0), (False, False, False))
    sphere = shapes.sphere(0.5)
    existing = PebbleSet([[3.0, 3.0, 3.0]], [2.0])
    clumps = place_clumps(
        PlacementRequest(sphere, 5, box, seed=1, region=lambda x: x[2] < 3.0), box, existing=existing,
    )
    for clump in clumps:
        assert clump.position[2] < 3.0
        assert np.linalg.norm(clump.position - 3.0) > 2.5


def test_placement_gives_up():
    box = PeriodicBox((0.0, 0.0, 0.0), (2.0, 2.0, 2.0), (False, False, False))
    with pytest.raises(PlacementError) as info:
        place_clumps(PlacementRequest(shapes.sphere(0.5), 20, box, max_attempts=50), box)
    assert 1 <= info.value.placed < 20
    assert info.value.attempts == 50


def test_placement_request_validation():
    box = PeriodicBox((0.0, 0.0, 0.0), (2.0, 2.0, 2.0))
    with pytest.raises(ValidationError):
        PlacementRequest(shapes.rod(), 0, box)


def test_random_orientations_are_uniform(rng):
    samples = [random_orientation(rng) for _ in range(10000)]
    for q in samples[:100]:
        assert np.allclose(q.T @ q, np.eye(3))
        assert np.linalg.det(q) == pytest.approx(1.0)
    cosines = np.array([q[2, 2] for q in samples])
    assert stats.kstest(cosines, 'uniform', args=(-1.0, 2.0)).statistic < 0.02
    azimuth = np.array([np.arctan2(q[1, 2], q[0, 2]) for q in samples])
    assert stats.kstest(azimuth, 'uniform', args=(-np.pi, 2.0 * np.pi)).statistic < 0.02
