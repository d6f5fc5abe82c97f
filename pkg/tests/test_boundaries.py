import numpy as np
import pytest

from ClumpDEM_CLI.dynamics.loads import accumulate_loads
from ClumpDEM_CLI.errors import ValidationError
from ClumpDEM_CLI.models.box import PeriodicBox
from ClumpDEM_CLI.models.clump import ClumpInstance
from ClumpDEM_CLI.models.pebble import PebbleSet
from ClumpDEM_CLI.scenarios import shapes
from ClumpDEM_CLI.util.linalg import axis_rotation
from ClumpDEM_CLI.world.boundaries import ghost_pebbles, min_image, validate_box, wrap_clump, wrap_positions


@pytest.fixture
def box():
    return PeriodicBox((0.0, 0.0, 0.0), (10.0, 10.0, 10.0))


def test_min_image(box):
    assert np.allclose(min_image(np.array([6.0, -6.0, 1.0]), box), [-4.0, 4.0, 1.0])
    mixed = PeriodicBox((0.0, 0.0, 0.0), (10.0, 10.0, 10.0), (True, False, True))
    assert np.allclose(min_image(np.array([6.0, -6.0, 1.0]), mixed), [-4.0, -6.0, 1.0])
    assert np.allclose(min_image(np.array([6.0, -6.0, 1.0])), [6.0, -6.0, 1.0])


def test_wrap_positions(box):
    assert np.allclose(wrap_positions(np.array([10.0, -0.5, 3.0]), box), [0.0, 9.5, 3.0])
    wrapped = wrap_positions(np.array([[-1e-17, 0.0, 0.0]]), box)
    assert np.all(box.contains(wrapped))


def test_wrap_clump_moves_only_the_center(box, unit_sphere):
    q = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    clump = ClumpInstance(unit_sphere, position=(10.5, -2.0, 4.0), velocity=(1.0, 2.0, 3.0), orientation=q)
    assert wrap_clump(clump, box) is clump
    assert np.allclose(clump.position, [0.5, 8.0, 4.0])
    assert np.allclose(clump.velocity, [1.0, 2.0, 3.0])
    assert np.allclose(clump.orientation, q)


def test_corner_pebble_gets_seven_images(box):
    table = ghost_pebbles(PebbleSet([[0.1, 0.1, 0.1], [5.0, 5.0, 5.0]], [0.5, 0.5]), box)
    assert table.n_primary == 2
    assert len(table) == 2 + 7
    assert np.all(table.primary[2:] == 0)
    assert np.allclose(np.sort(table.centers[2:, 0]), [0.1] * 3 + [10.1] * 4)


def test_non_periodic_box_has_no_ghosts():
    box = PeriodicBox((0.0, 0.0, 0.0), (10.0, 10.0, 10.0), (False, False, False))
    table = PebbleSet([[0.1, 0.1, 0.1]], [0.5])
    assert len(ghost_pebbles(table, box)) == 1


def test_validate_box_rejects_short_periods():
    validate_box(PeriodicBox((0, 0, 0), (3.0, 3.0, 3.0)), 0.5, 0.1)
    with pytest.raises(ValidationError):
        validate_box(PeriodicBox((0, 0, 0), (2.2, 3.0, 3.0)), 0.5, 0.1)
    validate_box(PeriodicBox((0, 0, 0), (2.2, 3.0, 3.0), (False, True, True)), 0.5, 0.1)


def test_box_rejects_inverted_bounds():
    with pytest.raises(ValidationError):
        PeriodicBox((0.0, 0.0, 0.0), (1.0, -1.0, 1.0))


def test_lever_uses_minimum_image(box):
    force = np.array([[0.0, 1.0, 0.0]])
    across = accumulate_loads(np.array([[9.9, 5.0, 5.0]]), np.array([1.0]), np.zeros(3), np.array([0]),
                              force, np.array([[0.1, 5.0, 5.0]]), box)
    inside = accumulate_loads(np.array([[4.9, 5.0, 5.0]]), np.array([1.0]), np.zeros(3), np.array([0]),
                              force, np.array([[5.1, 5.0, 5.0]]))
    assert np.allclose(across[0], inside[0], atol=1e-10)
    assert np.allclose(across[1], inside[1], atol=1e-10)
    assert across[1][0, 2] == pytest.approx(0.2)


def test_collision_across_periodic_face_matches_interior(make_world, unit_sphere, box):
    periodic = make_world(box=box)
    periodic.add_clumps([
        ClumpInstance(unit_sphere, (9.5, 5.0, 5.0), (1.0, 0.0, 0.0)),
        ClumpInstance(unit_sphere, (1.0, 5.0, 5.0), (-1.0, 0.0, 0.0)),
    ])
    interior = make_world()
    interior.add_clumps([
        ClumpInstance(unit_sphere, (4.5, 5.0, 5.0), (1.0, 0.0, 0.0)),
        ClumpInstance(unit_sphere, (6.0, 5.0, 5.0), (-1.0, 0.0, 0.0)),
    ])
    for _ in range(5000):
        periodic.step()
        interior.step()
    a, b = periodic.clumps
    c, d = interior.clumps
    assert periodic.collision_count == interior.collision_count == 1
    assert np.allclose(min_image(a.position - b.position, box), c.position - d.position, atol=1e-8)
    assert np.allclose(a.velocity, c.velocity, atol=1e-8)
    assert np.allclose(b.velocity, d.velocity, atol=1e-8)
    assert np.all(box.contains(periodic.state.position))


@pytest.mark.slow
def test_periodic_run_matches_tiled_twin(make_world):
    ''' 3x3x3 unwrapped copies in open space reproduce the periodic central cell until edge effects arrive '''
    length = 8.0
    box = PeriodicBox((0.0, 0.0, 0.0), (length,) * 3)
    dumbbell = shapes.rod(2, 0.5)
    # the pair meets across the x face, each clump spinning
    start = [
        ((7.2, 4.0, 4.0), (1.0, 0.0, 0.0), axis_rotation(1, 1.2), (0.0, 0.0, 1.0)),
        ((1.0, 4.3, 4.1), (-1.0, 0.0, 0.0), axis_rotation(0, 0.9), (0.5, 0.0, 0.0)),
    ]
    periodic = make_world(box=box)
    periodic.add_clumps([ClumpInstance(dumbbell, *s) for s in start])
    twin = make_world()
    shifts = length * np.array([[i, j, k] for i in (-1, 0, 1) for j in (-1, 0, 1) for k in (-1, 0, 1)])
    copies = {}
    for shift in shifts:
        added = twin.add_clumps([ClumpInstance(dumbbell, np.add(p, shift), v, q, w) for p, v, q, w in start])
        if not shift.any():
            copies = added
    for _ in range(5000):
        periodic.step()
        twin.step()
    assert periodic.collision_count >= 1
    for wrapped, unwrapped in zip(periodic.clumps, copies):
        assert np.allclose(min_image(wrapped.position - unwrapped.position, box), 0.0, atol=1e-8)
        assert np.allclose(wrapped.velocity, unwrapped.velocity, atol=1e-8)
        assert np.allclose(wrapped.orientation, unwrapped.orientation, atol=1e-8)
        assert np.allclose(wrapped.omega, unwrapped.omega, atol=1e-8)
