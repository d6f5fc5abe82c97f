import numpy as np
import pytest

from ClumpDEM_CLI.config import make_config
from ClumpDEM_CLI.errors import ConfigError, ValidationError
from ClumpDEM_CLI.extractors.stl import to_binary
from ClumpDEM_CLI.forge.tessellate import cube
from ClumpDEM_CLI.scenarios import (
    SCENARIOS,
    Drum,
    bench_grid,
    run_domino,
    run_drum,
    run_single_bounce,
    run_tbar,
    run_tgas,
)
from ClumpDEM_CLI.scenarios.domino import fit_slope, steady_window
from ClumpDEM_CLI.scenarios.drum import count_events
from ClumpDEM_CLI.scenarios.gridbench import lattice
from ClumpDEM_CLI.scenarios.tgas import random_velocities
from ClumpDEM_CLI.util.writer import read_energy


def test_registry_covers_every_scenario():
    assert set(SCENARIOS) == {'bounce', 'tbar', 'tgas', 'domino', 'drum', 'bench'}


def test_resting_rod_has_no_energy(tmp_path):
    cfg = make_config('bounce', {'scenario': {'duration': 1.0}, 'bounce': {'speed': 0.0}})
    report = run_single_bounce(cfg, tmp_path)
    assert report['mean_E_trans'] == 0.0
    assert report['mean_E_rot'] == 0.0
    assert report['wall_collisions'] == 0
    rows = read_energy(report.energy_csv)
    assert len(rows) >= 10
    assert all(row['E_trans'] + row['E_rot'] + row['E_elastic'] == 0.0 for row in rows)


def test_bounce_box_must_fit_the_rod(tmp_path):
    cfg = make_config('bounce', {'box': {'min': (-1.5, -1.5, -1.0), 'max': (1.5, 1.5, 1.0)}})
    with pytest.raises(ValidationError):
        run_single_bounce(cfg, tmp_path)


def test_bounce_stops_at_the_collision_target(tmp_path):
    cfg = make_config('bounce', {'scenario': {'duration': 100.0}, 'bounce': {'collisions': 3}})
    report = run_single_bounce(cfg, tmp_path)
    assert report['wall_collisions'] >= 3
    assert report['time'] < 100.0


@pytest.mark.parametrize('axis', [1, 3])
def test_tbar_stable_axes_do_not_flip(tmp_path, axis):
    cfg = make_config('tbar', {'scenario': {'duration': 20.0}, 'tbar': {'spin_axis': axis}})
    report = run_tbar(cfg, tmp_path)
    assert report['flips'] == 0
    assert report['E_rot_drift'] <= 1e-3


def test_tbar_intermediate_axis_flips(tmp_path):
    cfg = make_config('tbar', {'scenario': {'duration': 20.0}, 'tbar': {'spin_axis': 2}})
    report = run_tbar(cfg, tmp_path)
    principal = [float(v) for v in report['principal'].split(';')]
    assert principal[0] > principal[1] > principal[2]
    assert report['flips'] >= 2
    assert report['E_rot_drift'] <= 1e-3
    assert report['L_drift'] <= 1e-3


@pytest.mark.slow
def test_tbar_flip_count_survives_halving_dt(tmp_path):
    base = make_config('tbar', {'scenario': {'duration': 100.0}})
    coarse = run_tbar(base, tmp_path / 'coarse')
    fine = run_tbar(base.with_values(integrator={'dt': 5.0e-4}), tmp_path / 'fine')
    assert coarse['flips'] >= 5
    assert abs(coarse['flips'] - fine['flips']) <= 1


@pytest.mark.slow
def test_tbar_rotational_energy_holds_over_eight_flip_cycles(tmp_path):
    cfg = make_config('tbar', {'scenario': {'duration': 200.0}, 'tbar': {'spin_axis': 2}})
    report = run_tbar(cfg, tmp_path)
    # one cycle is a flip and the flip back
    assert report['flips'] >= 16
    assert report['E_rot_drift'] <= 1e-3


def test_runs_are_reproducible(tmp_path):
    cfg = make_config('tgas', {'scenario': {'duration': 0.5, 'seed': 5}, 'tgas': {'count': 6}})
    first = run_tgas(cfg, tmp_path / 'a')
    second = run_tgas(cfg, tmp_path / 'b')
    assert first.energy_csv.read_bytes() == second.energy_csv.read_bytes()
    assert first.summary_csv.read_bytes() == second.summary_csv.read_bytes()


def test_random_velocities(rng):
    v = random_velocities(rng, 50, 2.0)
    assert np.allclose(v.sum(axis=0), 0.0)
    assert np.sqrt(np.mean(np.sum(v * v, axis=1))) == pytest.approx(2.0)


def test_small_gas_conserves_momentum_and_energy(tmp_path):
    cfg = make_config('tgas', {
        'scenario': {'duration': 5.0, 'snapshot_interval': 2.5},
        'box': {'min': (0.0, 0.0, 0.0), 'max': (9.0, 9.0, 9.0)},
        'tgas': {'count': 12, 'speed': 2.0},
    })
    report = run_tgas(cfg, tmp_path)
    assert report['clumps'] == 12
    assert report['collisions'] > 0
    assert report['momentum_drift'] < 1e-10
    assert report['energy_drift'] < 1e-3
    assert len(report.snapshots) == 2
    assert report.snapshots[0].read_text().splitlines()[0] == 'id,clump,x,y,z,r'


def test_tgas_needs_a_periodic_box(tmp_path):
    cfg = make_config('tgas', {'box': {'periodic': (True, True, False)}})
    with pytest.raises(ValidationError):
        run_tgas(cfg, tmp_path)


def test_steady_window():
    times = np.array([0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, np.nan])
    assert steady_window(times) == (0.3, 0.6)
    assert np.isnan(steady_window(np.array([0.1, np.nan, np.nan, np.nan]))[0])


def test_fit_slope():
    t = np.linspace(0.0, 1.0, 11)
    slope, r_squared = fit_slope(t, 3.0 - 2.0 * t, (0.2, 0.8))
    assert slope == pytest.approx(-2.0)
    assert r_squared == pytest.approx(1.0)
    assert np.isnan(fit_slope(t, t, (float('nan'), float('nan')))[0])


def test_dominoes_stand_without_a_push(tmp_path):
    cfg = make_config('domino', {'scenario': {'duration': 0.5}, 'domino': {'count': 4, 'cue_speed': 0.0}})
    report = run_domino(cfg, tmp_path)
    assert report['toppled'] == 0
    assert np.isnan(report['slope'])
    assert report['E_grav_end'] == pytest.approx(report['E_grav_start'], rel=1e-2)


def test_count_events():
    t = np.linspace(0.0, 10.0, 1000)
    assert count_events(np.sin(2.0 * np.pi * t / 2.5)) == 4
    assert count_events(np.ones(100)) == 0
    assert count_events(np.arange(3.0)) == 0


def write_grain(path):
    path.write_text('x,y,z,r\n-0.3,0,0,0.3\n0.3,0,0,0.3\n')
    return path


def test_drum_tumbles_clumps(tmp_path):
    grain = write_grain(tmp_path / 'grain.csv')
    cfg = make_config('drum', {
        'scenario': {'duration': 1.0, 'templates': (grain.as_posix(),)},
        'drum': {'count': 6, 'radius': 2.0, 'length': 1.5, 'settle_time': 0.5, 'omega': 1.0},
    })
    report = run_drum(cfg, tmp_path / 'out')
    assert report['clumps'] == 6
    assert report['template'] == 'drum'
    assert report['revolutions'] == pytest.approx(0.5 / (2.0 * np.pi), rel=1e-2)
    assert report['events'] >= 0
    assert report['E_grav_min'] <= report['E_grav_max']


def test_drum_rejects_missing_and_mesh_templates(tmp_path):
    with pytest.raises(ConfigError):
        Drum(make_config('drum'), tmp_path).build()
    mesh = tmp_path / 'cube.stl'
    mesh.write_bytes(to_binary(cube().triangles()))
    cfg = make_config('drum', {'scenario': {'templates': (mesh.as_posix(),)}})
    with pytest.raises(ConfigError):
        Drum(cfg, tmp_path).build()


def test_lattice():
    points = lattice(10, 2.0)
    assert points.shape == (10, 3)
    assert points.max() == 4.0
    assert len(np.unique(points, axis=0)) == 10


def test_small_bench_modes_agree(tmp_path):
    cfg = make_config('bench', {'bench': {'scene': 'spheres', 'clumps': 27, 'steps': 10, 'sample_every': 5}})
    report = bench_grid(cfg, tmp_path)
    assert report['pebbles'] == 27
    assert report['contacts_sampled'] > 0
    assert report['identical_contacts'] is True
    assert report['identical_state'] is True


def test_raspberry_bench_modes_agree(tmp_path):
    cfg = make_config('bench', {'bench': {'clumps': 8, 'satellites': 30, 'ratio': 10.0, 'steps': 10}})
    report = bench_grid(cfg, tmp_path)
    assert report['pebbles'] == 8 * 31
    assert report['radius_ratio'] == pytest.approx(10.0)
    assert report['identical_contacts'] is True
    assert report['identical_state'] is True


@pytest.mark.slow
def test_bounce_1d_equipartition(tmp_path):
    report = run_single_bounce(make_config('bounce'), tmp_path)
    assert report['wall_collisions'] >= 2000
    assert 0.85 <= report['ratio'] <= 1.15


@pytest.mark.slow
def test_bounce_2d_equipartition(tmp_path):
    report = run_single_bounce(make_config('bounce', {'bounce': {'mode': '2d'}}), tmp_path)
    assert 0.40 <= report['ratio'] <= 0.60


@pytest.mark.slow
def test_tgas_equipartition(tmp_path):
    report = run_tgas(make_config('tgas'), tmp_path)
    assert 0.9 <= report['ratio'] <= 1.1


@pytest.mark.slow
def test_domino_wave_speed_is_independent_of_the_push(tmp_path):
    slopes = []
    for speed in (2.0, 4.0):
        report = run_domino(make_config('domino', {'domino': {'cue_speed': speed}}), tmp_path / str(speed))
        assert report['toppled'] >= 18
        assert report['r_squared'] > 0.99
        slopes.append(report['slope'])
    assert slopes[1] == pytest.approx(slopes[0], rel=0.1)


@pytest.mark.slow
def test_bench_grid_is_faster_with_levels(tmp_path):
    report = bench_grid(make_config('bench'), tmp_path)
    assert report['identical_contacts'] is True
    assert report['contacts_sampled'] > 0
    assert report['speedup'] > 1.0
