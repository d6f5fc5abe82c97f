import sys

import numpy as np
import pytest

from ClumpDEM_CLI import cli
from ClumpDEM_CLI.extractor import load_template
from ClumpDEM_CLI.version import __version__


@pytest.fixture
def clumpdem(monkeypatch, tmp_path):
    ''' run the command line in tmp_path with the given arguments '''
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv('CLUMPDEM_THREADS', raising=False)

    def invoke(*argv):
        monkeypatch.setattr(sys, 'argv', ['clumpdem', '--quiet', *argv])
        cli.main()
    return invoke


@pytest.fixture
def two_sphere_csv(tmp_path):
    path = tmp_path / 'pair.csv'
    path.write_text('x,y,z,r\n-1,0,0,1\n1,0,0,1\n')
    return path


def test_version(clumpdem, capsys):
    with pytest.raises(SystemExit) as info:
        clumpdem('-v')
    assert not info.value.code
    assert __version__ in capsys.readouterr().out


def test_no_command(clumpdem):
    with pytest.raises(SystemExit) as info:
        clumpdem()
    assert info.value.code == 'No command given'


@pytest.mark.parametrize('method', ['pebbles', 'voxels', 'mesh'])
def test_forge_writes_template(clumpdem, two_sphere_csv, tmp_path, capsys, method):
    clumpdem('forge', '--pebbles', str(two_sphere_csv), '--method', method, '--voxels', '256', '--out', 'pair.clump')
    template = load_template(tmp_path / 'pair.clump')
    assert template.name == 'pair'
    assert template.principal[0] == pytest.approx(56.0 * np.pi / 15.0, rel=0.02)
    assert template.principal[2] == pytest.approx(16.0 * np.pi / 15.0, rel=0.02)
    assert 'template written to pair.clump' in capsys.readouterr().out


def test_forge_bench(clumpdem, tmp_path, capsys):
    clumpdem('forge', 'bench', '--max-n', '16', '--out', 'bench.csv')
    lines = (tmp_path / 'bench.csv').read_text().splitlines()
    assert lines[0] == 'method,N,dM,dI1,dI3'
    assert len(lines) == 1 + 4
    assert 'mesh: log-log slope' in capsys.readouterr().out


@pytest.mark.parametrize('argv', [
    ('forge',),
    ('forge', '--pebbles', 'missing.csv'),
    ('forge', '--pebbles', 'pair.csv', '--density', '0'),
    ('forge', '--pebbles', 'pair.csv', '--voxels', '1'),
    ('forge', 'shake', '--pebbles', 'pair.csv'),
    ('forge', 'bench', '--max-n', '4'),
    ('run', '--config', 'missing.ini'),
])
def test_bad_options_exit_with_status_1(clumpdem, two_sphere_csv, capsys, argv):
    with pytest.raises(SystemExit) as info:
        clumpdem(*argv)
    assert info.value.code == 1
    assert capsys.readouterr().err.startswith('Error: ')


def test_run_writes_outputs(clumpdem, tmp_path, capsys):
    (tmp_path / 'spin.ini').write_text('[scenario]\nname = tbar\nduration = 0.2\n[tbar]\nspin_axis = 1\n')
    clumpdem('run', '--config', 'spin.ini', '--seed', '9', '--out', 'results')
    summary = (tmp_path / 'results' / 'tbar_summary.csv').read_text()
    assert 'seed,9' in summary
    assert (tmp_path / 'results' / 'tbar_energy.csv').is_file()
    assert 'flips = 0' in capsys.readouterr().out


def test_run_reports_config_errors(clumpdem, tmp_path, capsys):
    (tmp_path / 'bad.ini').write_text('[contact]\nkn = soft\n')
    with pytest.raises(SystemExit) as info:
        clumpdem('run', '--config', 'bad.ini')
    assert info.value.code == 1
    assert 'contact.kn' in capsys.readouterr().err


def test_threads_env_is_validated(clumpdem, tmp_path, monkeypatch):
    (tmp_path / 'spin.ini').write_text('[scenario]\nname = tbar\nduration = 0.01\n')
    monkeypatch.setenv('CLUMPDEM_THREADS', 'zero')
    with pytest.raises(SystemExit) as info:
        clumpdem('run', '--config', 'spin.ini')
    assert info.value.code == 1


def test_bench_command(clumpdem, tmp_path):
    (tmp_path / 'bench.ini').write_text('[scenario]\nname = bench\n[bench]\nscene = spheres\nclumps = 8\nsteps = 4\n')
    clumpdem('bench', '--config', 'bench.ini', '--out', 'results')
    summary = (tmp_path / 'results' / 'bench_summary.csv').read_text()
    assert 'identical_contacts,True' in summary
