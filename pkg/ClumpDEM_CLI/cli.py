import sys
import click
from pathlib import Path
from argparse import ArgumentParser

from ClumpDEM_CLI import script_name
from ClumpDEM_CLI.cmdargs import CmdArgs
from ClumpDEM_CLI.config import load_config, threads_from_env
from ClumpDEM_CLI.errors import ClumpDEMError, ConfigError, ValidationError
from ClumpDEM_CLI.extractor import load_pebbles, load_stl
from ClumpDEM_CLI.extractors.template import write_template
from ClumpDEM_CLI.forge.align import align_principal
from ClumpDEM_CLI.forge.bench import convergence_benchmark, convergence_slope, write_bench
from ClumpDEM_CLI.forge.inertia import inertia_from_mesh, inertia_from_pebbles, inertia_from_voxels
from ClumpDEM_CLI.forge.tessellate import pebbles_mesh
from ClumpDEM_CLI.forge.voxelize import DEFAULT_RESOLUTION, voxelize
from ClumpDEM_CLI.scenarios import SCENARIOS, bench_grid
from ClumpDEM_CLI.util.logger import setup_logger
from ClumpDEM_CLI.version import __version__

METHODS = ('pebbles', 'voxels', 'mesh')
DEFAULT_SEGMENTS = 64


def command_handler(args: CmdArgs):
    '''
    check and normalize the parsed options before anything runs
    '''
    setup_logger(args.log_level, 'logs', console=not args.quiet)
    args.threads = threads_from_env()
    if args.command == 'forge':
        if args.action not in (None, 'bench'):
            raise ConfigError(f'unknown forge action {args.action!r}')
        if args.action == 'bench':
            if args.max_n < 8:
                raise ValidationError(f'--max-n must be at least 8, got {args.max_n}')
        else:
            if args.pebbles is None:
                raise ConfigError('forge needs --pebbles FILE')
            for option in ('pebbles', 'stl'):
                value = getattr(args, option)
                if value is not None and not Path(value).is_file():
                    raise ConfigError(f'--{option} {value} does not exist')
            if args.density <= 0:
                raise ValidationError(f'--density must be positive, got {args.density}')
            if args.voxels < 2:
                raise ValidationError(f'--voxels must be at least 2, got {args.voxels}')
        if args.out is None:
            args.out = 'bench.csv' if args.action == 'bench' else 'clump.template'
        Path(args.out).absolute().parent.mkdir(parents=True, exist_ok=True)
    elif args.command in ('run', 'bench'):
        if args.config is None or not Path(args.config).is_file():
            raise ConfigError(f'--config {args.config} does not exist')
        if args.seed is not None and args.seed < 0:
            raise ValidationError(f'--seed must not be negative, got {args.seed}')
        args.out = args.out or 'output'
        Path(args.out).mkdir(parents=True, exist_ok=True)


def forge(args: CmdArgs):
    if args.action == 'bench':
        rows = convergence_benchmark(args.max_n)
        write_bench(rows, args.out)
        for method in ('mesh', 'voxels'):
            slope = convergence_slope(rows, method)
            click.secho(f'{method}: log-log slope of dM vs N = {slope:.3f}')
        click.secho(f'benchmark written to {args.out}', fg='green')
        return
    pebbles = load_pebbles(args.pebbles)
    if args.method == 'pebbles':
        props = inertia_from_pebbles(pebbles, args.density)
    elif args.method == 'voxels':
        props = inertia_from_voxels(voxelize(pebbles, args.voxels), args.density)
    else:
        mesh = load_stl(args.stl) if args.stl else pebbles_mesh(pebbles, DEFAULT_SEGMENTS)
        props = inertia_from_mesh(mesh, args.density)
    template = align_principal(props, pebbles, args.name or Path(args.pebbles).stem)
    write_template(template, args.out)
    click.secho(f'{template.name}: {template.pebble_count} pebbles, mass {template.mass:.6g} ({props.method})')
    click.secho(f'principal moments: {", ".join(f"{v:.6g}" for v in template.principal)}')
    click.secho('alignment rotation (columns are the principal axes):')
    for row in template.rotation:
        click.secho('    ' + '  '.join(f'{v:+.6f}' for v in row))
    click.secho(f'template written to {args.out}', fg='green')


def run(args: CmdArgs):
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = cfg.with_values(scenario={'seed': args.seed})
    if args.command == 'bench':
        report = bench_grid(cfg, args.out, not args.quiet, args.threads)
    else:
        scenario = SCENARIOS[cfg.name](cfg, args.out, not args.quiet, args.threads)
        report = scenario.run()
    click.secho(f'{report.name}: {report.steps} steps in {report.wall_time:.2f} s')
    for key, value in report.summary.items():
        click.secho(f'    {key} = {value}')
    if report.energy_csv is not None:
        click.secho(f'energies written to {report.energy_csv}', fg='green')
    click.secho(f'summary written to {report.summary_csv}', fg='green')


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog='clumpdem',
        usage='clumpdem [OPTION]... {forge,run,bench} ...',
        description='DEM engine for rigid clumps of spherical pebbles',
        add_help=False,
    )
    parser.add_argument('-v', '--version', action='store_true', help='Print version and exit')
    parser.add_argument('-h', '--help', action='store_true', help='Print help message and exit')
    parser.add_argument('--quiet', action='store_true', help='No progress display and no console log')
    parser.add_argument('--log-level', default='INFO', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], help='Set log level')
    commands = parser.add_subparsers(dest='command')

    p = commands.add_parser('forge', help='Compute the mass properties of a clump and write its template')
    p.add_argument('action', nargs='?', default=None, help='bench: run the inertia convergence benchmark')
    p.add_argument('--pebbles', default=None, help='Pebble CSV file (x,y,z,r per line)')
    p.add_argument('--stl', default=None, help='Surface mesh for --method mesh, default tessellates the pebbles')
    p.add_argument('--density', type=float, default=1.0, help='Mass density')
    p.add_argument('--method', default='pebbles', choices=METHODS, help='Mass summation method')
    p.add_argument('--voxels', type=int, default=DEFAULT_RESOLUTION, help='Voxels along the bounding cube edge')
    p.add_argument('--max-n', type=int, default=128, help='Largest resolution of the benchmark')
    p.add_argument('--name', default='', help='Template name, default is the pebble file stem')
    p.add_argument('--out', default=None, help='Output template (or benchmark CSV) file')

    for name, text in (('run', 'Run the scenario of a config file'), ('bench', 'Run the grid-level benchmark')):
        p = commands.add_parser(name, help=text)
        p.add_argument('--config', default=None, help='Scenario INI file')
        p.add_argument('--seed', type=int, default=None, help='Override [scenario] seed')
        p.add_argument('--out', default=None, help='Output directory, default output')
    return parser


def main():
    def print_version():
        click.secho(f'{script_name} version {__version__}, a DEM engine for rigid clumps of spheres.')

    parser = build_parser()
    args = parser.parse_args() # type: CmdArgs
    if args.help:
        print_version()
        parser.print_help()
        sys.exit()
    if args.version:
        print_version()
        sys.exit()
    if args.command is None:
        parser.print_usage()
        sys.exit('No command given')
    try:
        command_handler(args)
        if args.command == 'forge':
            forge(args)
        else:
            run(args)
    except ClumpDEMError as e:
        click.secho(f'Error: {e}', fg='red', err=True)
        sys.exit(1)


if __name__ == '__main__':
    main()
