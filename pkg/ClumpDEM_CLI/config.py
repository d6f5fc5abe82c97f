'''
scenario configuration: INI sections read with configparser

every scenario starts from the shared defaults, then its own defaults,
then the file; unknown sections or keys and unparsable values are errors
'''
import configparser
import copy
import logging
import os
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union

from ClumpDEM_CLI.dynamics.integrator import recommended_dt
from ClumpDEM_CLI.errors import ConfigError
from ClumpDEM_CLI.models.box import PeriodicBox
from ClumpDEM_CLI.models.contact import ContactModel
from ClumpDEM_CLI.models.settings import IntegratorSettings
from ClumpDEM_CLI.models.wall import PlaneWall, box_walls

logger = logging.getLogger('clumpdem.config')

SCENARIO_NAMES = ('bounce', 'tbar', 'tgas', 'domino', 'drum', 'bench')
THREADS_ENV = 'CLUMPDEM_THREADS'


def _parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ('1', 'true', 'yes', 'on'):
        return True
    if value in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError(f'not a boolean: {text!r}')


def _parse_vec3(text: str) -> Tuple[float, float, float]:
    parts = [p for p in text.replace(' ', '').split(',') if p]
    if len(parts) != 3:
        raise ValueError(f'expected three comma-separated numbers, got {text!r}')
    return tuple(float(p) for p in parts)


def _parse_bool3(text: str) -> Tuple[bool, bool, bool]:
    parts = [p for p in text.replace(' ', '').split(',') if p]
    if len(parts) == 1:
        parts = parts * 3
    if len(parts) != 3:
        raise ValueError(f'expected one or three booleans, got {text!r}')
    return tuple(_parse_bool(p) for p in parts)


def _parse_paths(text: str) -> Tuple[str, ...]:
    return tuple(p.strip() for p in text.split(',') if p.strip())


def _format(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ', '.join(_format(v) for v in value)
    return str(value)


class Field:

    def __init__(self, parse: Callable[[str], object], default, check: Optional[Callable[[object], bool]] = None,
                 hint: str = ''):
        self.parse = parse
        self.default = default
        self.check = check
        self.hint = hint


POSITIVE = (lambda v: v > 0, 'must be positive')
NON_NEGATIVE = (lambda v: v >= 0, 'must not be negative')


SCHEMA = {
    'scenario': {
        'name': Field(str, 'tbar', lambda v: v in SCENARIO_NAMES, f'must be one of {", ".join(SCENARIO_NAMES)}'),
        'duration': Field(float, 10.0, *POSITIVE),
        'output_interval': Field(float, 0.01, *POSITIVE),
        'seed': Field(int, 0, *NON_NEGATIVE),
        'templates': Field(_parse_paths, ()),
        'snapshot_interval': Field(float, 0.0, *NON_NEGATIVE),
    },
    'box': {
        'min': Field(_parse_vec3, (-5.0, -5.0, -5.0)),
        'max': Field(_parse_vec3, (5.0, 5.0, 5.0)),
        'periodic': Field(_parse_bool3, (False, False, False)),
        'walls': Field(_parse_bool, False),
    },
    'contact': {
        'kn': Field(float, 1.0e4, *POSITIVE),
        'gn': Field(float, 0.0, *NON_NEGATIVE),
        'kt': Field(float, 0.0, *NON_NEGATIVE),
        'gt': Field(float, 0.0, *NON_NEGATIVE),
        'mu': Field(float, 0.0, *NON_NEGATIVE),
        'max_levels': Field(int, 3, lambda v: 1 <= v <= 16, 'must be between 1 and 16'),
        'base_cell': Field(float, 0.0, *NON_NEGATIVE),
        # negative selects the automatic margin
        'ghost_margin': Field(float, -1.0),
    },
    'integrator': {
        'dt': Field(float, 0.0, *NON_NEGATIVE),
        'omega_iterations': Field(int, 3, lambda v: 1 <= v <= 10, 'must be between 1 and 10'),
        'gravity': Field(_parse_vec3, (0.0, 0.0, 0.0)),
    },
    'bounce': {
        'mode': Field(str, '1d', lambda v: v in ('1d', '2d'), 'must be 1d or 2d'),
        'speed': Field(float, 1.0, *NON_NEGATIVE),
        'tilt': Field(float, 0.05),
        'pebbles': Field(int, 4, lambda v: v >= 2, 'must be at least 2'),
        'collisions': Field(int, 2000, *NON_NEGATIVE),
    },
    'tbar': {
        'spin_axis': Field(int, 2, lambda v: v in (1, 2, 3), 'must be 1, 2 or 3'),
        'spin_rate': Field(float, 5.0, *POSITIVE),
        'perturbation': Field(float, 1.0e-3, *NON_NEGATIVE),
    },
    'tgas': {
        'count': Field(int, 60, *POSITIVE),
        'speed': Field(float, 1.0, *NON_NEGATIVE),
    },
    'domino': {
        'count': Field(int, 20, lambda v: v >= 2, 'must be at least 2'),
        'cue_speed': Field(float, 2.0, *NON_NEGATIVE),
        'spacing': Field(float, 1.2, *POSITIVE),
        'tilt_threshold': Field(float, 20.0, lambda v: 0 < v < 90, 'must be between 0 and 90 degrees'),
    },
    'drum': {
        'count': Field(int, 27, *POSITIVE),
        'radius': Field(float, 5.0, *POSITIVE),
        'length': Field(float, 4.0, *POSITIVE),
        'omega': Field(float, 0.5, *NON_NEGATIVE),
        'settle_time': Field(float, 2.0, *NON_NEGATIVE),
    },
    'bench': {
        'clumps': Field(int, 50, *POSITIVE),
        'satellites': Field(int, 100, *POSITIVE),
        'ratio': Field(float, 30.0, *POSITIVE),
        'steps': Field(int, 20, *POSITIVE),
        'sample_every': Field(int, 5, *POSITIVE),
        'scene': Field(str, 'raspberry', lambda v: v in ('raspberry', 'spheres'), 'must be raspberry or spheres'),
    },
}

# applied over the schema defaults before the file is read
SCENARIO_DEFAULTS = {
    'bounce': {
        'scenario': {'duration': 20000.0, 'output_interval': 0.05},
        'box': {'min': (-2.2, -2.2, -1.0), 'max': (2.2, 2.2, 1.0), 'walls': True},
        'contact': {'kn': 200.0},
    },
    'tbar': {
        'scenario': {'duration': 100.0, 'output_interval': 0.01},
        'integrator': {'dt': 1.0e-3},
    },
    'tgas': {
        'scenario': {'duration': 60.0, 'output_interval': 0.05},
        'box': {'min': (0.0, 0.0, 0.0), 'max': (14.0, 14.0, 14.0), 'periodic': (True, True, True)},
        'contact': {'kn': 1.0e3},
        'integrator': {'dt': 7.0e-4},
    },
    'domino': {
        'scenario': {'duration': 12.0, 'output_interval': 0.01},
        'contact': {'kn': 1.5e3, 'gn': 5.0, 'kt': 1.5e3 * 2.0 / 7.0, 'mu': 0.3},
        'integrator': {'gravity': (0.0, 0.0, -9.81)},
    },
    'drum': {
        'scenario': {'duration': 40.0, 'output_interval': 0.02},
        'contact': {'kn': 2.0e3, 'gn': 5.0, 'kt': 2.0e3 * 2.0 / 7.0, 'mu': 0.6},
        'integrator': {'gravity': (0.0, 0.0, -9.81)},
    },
    'bench': {
        'scenario': {'duration': 1.0},
        'contact': {'kn': 1.0e4},
    },
}


class ScenarioConfig:
    '''
    parsed configuration: values[section][key] with every key present
    '''
    def __init__(self, values: Dict[str, Dict[str, object]], path: Optional[Path] = None):
        self.values = values
        self.path = path # type: Optional[Path]

    def __getitem__(self, section: str) -> Dict[str, object]:
        return self.values[section]

    def __eq__(self, other):
        return isinstance(other, ScenarioConfig) and self.values == other.values

    def __repr__(self):
        return f'ScenarioConfig({self.name!r}, path={self.path})'

    @property
    def name(self) -> str:
        return self.values['scenario']['name']

    @property
    def duration(self) -> float:
        return self.values['scenario']['duration']

    @property
    def seed(self) -> int:
        return self.values['scenario']['seed']

    @property
    def templates(self) -> Tuple[str, ...]:
        return self.values['scenario']['templates']

    @property
    def options(self) -> Dict[str, object]:
        ''' the scenario's own section '''
        return self.values.get(self.name, {})

    def contact_model(self) -> ContactModel:
        c = self.values['contact']
        return ContactModel(c['kn'], c['gn'], c['kt'], c['gt'], c['mu'])

    def ghost_margin(self) -> Optional[float]:
        margin = self.values['contact']['ghost_margin']
        return None if margin < 0 else margin

    def integrator_settings(self, min_mass: Optional[float] = None) -> IntegratorSettings:
        '''
        dt = 0 selects the recommended step for the lightest pebble, which
        then has to be given
        '''
        i = self.values['integrator']
        dt = i['dt']
        if dt == 0:
            if min_mass is None:
                raise ConfigError('dt = 0 needs a pebble mass to pick the recommended value', 'integrator.dt')
            dt = recommended_dt(self.contact_model(), min_mass)
            logger.info(f'recommended dt = {dt:.6g} s')
        return IntegratorSettings(dt, i['omega_iterations'], i['gravity'])

    def box(self) -> PeriodicBox:
        b = self.values['box']
        return PeriodicBox(b['min'], b['max'], b['periodic'])

    def walls(self) -> List[PlaneWall]:
        ''' inward planes on the non-periodic faces when [box] walls is on '''
        b = self.values['box']
        if not b['walls']:
            return []
        axes = tuple(k for k in range(3) if not b['periodic'][k])
        return box_walls(b['min'], b['max'], axes)

    def with_values(self, **sections) -> 'ScenarioConfig':
        ''' copy with some keys replaced, e.g. cfg.with_values(domino={'cue_speed': 4.0}) '''
        values = copy.deepcopy(self.values)
        for section, keys in sections.items():
            for key, value in keys.items():
                values[section][key] = _coerce(section, key, value)
        return ScenarioConfig(values, self.path)


def _coerce(section: str, key: str, value):
    if section not in SCHEMA:
        raise ConfigError(f'unknown section {section!r}', section)
    if key not in SCHEMA[section]:
        raise ConfigError(f'unknown key {key!r}', f'{section}.{key}')
    field = SCHEMA[section][key]
    if isinstance(value, str):
        try:
            value = field.parse(value)
        except ValueError as e:
            raise ConfigError(f'cannot parse {value!r}: {e}', f'{section}.{key}') from None
    elif isinstance(field.default, tuple):
        value = tuple(value)
    elif isinstance(field.default, bool):
        value = bool(value)
    elif isinstance(field.default, float):
        value = float(value)
    elif isinstance(field.default, int):
        if isinstance(value, float) and not value.is_integer():
            raise ConfigError(f'expected an integer, got {value!r}', f'{section}.{key}')
        value = int(value)
    if field.check is not None and not field.check(value):
        raise ConfigError(f'{value!r} {field.hint}', f'{section}.{key}')
    return value


def default_config(name: str = 'tbar') -> ScenarioConfig:
    if name not in SCENARIO_NAMES:
        raise ConfigError(f'unknown scenario {name!r}, expected one of {", ".join(SCENARIO_NAMES)}', 'scenario.name')
    values = {section: {key: field.default for key, field in fields.items()} for section, fields in SCHEMA.items()}
    for section, keys in SCENARIO_DEFAULTS.get(name, {}).items():
        values[section].update(keys)
    values['scenario']['name'] = name
    return ScenarioConfig(values)


def make_config(name: str, overrides: Optional[Dict[str, Dict[str, object]]] = None) -> ScenarioConfig:
    ''' programmatic config: scenario defaults plus overrides '''
    return default_config(name).with_values(**(overrides or {}))


def parse_config(content: str, path: Optional[Path] = None) -> ScenarioConfig:
    where = str(path) if path is not None else '<config>'
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(content, source=where)
    except configparser.Error as e:
        raise ConfigError(f'{where}: {e}') from None
    for section in parser.sections():
        if section not in SCHEMA:
            raise ConfigError(f'unknown section {section!r} in {where}', section)
    name = parser.get('scenario', 'name', fallback='tbar').strip()
    cfg = default_config(name)
    overrides = {}
    for section in parser.sections():
        overrides[section] = {key: text for key, text in parser.items(section)}
    cfg = cfg.with_values(**overrides)
    cfg.path = path
    missing = [k for s, keys in SCHEMA.items() for k in keys if s not in overrides or k not in overrides[s]]
    logger.debug(f'{where}: {len(missing)} keys left at their defaults')
    return cfg


def load_config(path: Union[str, Path]) -> ScenarioConfig:
    '''
    read an INI scenario file; template paths are resolved against the
    file's directory and must exist
    '''
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f'config file {path} does not exist')
    cfg = parse_config(path.read_text(encoding='utf-8'), path)
    resolved = []
    for template in cfg.templates:
        candidate = Path(template)
        if not candidate.is_absolute():
            candidate = path.parent / candidate
        if not candidate.is_file():
            raise ConfigError(f'template file {template} does not exist', 'scenario.templates')
        resolved.append(candidate.resolve().as_posix())
    cfg.values['scenario']['templates'] = tuple(resolved)
    return cfg


def dump_config(cfg: ScenarioConfig) -> str:
    ''' INI text that parses back to an equal config '''
    lines = []
    for section in SCHEMA:
        lines.append(f'[{section}]')
        for key, value in cfg.values[section].items():
            lines.append(f'{key} = {_format(value)}')
        lines.append('')
    return '\n'.join(lines)


def threads_from_env(environ=None) -> int:
    ''' worker count from CLUMPDEM_THREADS, default 1 '''
    environ = os.environ if environ is None else environ
    text = environ.get(THREADS_ENV, '').strip()
    if text == '':
        return 1
    try:
        threads = int(text)
    except ValueError:
        raise ConfigError(f'{THREADS_ENV} must be a positive integer, got {text!r}') from None
    if threads < 1:
        raise ConfigError(f'{THREADS_ENV} must be a positive integer, got {threads}')
    return threads
