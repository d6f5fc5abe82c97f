from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

from ClumpDEM_CLI.extractors.base import BaseParser
from ClumpDEM_CLI.extractors.pebbles import PebbleParser, format_pebble_rows
from ClumpDEM_CLI.forge.align import align_principal
from ClumpDEM_CLI.models.template import ClumpTemplate, MassProperties

PROPERTY_KEYS = ['name', 'density', 'mass', 'ixx', 'iyy', 'izz', 'ixy', 'ixz', 'iyz']
SECTIONS = ('properties', 'pebbles')


class TemplateParser(BaseParser):
    '''
    clump template file

        [properties]
        name = rod
        density = 1.0
        mass = ...
        ixx = ... (six unique inertia entries, body frame)
        [pebbles]
        x,y,z,r
        0.0,0.0,1.5,0.5
        ...
    '''
    def __init__(self, path=None):
        super().__init__(path)
        self.suffix = '.clump'

    def split_sections(self, content: str) -> Dict[str, List[Tuple[int, str]]]:
        sections = {} # type: Dict[str, List[Tuple[int, str]]]
        current = None
        for number, text in self.data_lines(content):
            if text.startswith('[') and text.endswith(']'):
                current = text[1:-1].strip().lower()
                if current not in SECTIONS:
                    raise self.error(f'unknown section [{current}]', number)
                if current in sections:
                    raise self.error(f'duplicate section [{current}]', number)
                sections[current] = []
                continue
            if current is None:
                raise self.error('content before the first section', number)
            sections[current].append((number, text))
        for name in SECTIONS:
            if name not in sections:
                raise self.error(f'missing section [{name}]')
        return sections

    def parse(self, content: str) -> ClumpTemplate:
        sections = self.split_sections(content)
        props = {}
        for number, text in sections['properties']:
            if '=' not in text:
                raise self.error(f'expected key = value, got {text!r}', number)
            key, value = (s.strip() for s in text.split('=', 1))
            if key not in PROPERTY_KEYS:
                raise self.error(f'unknown property {key!r}', number)
            if key == 'name':
                props[key] = value
                continue
            try:
                props[key] = float(value)
            except ValueError:
                raise self.error(f'property {key} is not a number: {value!r}', number) from None
        missing = [k for k in PROPERTY_KEYS if k not in props]
        if missing:
            raise self.error(f'missing properties: {", ".join(missing)}')
        pebbles = PebbleParser(self.path).parse_lines(sections['pebbles'])
        inertia = np.array([
            [props['ixx'], props['ixy'], props['ixz']],
            [props['ixy'], props['iyy'], props['iyz']],
            [props['ixz'], props['iyz'], props['izz']],
        ])
        off_diagonal = np.abs(inertia - np.diag(np.diag(inertia))).max()
        if off_diagonal > 1e-8 * np.trace(inertia):
            # not written in principal axes: realign about the body origin
            self.logger.warning(f'{self.path}: inertia is not diagonal, realigning template')
            loaded = MassProperties(props['mass'], np.zeros(3), inertia, props['density'], 'file')
            template = align_principal(loaded, pebbles, props['name'])
        else:
            template = ClumpTemplate(props['name'], pebbles, props['density'], props['mass'], inertia)
        self.logger.info(f'template {template.name!r} loaded from {self.path}: {template.pebble_count} pebbles')
        return template


def dump_template(template: ClumpTemplate) -> str:
    i = template.inertia_body
    values = {
        'name': template.name, 'density': template.density, 'mass': template.mass,
        'ixx': i[0, 0], 'iyy': i[1, 1], 'izz': i[2, 2], 'ixy': i[0, 1], 'ixz': i[0, 2], 'iyz': i[1, 2],
    }
    lines = ['[properties]']
    for key in PROPERTY_KEYS:
        value = values[key]
        lines.append(f'{key} = {value}' if key == 'name' else f'{key} = {float(value)!r}')
    lines.append('')
    lines.append('[pebbles]')
    lines.extend(format_pebble_rows(template.pebbles))
    return '\n'.join(lines) + '\n'


def write_template(template: ClumpTemplate, path) -> Path:
    path = Path(path)
    path.write_text(dump_template(template), encoding='utf-8')
    return path
