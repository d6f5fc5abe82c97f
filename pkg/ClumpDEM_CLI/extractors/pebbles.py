from typing import List

from ClumpDEM_CLI.errors import ValidationError
from ClumpDEM_CLI.extractors.base import BaseParser
from ClumpDEM_CLI.models.template import PebbleSpec

HEADER = 'x,y,z,r'


class PebbleParser(BaseParser):
    '''
    plain CSV, one pebble per line as x,y,z,r
    lines starting with # are comments; an optional x,y,z,r header is skipped
    '''
    def __init__(self, path=None):
        super().__init__(path)
        self.suffix = '.csv'

    def parse(self, content: str) -> List[PebbleSpec]:
        return self.parse_lines(self.data_lines(content))

    def parse_lines(self, lines) -> List[PebbleSpec]:
        pebbles = []
        for number, text in lines:
            if text.replace(' ', '').lower() == HEADER:
                continue
            x, y, z, r = self.parse_floats(text, 4, number)
            if not r > 0:
                raise ValidationError(f'{self.path or "pebbles"}:{number}: radius must be positive, got {r}')
            pebbles.append(PebbleSpec((x, y, z), r))
        self.logger.debug(f'{len(pebbles)} pebbles read from {self.path}')
        return pebbles


def format_pebble_rows(pebbles: List[PebbleSpec]) -> List[str]:
    return [HEADER] + [f'{float(p.center[0])!r},{float(p.center[1])!r},{float(p.center[2])!r},{float(p.radius)!r}' for p in pebbles]
