import logging
from pathlib import Path
from typing import Union

from ClumpDEM_CLI.errors import ParseError


class BaseParser:
    '''
    common plumbing of the file parsers: where the content came from,
    a logger, and line-numbered parse errors
    '''
    def __init__(self, path: Union[str, Path, None] = None):
        self.logger = logging.getLogger('clumpdem.extractor')
        self.path = None if path is None else str(path)
        self.suffix = '.SUFFIX'

    def error(self, message: str, line: int = None) -> ParseError:
        return ParseError(message, self.path, line)

    def data_lines(self, content: str):
        ''' (line number, stripped text) of every non-blank, non-comment line '''
        for number, raw in enumerate(content.splitlines(), start=1):
            text = raw.strip()
            if text == '' or text.startswith('#'):
                continue
            yield number, text

    def parse_floats(self, text: str, count: int, line: int):
        fields = [f.strip() for f in text.split(',')]
        if len(fields) != count:
            raise self.error(f'expected {count} comma-separated values, got {len(fields)}: {text!r}', line)
        try:
            return [float(f) for f in fields]
        except ValueError:
            raise self.error(f'not a number in {text!r}', line) from None
