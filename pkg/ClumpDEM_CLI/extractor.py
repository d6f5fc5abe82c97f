import logging
from pathlib import Path
from typing import List, Union

from ClumpDEM_CLI.errors import ParseError
from ClumpDEM_CLI.extractors.pebbles import PebbleParser
from ClumpDEM_CLI.extractors.stl import STLParser, is_ascii_stl, is_binary_stl
from ClumpDEM_CLI.extractors.template import TemplateParser
from ClumpDEM_CLI.models.mesh import TriMesh
from ClumpDEM_CLI.models.template import ClumpTemplate, PebbleSpec


class Extractor:
    '''
    reads geometry files: pebble lists, STL surfaces and clump templates
    load() sniffs the content and dispatches to the matching parser
    '''
    def __init__(self):
        self.logger = logging.getLogger('clumpdem.extractor')

    def read(self, path: Union[str, Path]) -> bytes:
        path = Path(path)
        if not path.is_file():
            raise ParseError('no such file', str(path))
        return path.read_bytes()

    def load(self, path: Union[str, Path]) -> Union[List[PebbleSpec], TriMesh, ClumpTemplate]:
        data = self.read(path)
        if is_binary_stl(data) or is_ascii_stl(data):
            return STLParser(path).parse(data)
        content = self.decode(path, data)
        for _, text in PebbleParser(path).data_lines(content):
            if text.lower() == '[properties]':
                return TemplateParser(path).parse(content)
            break
        return PebbleParser(path).parse(content)

    def decode(self, path, data: bytes) -> str:
        try:
            return data.decode('utf-8')
        except UnicodeDecodeError:
            raise ParseError('file is neither STL nor UTF-8 text', str(path)) from None

    def load_pebbles(self, path) -> List[PebbleSpec]:
        return PebbleParser(path).parse(self.decode(path, self.read(path)))

    def load_stl(self, path) -> TriMesh:
        return STLParser(path).parse(self.read(path))

    def load_template(self, path) -> ClumpTemplate:
        return TemplateParser(path).parse(self.decode(path, self.read(path)))


def load_pebbles(path) -> List[PebbleSpec]:
    return Extractor().load_pebbles(path)


def load_stl(path) -> TriMesh:
    return Extractor().load_stl(path)


def load_template(path) -> ClumpTemplate:
    return Extractor().load_template(path)
