from typing import Optional


class ClumpDEMError(Exception):
    '''
    Root of every error the engine raises on purpose.
    The command line catches this type, prints it and exits with status 1.
    '''


class InvalidInputError(ClumpDEMError):
    ''' numeric precondition violated: non-finite, non-symmetric, non-orthonormal or singular input '''


class ValidationError(ClumpDEMError):
    ''' a domain object breaks its invariants (radius <= 0, empty voxel mask, zero mesh volume ...) '''


class GeometryError(ClumpDEMError):
    ''' contact geometry is undefined, e.g. coincident pebble centers '''


class ParseError(ClumpDEMError):

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        where = ''
        if path is not None:
            where = f'{path}'
            if line is not None:
                where += f':{line}'
            where += ': '
        super().__init__(f'{where}{message}')


class ConfigError(ClumpDEMError):

    def __init__(self, message: str, key: Optional[str] = None):
        self.key = key
        if key is not None:
            message = f'[{key}] {message}'
        super().__init__(message)


class PlacementError(ClumpDEMError):

    def __init__(self, placed: int, requested: int, attempts: int):
        self.placed = placed
        self.requested = requested
        self.attempts = attempts
        super().__init__(
            f'placed {placed} of {requested} clumps, '
            f'gave up after {attempts} attempts for clump #{placed + 1}'
        )
