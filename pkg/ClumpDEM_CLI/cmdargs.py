from typing import Optional


class CmdArgs:

    def __init__(self):
        self.version = None # type: bool
        self.help = None # type: bool
        self.quiet = None # type: bool
        self.log_level = None # type: str
        self.command = None # type: Optional[str]
        # forge
        self.action = None # type: Optional[str]
        self.pebbles = None # type: str
        self.stl = None # type: Optional[str]
        self.density = None # type: float
        self.method = None # type: str
        self.voxels = None # type: int
        self.max_n = None # type: int
        self.name = None # type: str
        # run / bench
        self.config = None # type: str
        self.seed = None # type: Optional[int]
        # forge --out is a file, run/bench --out a directory
        self.out = None # type: str
        self.threads = None # type: int
