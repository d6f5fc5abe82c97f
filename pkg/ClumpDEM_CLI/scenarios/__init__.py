from ClumpDEM_CLI.scenarios.bounce import Bounce, run_single_bounce
from ClumpDEM_CLI.scenarios.domino import Domino, run_domino
from ClumpDEM_CLI.scenarios.drum import Drum, run_drum
from ClumpDEM_CLI.scenarios.gridbench import GridBench, bench_grid
from ClumpDEM_CLI.scenarios.tbar import TBar, run_tbar
from ClumpDEM_CLI.scenarios.tgas import TGas, run_tgas

SCENARIOS = {
    'bounce': Bounce,
    'tbar': TBar,
    'tgas': TGas,
    'domino': Domino,
    'drum': Drum,
    'bench': GridBench,
}
