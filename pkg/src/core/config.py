import os
import json
from dataclasses import dataclass, field, asdict, replace
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from .errors import UsageError

load_dotenv()

OUTPUT_DIR = os.getenv('HCS_OUTPUT_DIR', './output')

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
DEFAULT_CONFIG_PATH = os.path.join(PROJECT_ROOT, 'config', 'defaults.json')

DEFAULT_SEED = 7
DEFAULT_TOL = 1e-10
DEFAULT_N = 64
MAX_GRID = 512

ABERTH_MAX_ITER = 200
ABERTH_TOL = 1e-10

CYCLIC_ATTEMPTS = 3
PULLBACK_CONFIGURATIONS = 3
CHOW_RETRIES = 5
CHOW_GAP = 1e-8
CHOW_CLUSTER_TOL = 1e-6

NEWTON_MAX_ITER = 60
NEWTON_STAGNATION = 20
NEWTON_TOL = 1e-8
ARMIJO_FACTOR = 0.5
ARMIJO_FLOOR = 2.0 ** -10

GAUGE_DET_THRESHOLD = 1e-8
GAUGE_TOL = 1e-9
SHEET_SEPARATION = 1e-6
JET_EPSILONS = (1e-3, 1e-4)
LAMBDA_RADII = (1e2, 1e3, 1e4)

SUITE_ORDERS = {
    'poisson-table': [2, 3, 4, 5],
    'haiman': [2, 3, 4],
    'variation': [2, 3, 4, 5],
    'condition-C': [2, 3, 4],
    'spectral-lagrangian': [2, 3, 4],
    'conjugation': [2, 3, 4, 5],
    'gl2': [2, 3, 4],
    'curvature': [2, 3],
    'lie': [1, 2, 3, 4],
    'dn-relations': [3, 4],
}

SUITE_RANDOM_CASES = {
    'conjugation': 100,
    'gl2': 50,
    'lie': 50,
}

SYSTEMS = ['cosh-gordon', 'titeica', 'toda']
EMIT_KINDS = ['field-csv', 'sheet-csv', 'lambda-profile', 'radial-profile']


@dataclass(frozen=True)
class RunConfig:
    command: str = 'verify'
    n: Optional[int] = None
    inputs: Dict[str, str] = field(default_factory=dict)
    tol: float = DEFAULT_TOL
    N: int = DEFAULT_N
    seed: int = DEFAULT_SEED
    output_dir: str = OUTPUT_DIR
    max_grid: int = MAX_GRID

    def validate(self) -> 'RunConfig':
        if not self.tol > 0:
            raise UsageError(f"tolerance must be positive, got {self.tol}")
        if self.N < 4:
            raise UsageError(f"grid size N must be at least 4, got {self.N}")
        if self.N > self.max_grid:
            raise UsageError(f"grid size N={self.N} exceeds the configured maximum {self.max_grid}")
        if self.n is not None and self.n < 1:
            raise UsageError(f"order n must be positive, got {self.n}")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _read_config_file(path: Optional[str]) -> Dict[str, Any]:
    if path is None:
        path = DEFAULT_CONFIG_PATH
        if not os.path.exists(path):
            return {}
    if not os.path.exists(path):
        raise UsageError(f"config file not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise UsageError(f"config file {path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise UsageError(f"config file {path} must hold a JSON object")
    return data


def load_run_config(path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """Merge built-in defaults, the static JSON file and flag overrides."""
    config = RunConfig()
    known = set(config.to_dict())

    file_values = {k: v for k, v in _read_config_file(path).items() if k in known}
    flag_values = {k: v for k, v in (overrides or {}).items() if k in known and v is not None}

    config = replace(config, **file_values)
    config = replace(config, **flag_values)
    return config.validate()
