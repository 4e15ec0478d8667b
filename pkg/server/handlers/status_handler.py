from core import DEFAULT_N, DEFAULT_SEED, DEFAULT_TOL, MAX_GRID
from core.config import EMIT_KINDS, SUITE_ORDERS, SYSTEMS
from core.verify import suite_names
from server.utils.response import success


def get_status(system_status):
    return success({
        'ready': system_status['initialized'],
        'error': system_status['error'],
        'defaults': {'seed': DEFAULT_SEED, 'tol': DEFAULT_TOL, 'N': DEFAULT_N, 'max_grid': MAX_GRID},
        'systems': SYSTEMS,
        'emit_kinds': EMIT_KINDS
    })


def get_suites():
    return success([
        {
            'name': name,
            'orders': SUITE_ORDERS.get(name)
        }
        for name in suite_names()
    ])
