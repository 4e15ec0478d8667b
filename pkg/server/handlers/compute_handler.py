import logging

from core import HCSError, load_run_config
from core import commands
from server.utils.response import success, error_response

logger = logging.getLogger(__name__)

CONFIG_KEYS = ('seed', 'tol', 'N', 'n')


def request_config(command, data):
    overrides = {key: data.get(key) for key in CONFIG_KEYS}
    overrides['command'] = command
    return load_run_config(None, overrides)


def run_command(command, data):
    """Run one verb on a JSON body; config keys are read from the same body."""
    data = data or {}
    try:
        config = request_config(command, data)
        params = {k: v for k, v in data.items() if k not in CONFIG_KEYS}
        if command == 'solve':
            # file outputs of a request stay under the configured output directory
            params.pop('prefix', None)
            params.pop('boundary', None)
        runner = getattr(commands, f'run_{command}')
        logger.info("Processing %s request", command)
        return success(runner(config, params))
    except HCSError as e:
        logger.warning("%s request failed: %s", command, e.message)
        return error_response(e)
