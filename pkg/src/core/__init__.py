from .errors import (HCSError, UsageError, NumericFailure, SolverFailure, InternalError, exit_code_for,
                     EXIT_OK, EXIT_USAGE, EXIT_NUMERIC)
from .io import atomic_write_text, dumps, write_json, read_json, write_csv, read_csv_rows
from .logging_setup import configure_logging, banner
from .config import *

__all__ = [
    'HCSError',
    'UsageError',
    'NumericFailure',
    'SolverFailure',
    'InternalError',
    'exit_code_for',
    'EXIT_OK',
    'EXIT_USAGE',
    'EXIT_NUMERIC',
    'atomic_write_text',
    'dumps',
    'write_json',
    'read_json',
    'write_csv',
    'read_csv_rows',
    'configure_logging',
    'banner',
    'RunConfig',
    'load_run_config'
]
