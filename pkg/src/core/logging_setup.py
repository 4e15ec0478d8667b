import logging
import sys

LOG_FORMAT = '%(message)s'
VERBOSE_FORMAT = '%(levelname)s %(name)s: %(message)s'


def configure_logging(verbose: bool = False, json_mode: bool = False) -> logging.Logger:
    """Route all package logging to stderr so stdout stays machine readable."""
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(VERBOSE_FORMAT if verbose else LOG_FORMAT))
    root.addHandler(handler)

    if verbose:
        root.setLevel(logging.DEBUG)
    elif json_mode:
        root.setLevel(logging.WARNING)
    else:
        root.setLevel(logging.INFO)
    return root


def banner(title: str, width: int = 50) -> str:
    return f"{title}\n{'=' * width}"
