import logging
import os
import sys

from flask import Flask
from flask_cors import CORS

sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))
from core import load_run_config, HCSError

logger = logging.getLogger(__name__)

system_status = {
    'initialized': False,
    'error': None
}


def initialize_toolkit():
    """Validate the static configuration once at startup."""
    global system_status

    try:
        load_run_config()
        system_status['initialized'] = True
        system_status['error'] = None
        return True

    except HCSError as e:
        error_msg = f"Failed to load configuration: {e.message}"
        logger.error(error_msg)
        system_status['error'] = error_msg
        return False


def create_app():
    app = Flask(__name__)
    CORS(app)

    from server.routes.api import register_api_routes

    initialize_toolkit()
    register_api_routes(app, system_status)

    return app

