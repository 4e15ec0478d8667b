import logging
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src'))

from core import configure_logging
from server.app import create_app, system_status

logger = logging.getLogger(__name__)

if __name__ == '__main__':
    configure_logging()
    logger.info("Starting higher complex structures API...")
    logger.info("=" * 50)

    app = create_app()
    if system_status['initialized']:
        logger.info("Configuration loaded")
    else:
        logger.warning("Configuration failed to load: %s", system_status['error'])

    logger.info("Access the API at: http://localhost:5000/api/status")
    logger.info("Press Ctrl+C to stop the server")
    logger.info("=" * 50)

    app.run(
        host='0.0.0.0',
        port=5000,
        debug=True,
        use_reloader=False
    )
