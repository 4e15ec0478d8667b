from flask import request

from server.handlers.compute_handler import run_command
from server.handlers.status_handler import get_status, get_suites
from server.handlers.verify_handler import process_verify, process_verify_stream
from server.utils.response import failure

COMPUTE_VERBS = ('hilbert', 'conj', 'gl2', 'lie', 'gauge', 'solve')


def register_api_routes(app, system_status):
    @app.route('/api/status')
    def api_status():
        return get_status(system_status)

    @app.route('/api/suites')
    def api_suites():
        return get_suites()

    @app.route('/api/verify', methods=['POST'])
    def api_verify():
        return process_verify(request.get_json(silent=True))

    @app.route('/api/verify-stream', methods=['POST'])
    def api_verify_stream():
        return process_verify_stream(request.get_json(silent=True))

    for verb in COMPUTE_VERBS:
        app.add_url_rule(f'/api/{verb}', f'api_{verb}',
                         lambda verb=verb: run_command(verb, request.get_json(silent=True)),
                         methods=['POST'])

    @app.errorhandler(404)
    def not_found(error):
        return failure('Endpoint not found', 404)

    @app.errorhandler(500)
    def internal_error(error):
        return failure('Internal server error', 500)
