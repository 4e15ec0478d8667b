import json
import logging
import queue
import threading

from flask import Response, stream_with_context

from core import HCSError, dumps
from core.commands import run_verify
from core.verify import suite_names
from server.handlers.compute_handler import request_config
from server.utils.response import success, failure, error_response

logger = logging.getLogger(__name__)


def _suite(data):
    suite = (data or {}).get('suite')
    if not suite:
        return None, failure('Suite name is required', 400, {'suites': suite_names()})
    return suite, None


def process_verify(data):
    suite, problem = _suite(data)
    if problem:
        return problem
    try:
        config = request_config('verify', data)
        return success(run_verify(config, suite))
    except HCSError as e:
        return error_response(e)


def process_verify_stream(data):
    """Run a suite in the background and stream the runner's progress as server-sent events."""
    suite, problem = _suite(data)
    if problem:
        return problem
    try:
        config = request_config('verify', data)
    except HCSError as e:
        return error_response(e)

    progress_queue = queue.Queue()

    def progress_callback(update):
        progress_queue.put(update)

    def process_in_background():
        try:
            report = run_verify(config, suite, progress_callback)
            progress_queue.put({'type': 'result', 'data': json.loads(dumps(report))})
        except HCSError as e:
            progress_queue.put({'type': 'error', 'error': e.message, 'details': e.details})
        except Exception as e:
            logger.exception("Verification of %s crashed", suite)
            progress_queue.put({'type': 'error', 'error': str(e)})
        finally:
            progress_queue.put({'type': 'done'})

    thread = threading.Thread(target=process_in_background)
    thread.daemon = True
    thread.start()

    def generate():
        while True:
            try:
                update = progress_queue.get(timeout=600)

                if update.get('type') == 'done':
                    break

                yield f"data: {json.dumps(update, sort_keys=True)}\n\n"
            except queue.Empty:
                break

    return Response(stream_with_context(generate()), mimetype='text/event-stream')
