from flask import Response

from core import EXIT_NUMERIC, HCSError, dumps

STATUS_FOR_EXIT = {EXIT_NUMERIC: 422}


def json_response(payload, status=200):
    return Response(dumps(payload), status=status, mimetype='application/json')


def success(data):
    return json_response({
        'success': True,
        'data': data
    })


def failure(message, status=400, details=None):
    payload = {
        'success': False,
        'error': message
    }
    if details is not None:
        payload['details'] = details
    return json_response(payload, status)


def error_response(error: HCSError):
    return failure(error.message, STATUS_FOR_EXIT.get(error.exit_code, 400), error.details)
