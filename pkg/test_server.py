import json

import pytest

from server.app import create_app


@pytest.fixture
def client():
    app = create_app()
    app.config['TESTING'] = True
    return app.test_client()


def test_status(client):
    response = client.get('/api/status')
    assert response.status_code == 200
    payload = response.get_json()
    assert payload['success'] is True
    assert payload['data']['ready'] is True
    assert 'toda' in payload['data']['systems']


def test_suites_listing(client):
    names = [s['name'] for s in client.get('/api/suites').get_json()['data']]
    assert names[-1] == 'all'
    assert 'haiman' in names


def test_verify(client):
    response = client.post('/api/verify', json={'suite': 'haiman', 'n': 2})
    assert response.status_code == 200
    report = response.get_json()['data']
    assert report['suite'] == 'haiman'
    assert report['fail'] == 0


def test_verify_needs_a_suite(client):
    response = client.post('/api/verify', json={})
    assert response.status_code == 400
    assert 'all' in response.get_json()['details']['suites']


def test_unknown_suite_is_rejected(client):
    response = client.post('/api/verify', json={'suite': 'nonsense'})
    assert response.status_code == 400
    assert response.get_json()['success'] is False


def test_verify_stream(client):
    response = client.post('/api/verify-stream', json={'suite': 'haiman', 'n': 2})
    events = [json.loads(line[len('data: '):]) for line in response.get_data(as_text=True).splitlines()
              if line.startswith('data: ')]
    assert [e.get('status') for e in events[:2]] == ['active', 'completed']
    assert events[-1]['type'] == 'result'
    assert events[-1]['data']['fail'] == 0


def test_hilbert_table(client):
    response = client.post('/api/hilbert', json={'table': True, 'n': 2})
    assert response.status_code == 200
    assert response.get_json()['data']['status'] == 'pass'


def test_hilbert_without_input(client):
    response = client.post('/api/hilbert', json={})
    assert response.status_code == 400


def test_numeric_failure_maps_to_422(client):
    response = client.post('/api/gauge', json={'Phi1': [[0, 0], [0, 0]], 'A1': [[0, 0], [0, 0]], 'mu': [0.1]})
    assert response.status_code == 422


def test_unknown_endpoint(client):
    response = client.get('/api/nothing')
    assert response.status_code == 404
