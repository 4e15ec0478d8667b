import json

import pytest

from cli import main


def run_json(capsys, argv):
    code = main(argv + ['--json'])
    return code, json.loads(capsys.readouterr().out)


def test_verify_suite(capsys, tmp_path):
    report_path = tmp_path / 'report.json'
    code, data = run_json(capsys, ['verify', 'poisson-table', '--n', '2', '--output-dir', str(tmp_path),
                                   '--report', str(report_path)])
    assert code == 0
    assert data['suite'] == 'poisson-table'
    assert data['fail'] == 0
    assert json.loads(report_path.read_text())['cases'] == data['cases']


def test_failing_verification_exits_3(capsys, tmp_path):
    code, data = run_json(capsys, ['verify', 'spectral-lagrangian', '--n', '2', '--mu1', 'w',
                                   '--output-dir', str(tmp_path)])
    assert code == 3
    assert data['fail'] == 1


def test_unknown_suite_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(['verify', 'nonsense'])
    assert exc.value.code == 2


def test_poisson_table(capsys):
    code, data = run_json(capsys, ['hilbert', '--table', '--n', '2'])
    assert code == 0
    assert data['status'] == 'pass'


def test_hilbert_from_points(capsys, tmp_path):
    points = tmp_path / 'points.json'
    points.write_text(json.dumps({'points': [[0, 1], [1, 2], [2, 5]]}))
    code, data = run_json(capsys, ['hilbert', '--points', str(points)])
    assert code == 0
    assert data['cyclic'] is True
    assert len(data['chow']) == 3


def test_hilbert_without_input(capsys):
    code, data = run_json(capsys, ['hilbert'])
    assert code == 2
    assert data['success'] is False


def test_missing_config_file(capsys, tmp_path):
    code, _ = run_json(capsys, ['hilbert', '--table', '--config', str(tmp_path / 'missing.json')])
    assert code == 2


def test_lie_slice_point(capsys):
    code, data = run_json(capsys, ['lie', '--type', 'C2', '--t', '1,2', '--mu', '1,0', '--genus', '2'])
    assert code == 0
    assert data['cyclic'] is True
    assert data['in_hilb'] is True
    assert data['charpoly']['match'] is True
    assert data['display_matches'] is True
    assert data['dimensions']['dimension'] == 10


def test_conj_symbolic_check(capsys):
    code, data = run_json(capsys, ['conj', '--n', '2'])
    assert code == 0
    assert data['status'] == 'ok'


def test_gauge_defaults(capsys):
    code, data = run_json(capsys, ['gauge', '--n', '2'])
    assert code == 0
    assert data['n'] == 2
    assert data['leading']['status'] == 'pass'
    assert data['limits']['zero']['re'] == pytest.approx(3.0, abs=1e-5)
    assert data['limits']['zero']['im'] == pytest.approx(1.0, abs=1e-5)


def test_solve_writes_fields_and_radial_profile(capsys, tmp_path):
    code, data = run_json(capsys, ['solve', 'cosh-gordon', '--N', '11', '--output-dir', str(tmp_path)])
    assert code == 0
    assert data['residual'] < 1e-8
    assert all((tmp_path / name).exists() for name in ['cosh-gordon-fields.csv', 'cosh-gordon-residual.csv'])

    code, data = run_json(capsys, ['emit', 'radial-profile', '--input', str(tmp_path / 'cosh-gordon-fields.csv'),
                                   '--output-dir', str(tmp_path)])
    assert code == 0
    assert data['field'] == 'phi1'
    assert (tmp_path / 'radial-phi1.csv').exists()


def test_emit_sheet_csv_without_input(capsys, tmp_path):
    code, data = run_json(capsys, ['emit', 'sheet-csv', '--N', '16', '--output-dir', str(tmp_path)])
    assert code == 0
    assert data['kind'] == 'sheet-csv'
    assert data['closedness']['order'] == 'exact'
    assert (tmp_path / 'sheets.csv').exists()


def test_unexpected_exception_maps_to_internal_error(capsys, monkeypatch):
    from core import commands

    def broken(config, params):
        raise RuntimeError('lost a factor')

    monkeypatch.setattr(commands, 'run_hilbert', broken)
    code, data = run_json(capsys, ['hilbert', '--table', '--n', '2'])
    assert code == 3
    assert data['success'] is False
    assert data['details']['type'] == 'RuntimeError'
