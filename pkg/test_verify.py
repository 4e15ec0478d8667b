import pytest

from core import verify
from core.config import RunConfig
from core.errors import UsageError
from core.verify import VerificationRunner, summarize, suite_names


def test_summary_ignores_exact_cases():
    results = [{'case': 'a', 'passed': True, 'residual': None, 'detail': None},
               {'case': 'b', 'passed': False, 'residual': 1e-3, 'detail': None},
               {'case': 'c', 'passed': True, 'residual': 1e-9, 'detail': None}]
    report = summarize('demo', results)
    assert (report['cases'], report['pass'], report['fail']) == (3, 2, 1)
    assert report['worst_residual'] == 1e-3
    assert summarize('empty', [])['worst_residual'] == 0.0


def test_suite_names_end_with_all():
    names = suite_names()
    assert names[-1] == 'all'
    assert {'poisson-table', 'conjugation', 'gauge'} <= set(names)


def test_unknown_suite(run_config):
    with pytest.raises(UsageError):
        VerificationRunner(run_config).run('nonsense')


@pytest.mark.parametrize('suite,n', [('poisson-table', 2), ('haiman', 2), ('condition-C', 2),
                                     ('dn-relations', 3)])
def test_small_suites_pass(suite, n, tmp_path):
    report = VerificationRunner(RunConfig(n=n, output_dir=str(tmp_path))).run(suite)
    assert report['cases'] > 0
    assert report['fail'] == 0, [r['case'] for r in report['results'] if not r['passed']]


def test_exact_suite_has_zero_worst_residual(tmp_path):
    report = VerificationRunner(RunConfig(n=2, output_dir=str(tmp_path))).run('condition-C')
    assert all(r['residual'] is None for r in report['results'])
    assert report['worst_residual'] == 0.0


def test_progress_events(tmp_path):
    events = []
    VerificationRunner(RunConfig(n=2, output_dir=str(tmp_path)), events.append).run('haiman')
    assert [e['status'] for e in events] == ['active', 'completed']
    assert events[-1]['detail'] == '1/1 passed'


def test_all_reports_per_suite(monkeypatch, run_config):
    monkeypatch.setattr(verify, 'SUITES', {
        'one': lambda config: [verify._case('x', True, 1e-12)],
        'two': lambda config: [verify._case('y', False), verify._case('z', True)],
    })
    report = VerificationRunner(run_config).run('all')
    assert 'results' not in report
    assert report['cases'] == 3 and report['fail'] == 1
    assert report['suites']['two']['fail'] == 1
    assert report['worst_residual'] == 1e-12


def test_supplied_mu1_fails(tmp_path):
    config = RunConfig(n=2, inputs={'mu1': 'w'}, output_dir=str(tmp_path))
    report = VerificationRunner(config).run('spectral-lagrangian')
    assert report['cases'] == 1
    assert report['fail'] == 1


def test_malformed_mu1(tmp_path):
    config = RunConfig(n=2, inputs={'mu1': 'mu2 +* )'}, output_dir=str(tmp_path))
    with pytest.raises(UsageError):
        VerificationRunner(config).run('spectral-lagrangian')


def test_pullback_uses_several_random_configurations(tmp_path):
    report = VerificationRunner(RunConfig(n=3, output_dir=str(tmp_path))).run('poisson-table')
    pullbacks = [r for r in report['results'] if 'configuration pullback' in r['case']]
    assert len(pullbacks) == 3
    assert all(r['passed'] for r in pullbacks)
    assert len({str(r['detail']['points']) for r in pullbacks}) == 3


def test_lie_suite_covers_rank_one(tmp_path):
    report = VerificationRunner(RunConfig(n=1, output_dir=str(tmp_path))).run('lie')
    names = [r['case'] for r in report['results']]
    assert 'A1 principal nilpotent regular' in names
    assert not any(name.startswith(('B1', 'C1')) for name in names)
    assert report['fail'] == 0, [r['case'] for r in report['results'] if not r['passed']]


def test_gauge_suite_runs_on_the_configured_grid(tmp_path):
    report = VerificationRunner(RunConfig(N=64, output_dir=str(tmp_path))).run('gauge')
    assert report['fail'] == 0, [r['case'] for r in report['results'] if not r['passed']]
    numeric = [r for r in report['results'] if r['case'].startswith(('parabolic', 'toda'))]
    assert numeric and all(r['residual'] <= 1e-9 for r in numeric)
