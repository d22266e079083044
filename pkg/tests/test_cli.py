"""The command line: exit codes, reports, config handling, batching."""

import io
import json

import pytest

from bordcalc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_nf(capsys):
    code, out = run(capsys, 'nf', 'e*G(1,2)')
    assert code == 0
    assert out.strip() == 'X2 + a2'


def test_exit_code_negative_check(capsys):
    code, out = run(capsys, 'geometric', 'e')
    assert code == 1
    assert 'not geometric' in out
    code, _ = run(capsys, 'geometric', 'G(1,2)*G(2,3)')
    assert code == 0
    code, _ = run(capsys, 'member', 'e^-1')
    assert code == 1


def test_exit_code_usage_error(capsys):
    code, out = run(capsys, 'nf', 'e^-1')
    assert code == 2
    assert 'error' in out
    code, _ = run(capsys, 'nf', 'X2 +')
    assert code == 2


def test_exit_code_capacity(capsys):
    code, out = run(capsys, 'nf', 'X20')
    assert code == 3
    code, out = run(capsys, 'nf', '--fuel', '1', 'G(1,2)*G(1,3)')
    assert code == 3
    assert 'fuel' in out


def test_divide_e(capsys):
    code, out = run(capsys, 'divide-e', 'e^3')
    assert code == 0
    assert out.strip() == 'e^2'
    code, out = run(capsys, 'divide-e', 'X2')
    assert code == 1
    assert 'a2' in out


def test_euler(capsys):
    code, out = run(capsys, 'euler', '0', '3')
    assert (code, out.strip()) == (0, 'e^3')
    code, out = run(capsys, 'euler', '2', '3')
    assert (code, out.strip()) == (0, '0')


def test_quotient(capsys):
    code, out = run(capsys, 'quotient', 'e^2*G(1,2)')
    assert code == 0
    assert out.strip() == '(a2 + X2)*x1'


def test_phi_delta_compare(capsys):
    code, out = run(capsys, 'phi', 'gamma(P(2))')
    assert code == 0
    assert out.strip() == 'a2*b1 + b1^3 + b1*b2'
    code, out = run(capsys, 'delta', 'b1*b2')
    assert code == 0
    assert out.strip() == 'a2*s0 + s2'
    code, out = run(capsys, 'compare', 'gamma(P(2))*P(2) + triv(a4)')
    assert code == 0
    assert out.startswith('ok')


def test_member(capsys):
    code, out = run(capsys, 'member', 'c1*e^-1 + e^-2')
    assert code == 0
    assert out.strip() == 'X2'


def test_charnum(capsys):
    code, out = run(capsys, 'charnum', 'RP(2)')
    assert code == 0
    assert 'w[1,1] = 1' in out
    assert 'w[2] = 1' in out
    code, out = run(capsys, 'charnum', '--ref', 'u', 'RP(3)')
    assert code == 0
    assert 'class: s3' in out


def test_json_report(capsys):
    code, out = run(capsys, 'nf', '--json', 'e*G(1,2)')
    assert code == 0
    report = json.loads(out)
    assert report['schema'] == 'bordcalc.report/1'
    assert report['command'] == 'nf'
    assert report['inputs'] == {'expr': 'e*G(1,2)'}
    assert report['outputs']['normal_form'] == 'X2 + a2'
    assert report['checks'] == []
    assert isinstance(report['elapsed_ms'], int)


def test_json_report_verify(capsys):
    code, out = run(capsys, 'verify', '--json', '--suite', 'loc', '--degree', '2')
    assert code == 0
    report = json.loads(out)
    assert report['outputs']['failed'] == 0
    assert report['outputs']['total'] == len(report['checks'])
    assert all(c['passed'] for c in report['checks'])


def test_verify_text(capsys):
    code, out = run(capsys, 'verify', '--suite', 'gamma', '--degree', '3')
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith('ok') for line in lines[:-1])
    assert lines[-1].endswith('0 failed')


def test_basis_table(capsys):
    code, out = run(capsys, 'basis-table', '--min', '2', '--max', '2')
    assert code == 0
    assert 'degree 2: 23 monomials' in out
    code, out = run(capsys, 'basis-table', '--min', '3', '--max', '1')
    assert code == 2


def test_stdin_batch(capsys, monkeypatch):
    monkeypatch.setattr('sys.stdin', io.StringIO('e*G(1,2)\n\nX2^2\n'))
    code = main(['nf'])
    out = capsys.readouterr().out.strip().splitlines()
    assert code == 0
    assert out == ['X2 + a2', 'X2*X2']
    monkeypatch.setattr('sys.stdin', io.StringIO('X2\ne^-1\n'))
    code = main(['nf'])
    assert code == 2


def test_config_file(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / 'small.cfg'
    cfg.write_text('# small ring\ncoef.max_degree = 4\nmax_degree = 4\n')
    code, _ = run(capsys, 'nf', '--config', str(cfg), 'X6')
    assert code == 3
    code, _ = run(capsys, 'nf', '--config', str(cfg), 'X4')
    assert code == 0
    monkeypatch.setenv('BORDCALC_CONFIG', str(cfg))
    code, _ = run(capsys, 'nf', 'X6')
    assert code == 3
    wide = tmp_path / 'wide.cfg'
    wide.write_text('coef.max_degree = 12\nmax_degree = 12\n')
    code, _ = run(capsys, 'nf', '--config', str(wide), 'X6')
    assert code == 0


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / 'bad.cfg'
    bad.write_text('mystery = 3\n')
    code = main(['nf', '--config', str(bad), 'X2'])
    err = capsys.readouterr().err
    assert code == 2
    assert 'unknown key' in err
    code = main(['nf', '--config', str(tmp_path / 'absent.cfg'), 'X2'])
    assert code == 2


def test_config_generators(capsys, tmp_path):
    cfg = tmp_path / 'gens.cfg'
    cfg.write_text('coef.generators = 2,4\nmax_degree = 8\ncoef.max_degree = 8\n')
    code, out = run(capsys, 'alpha', '--config', str(cfg), 'X2')
    assert (code, out.strip()) == (0, 'a2')
    code, _ = run(capsys, 'nf', '--config', str(cfg), 'a5')
    assert code == 2
