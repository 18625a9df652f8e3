import json

import pytest

from src.cli import run
from src.cli.commands import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE
from src.config import Config


def run_json(capsys, *argv):
    code = run([*argv, '--json'])
    return code, json.loads(capsys.readouterr().out)


def test_heisenberg_exponents(capsys):
    code, document = run_json(capsys, 'exponents', '--group', 'heisenberg:1')
    assert code == EXIT_OK
    assert document['schema_version'] == Config.SCHEMA_VERSION
    assert document['command'] == 'exponents'
    assert [row['q'] for row in document['result']['exponents']] == ['4/3', '2', '4/3']
    assert [row['j'] for row in document['result']['exponents']] == [1, 2, 1]


@pytest.mark.slow
def test_engel_exponents(capsys):
    code, document = run_json(capsys, 'exponents', '--group', 'engel')
    assert code == EXIT_OK
    assert [row['q'] for row in document['result']['exponents']] == ['7/6', '7/5', '7/5', '7/6']


def test_group_document(capsys):
    code, document = run_json(capsys, 'group', '--group', 'heisenberg:1')
    assert code == EXIT_OK
    result = document['result']
    assert result['layer_dims'] == [2, 1]
    assert result['homogeneous_dimension'] == 4
    assert result['heisenberg_rank'] == 1
    assert result['brackets'] == [{'i': 1, 'j': 2, 'k': 3, 'c': '1'}]


def test_config_is_echoed(capsys):
    _, document = run_json(capsys, 'betti', '--group', 'abelian:3')
    assert document['config']['samples'] == Config.SAMPLES
    assert document['result']['betti'] == [1, 3, 3, 1]
    assert document['result']['euler_characteristic'] == 0


def test_betti_text(capsys):
    assert run(['betti', '--group', 'heisenberg:1']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'BETTI on heisenberg:1' in out
    assert 'dim H^k = dim E0^k' in out


def test_weights_json(capsys):
    _, document = run_json(capsys, 'weights', '--group', 'engel')
    assert [entry['weights'] for entry in document['result']['weights']] == [[0], [1], [3, 4], [6], [7]]


def test_jsets_checks(capsys):
    _, document = run_json(capsys, 'jsets', '--group', 'heisenberg:1')
    checks = document['result']['checks']
    assert checks['M'] == 2 and checks['Q'] == 4
    assert checks['weight_duality'] and checks['degree_symmetry']
    assert document['result']['degrees'][1]['jsets'] == {'1': [2]}


def test_dc_agrees_with_ideal_construction(capsys):
    code, document = run_json(capsys, 'dc', '--group', 'heisenberg:1', '--form', 'x1**2*t[2]')
    assert code == EXIT_OK
    result = document['result']
    assert result['degree'] == 1
    assert result['ideal_agrees'] is True
    assert list(result['pieces']) == ['2']


def test_dc_of_zero_takes_the_requested_degree(capsys):
    _, document = run_json(capsys, 'dc', '--group', 'heisenberg:1', '--form', '0', '--degree', '2')
    assert document['result']['degree'] == 2
    assert document['result']['dc'] == '0'


def test_leibniz_verb(capsys):
    _, document = run_json(capsys, 'leibniz', '--group', 'heisenberg:1', '--alpha', 'x1', '--beta', 'x2*t[1]^t[3]')
    assert document['result']['guaranteed'] is True
    assert document['result']['holds'] is True


def test_primitive_without_linear_growth(capsys):
    code, document = run_json(capsys, 'primitive', '--group', 'heisenberg:1', '--form', 't[3]^t[1]')
    assert code == EXIT_DOMAIN
    assert document['error']['type'] == 'NoLinearGrowth'
    assert document['error']['minimal_growth'] == 2
    assert document['error']['exit_code'] == EXIT_DOMAIN


def test_primitive_with_linear_growth(capsys):
    code, document = run_json(capsys, 'primitive', '--group', 'heisenberg:1', '--form', 't[2]')
    assert code == EXIT_OK
    assert document['result']['growth'] == 1
    assert document['result']['verified'] is True


def test_bad_form_is_a_usage_error(capsys):
    assert run(['dc', '--group', 'heisenberg:1', '--form', 't[4]']) == EXIT_USAGE
    out = capsys.readouterr().out
    assert 'covector index out of range' in out
    assert 't[4]\n  ^' in out
    assert 'expected grammar' in out


@pytest.mark.parametrize("argv", [
    ['frobnicate', '--group', 'heisenberg:1'],
    ['betti'],
    ['betti', '--group', 'nilpotent:3'],
    ['verify-cutoff', '--group', 'heisenberg:1', '--m', '1', '--lambdas', '4,,16'],
])
def test_usage_errors(capsys, argv):
    assert run(argv) == EXIT_USAGE


def test_domain_error_exit_code(capsys):
    assert run(['leibniz', '--group', 'engel', '--alpha', 'x1', '--beta', 't[1]']) == EXIT_DOMAIN


def test_runs_are_deterministic(capsys):
    argv = ['verify-cutoff', '--group', 'heisenberg:1', '--m', '1', '--lambdas', '4,16',
            '--samples', '2000', '--seed', '9', '--json']
    assert run(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    document = json.loads(first)
    assert document['result']['seed'] == 9
    assert document['result']['fit']['slope'] == pytest.approx(-0.75, abs=1e-6)


def test_common_flags_before_the_verb(capsys):
    assert run(['--seed', '3', '--group', 'heisenberg:1', 'betti']) == EXIT_OK
    assert 'BETTI on heisenberg:1' in capsys.readouterr().out

    tail = ['--m', '1', '--lambdas', '4,16', '--samples', '2000']
    assert run(['--group', 'heisenberg:1', '--seed', '3', '--json', 'verify-cutoff', *tail]) == EXIT_OK
    before = capsys.readouterr().out
    assert run(['verify-cutoff', '--group', 'heisenberg:1', '--seed', '3', '--json', *tail]) == EXIT_OK
    assert capsys.readouterr().out == before
    assert json.loads(before)['result']['seed'] == 3


def test_verb_level_flags_override_global_ones(capsys):
    code, document = run_json(capsys, '--group', 'engel', 'betti', '--group', 'abelian:3')
    assert code == EXIT_OK
    assert document['result']['betti'] == [1, 3, 3, 1]
