# -*- coding: utf-8 -*-
"""
命令行测试
"""

import json
import logging
import os
import subprocess

import pytest

from core.catalog import build_catalog
from core.lie import element_to_dict
from main import main
from utils.validators import validate_document


@pytest.fixture(autouse=True)
def restore_logging():
    yield
    for handler in logging.root.handlers[:]:
        logging.root.removeHandler(handler)


def run_cli(capsys, *args):
    code = main(['--no-log-file', *args])
    return code, capsys.readouterr().out


def test_catalog_list(capsys):
    code, out = run_cli(capsys, 'catalog', 'list')
    assert code == 0
    report = json.loads(out)
    names = {entry['name'] for entry in report['result']['algebras']}
    assert {'sl2', 'sl2-z2-diag', 'sl2c-real-z2', 'e7-split-z2', 'e8-split-z3'} <= names
    assert report['manifest']['command'] == 'catalog list'


def test_catalog_build_writes_algebra_document(capsys, tmp_path):
    target = tmp_path / "sl2.json"
    code, out = run_cli(capsys, '-o', str(target), 'catalog', 'build', 'sl2')
    assert code == 0
    assert out == ""
    document = json.loads(target.read_text(encoding='utf-8'))
    validate_document('algebra', document)
    assert document['name'] == 'sl2'


def test_verify_file_algebra(capsys, tmp_path, sl2):
    path = tmp_path / "sl2.json"
    path.write_text(json.dumps(sl2.to_dict()), encoding='utf-8')
    code, out = run_cli(capsys, 'verify', str(path))
    report = json.loads(out)
    assert code == 0
    assert report['result']['passed'] is True
    assert 'sl2.json' in report['manifest']['input_digests']


def test_element_analyze(capsys):
    code, out = run_cli(capsys, 'element', 'analyze', 'sl2-z2-diag', '{"terms": {"E": 1}}')
    result = json.loads(out)['result']
    algebra = build_catalog('sl2-z2-diag')
    assert code == 0
    assert result['nilpotent'] is True and result['semisimple'] is False
    assert result['degree'] == 1
    assert result['characteristic']['coords'] == element_to_dict(algebra.from_terms({'H': 1}))['coords']


def test_jmv(capsys):
    code, out = run_cli(capsys, 'jmv', 'sl2-z2-diag', '{"terms": {"E": 1}}')
    result = json.loads(out)['result']
    algebra = build_catalog('sl2-z2-diag')
    assert code == 0
    assert result['h'] == element_to_dict(algebra.from_terms({'H': 1}))
    assert result['f'] == element_to_dict(algebra.from_terms({'F': 1}))
    assert result['uniqueness_dim'] == 0


def test_nilorbits_is_deterministic(capsys):
    first_code, first = run_cli(capsys, 'nilorbits', 'sl2c-real-z2', '--h', '{"terms": {"H": 1}}', '--seed', '3')
    second_code, second = run_cli(capsys, 'nilorbits', 'sl2c-real-z2', '--h', '{"terms": {"H": 1}}', '--seed', '3')
    assert first_code == second_code == 0
    assert first == second
    report = json.loads(first)
    assert report['result']['orbit_count'] == 2
    assert report['result']['mode'] == 'exact'
    assert report['manifest']['seed'] == 3


def test_z2_compare_conjugate(capsys):
    code, out = run_cli(capsys, 'z2', 'compare', 'sl2-z2-diag',
                        '{"terms": {"E": 1, "F": 1}}', '{"terms": {"E": -1, "F": -1}}')
    result = json.loads(out)['result']
    assert code == 0
    assert result['verdict'] == 'conjugate'
    assert result['stage'] == 'vector'


def test_undecided_exits_four_only_when_strict(capsys):
    x, y = '{"terms": {"E": "3/2", "F": "1/2"}}', '{"terms": {"E": 1, "F": 1}}'
    code, out = run_cli(capsys, 'z2', 'compare', 'sl2-z2-diag', x, y)
    assert code == 0
    assert json.loads(out)['result']['verdict'] == 'undecided'
    code, out = run_cli(capsys, '--strict', 'z2', 'compare', 'sl2-z2-diag', x, y)
    assert code == 4
    assert json.loads(out)['result']['verdict'] == 'undecided'


def test_involution_check_and_improve(capsys):
    code, out = run_cli(capsys, 'involution', 'check', 'sl2-z2-diag', '--break-grading')
    result = json.loads(out)['result']
    assert code == 0
    assert result['tau_g']['comp_holds'] is True
    assert result['broken']['comp_holds'] is False
    code, out = run_cli(capsys, 'involution', 'improve', 'sl2')
    result = json.loads(out)['result']
    assert code == 0
    assert result['phi_is_identity'] is False
    assert result['residuals']['tau_g'] < 1e-9
    assert result['residuals']['theta'] < 1e-9


def test_archive_and_history(capsys, tmp_path):
    url = f"sqlite:///{tmp_path / 'runs.db'}"
    assert run_cli(capsys, '--archive', url, 'verify', 'sl2')[0] == 0
    assert run_cli(capsys, '--archive', url, 'jmv', 'sl2-z2-diag', '{"terms": {"E": 1}}')[0] == 0
    code, out = run_cli(capsys, '--archive', url, 'history')
    runs = json.loads(out)['result']['runs']
    assert code == 0
    assert [run['command'] for run in runs] == ['jmv', 'verify']


def test_timing_only_on_request(capsys):
    _, plain = run_cli(capsys, 'verify', 'sl2')
    assert 'timing' not in json.loads(plain)['manifest']
    _, timed = run_cli(capsys, '--timing', 'verify', 'sl2')
    assert 'verify' in json.loads(timed)['manifest']['timing']['stages']


@pytest.mark.slow
def test_kform_analyze(capsys, tmp_path):
    path = tmp_path / "w.json"
    path.write_text('{"n": 8, "k": 4, "terms": [[[1, 2, 3, 4], "2"]]}', encoding='utf-8')
    code, out = run_cli(capsys, 'kform', 'analyze', '--model', 'e7', str(path))
    result = json.loads(out)['result']
    assert code == 0
    assert (result['model'], result['kind']) == ('e7-split-z2', 'nilpotent')
    code, _ = run_cli(capsys, 'kform', 'analyze', '--model', 'e8', str(path))
    assert code == 2


def test_input_errors_exit_two(capsys, tmp_path):
    code, out = run_cli(capsys, 'verify', str(tmp_path / "absent"))
    assert code == 2
    assert json.loads(out)['error']['error_code'] == 'INPUT_ERROR'
    code, out = run_cli(capsys, 'jmv', 'sl2-z2-diag', '{"terms": {"E": [1]}}')
    error = json.loads(out)['error']
    assert code == 2
    assert error['error_code'] == 'SCHEMA_ERROR'
    assert error['path'] == 'terms/E'


def test_computation_errors_exit_three(capsys):
    code, out = run_cli(capsys, 'jmv', 'sl2-z2-diag', '{"terms": {"H": 1}}')
    assert code == 3
    assert json.loads(out)['error']['error_type'] == 'PreconditionError'


def test_version_subprocess(cli_command):
    completed = subprocess.run(cli_command('--version'), capture_output=True, text=True)
    assert completed.returncode == 0
    assert completed.stdout.strip() == "gradus 1.0.0"


def test_unknown_catalog_name_subprocess(cli_command):
    completed = subprocess.run(cli_command('catalog', 'build', 'g2'), capture_output=True, text=True)
    assert completed.returncode == 2
    assert completed.stdout == ""


def test_bad_configuration_exits_two(capsys, monkeypatch, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding='utf-8')
    code, out = run_cli(capsys, '--config', str(broken), 'catalog', 'list')
    assert code == 2
    assert json.loads(out)['error']['error_code'] == 'INPUT_ERROR'
    monkeypatch.setenv("GRADUS_THREADS", "abc")
    code, out = run_cli(capsys, 'catalog', 'list')
    assert code == 2
    assert "GRADUS_THREADS" in json.loads(out)['error']['message']


def test_bad_thread_variable_subprocess(cli_command):
    env = dict(os.environ, GRADUS_THREADS="abc")
    completed = subprocess.run(cli_command('catalog', 'list'), capture_output=True, text=True, env=env)
    assert completed.returncode == 2
    assert "Traceback" not in completed.stderr
    assert json.loads(completed.stdout)['error']['error_code'] == 'INPUT_ERROR'
