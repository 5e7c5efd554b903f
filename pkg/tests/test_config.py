# -*- coding: utf-8 -*-
import json

import pytest

from core.config_manager import ConfigManager, get_config_manager
from core.exceptions import InputError
from core.performance_monitor import RunMonitor


def test_defaults_without_file(tmp_path):
    manager = ConfigManager(str(tmp_path / "missing.json"))
    assert manager.get('numeric.tolerance') == 1e-9
    assert manager.get('sampling.samples') == 256
    assert manager.get('sampling.unknown', 'fallback') == 'fallback'
    assert manager.get_config('nothing') is None


def test_file_overrides_merge(tmp_path):
    path = tmp_path / "gradus.json"
    path.write_text(json.dumps({'sampling': {'samples': 32}, '_metadata': {'version': '1.0'}}), encoding='utf-8')
    manager = ConfigManager(str(path))
    assert manager.get('sampling.samples') == 32
    assert manager.get('sampling.box') == 3
    assert manager.get_config('_metadata') is None


def test_environment_variables(tmp_path, monkeypatch):
    path = tmp_path / "env.json"
    path.write_text(json.dumps({'workers': {'threads': 2}}), encoding='utf-8')
    monkeypatch.setenv("GRADUS_CONFIG", str(path))
    monkeypatch.setenv("GRADUS_THREADS", "6")
    manager = ConfigManager()
    assert manager.config_file == str(path)
    assert manager.get('workers.threads') == 6


def test_bad_thread_count(tmp_path, monkeypatch):
    monkeypatch.setenv("GRADUS_THREADS", "many")
    with pytest.raises(InputError):
        ConfigManager(str(tmp_path / "missing.json"))


def test_unreadable_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding='utf-8')
    with pytest.raises(InputError):
        ConfigManager(str(path))


def test_save_round_trip(tmp_path):
    manager = ConfigManager(str(tmp_path / "missing.json"))
    manager.set_config('sampling', 'seed', 11)
    target = tmp_path / "out" / "saved.json"
    manager.save_config(str(target))
    saved = json.loads(target.read_text(encoding='utf-8'))
    assert saved['_metadata']['version'] == '1.0'
    assert ConfigManager(str(target)).get('sampling.seed') == 11


def test_sampling_options_prefer_explicit_values(tmp_path):
    manager = ConfigManager(str(tmp_path / "missing.json"))
    manager.set_config('workers', 'threads', 3)
    options = manager.sampling_options(seed=5, samples=None)
    assert options['seed'] == 5
    assert options['samples'] == 256
    assert options['threads'] == 3


def test_global_manager_is_shared(tmp_path):
    first = get_config_manager()
    assert get_config_manager() is first
    other = get_config_manager(str(tmp_path / "missing.json"))
    assert other is not first
    assert get_config_manager() is other


def test_run_monitor_records_stages():
    monitor = RunMonitor(slow_stage_seconds=3600)
    with monitor.stage('build'):
        pass
    with monitor.stage('build'):
        pass
    report = monitor.get_run_report()
    assert report['stages']['build']['count'] == 2
    assert report['peak_rss_mb'] >= 0
    assert monitor.get_stage_summary('absent') == {}
