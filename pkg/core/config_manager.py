# -*- coding: utf-8 -*-
"""
配置管理模块
分节的 JSON 配置：默认值 + config/gradus.json 覆盖 + 环境变量覆盖，
支持 "sampling.samples" 形式的点分键访问。
"""

import copy
import json
import logging
import os
import threading
from datetime import datetime
from typing import Any, Dict, Optional

from core.exceptions import InputError

logger = logging.getLogger(__name__)

PACKAGE_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DEFAULT_CONFIG_FILE = os.path.join(PACKAGE_ROOT, "config", "gradus.json")
CONFIG_VERSION = '1.0'


class ConfigManager:
    """配置管理器"""

    def __init__(self, config_file: Optional[str] = None):
        self.config_file = config_file or os.environ.get("GRADUS_CONFIG", DEFAULT_CONFIG_FILE)
        self.lock = threading.Lock()

        # 默认配置
        self.default_configs = {
            'numeric': {
                'tolerance': 1e-9,
            },
            'sampling': {
                'samples': 256,
                'box': 3,
                'seed': 0,
                'grid_bits': 4,
                'orbit_moves': 8,
                'max_rounds': 4,
                'segment_attempts': 8,
                'max_minors': 4096,
            },
            'weyl': {
                'max_group_order': 1000000,
            },
            'workers': {
                'threads': 1,
            },
            'archive': {
                'enabled': False,
                'url': 'sqlite:///gradus_runs.db',
            },
            'logging': {
                'level': 'INFO',
                'directory': 'logs',
            },
        }
        self.configs: Dict[str, Dict[str, Any]] = copy.deepcopy(self.default_configs)
        self.load()
        self._apply_environment()

    def load(self):
        """加载配置文件"""
        if not os.path.exists(self.config_file):
            logger.debug(f"config file not found, using defaults: {self.config_file}")
            return
        try:
            with open(self.config_file, 'r', encoding='utf-8') as f:
                loaded = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f"cannot read config file {self.config_file}: {e}",
                             original_error=e)

        loaded.pop('_metadata', None)
        with self.lock:
            self.configs = self._merge_configs(self.configs, loaded)
        logger.debug(f"config loaded: {self.config_file}")

    def _apply_environment(self):
        """环境变量覆盖"""
        threads = os.environ.get("GRADUS_THREADS")
        if threads:
            try:
                self.set_config('workers', 'threads', max(1, int(threads)))
            except ValueError:
                raise InputError(f"GRADUS_THREADS must be an integer, got {threads!r}")

    def _merge_configs(self, default: Dict, loaded: Dict) -> Dict:
        """递归合并配置"""
        result = copy.deepcopy(default)

        for key, value in loaded.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._merge_configs(result[key], value)
            else:
                result[key] = value

        return result

    def get_config(self, config_name: str, key: str = None) -> Any:
        """获取配置值"""
        with self.lock:
            if config_name not in self.configs:
                return None

            if key is None:
                return copy.deepcopy(self.configs[config_name])

            value = self.configs[config_name]
            try:
                for k in key.split('.'):
                    value = value[k]
                return value
            except (KeyError, TypeError):
                return None

    def get(self, dotted_key: str, default: Any = None) -> Any:
        """点分键访问，例如 'sampling.samples'"""
        config_name, _, key = dotted_key.partition('.')
        value = self.get_config(config_name, key or None)
        return default if value is None else value

    def set_config(self, config_name: str, key: str, value: Any):
        """设置配置值"""
        with self.lock:
            config = self.configs.setdefault(config_name, {})
            keys = key.split('.')
            for k in keys[:-1]:
                config = config.setdefault(k, {})
            config[keys[-1]] = value

    def save_config(self, file_path: Optional[str] = None):
        """保存配置到文件"""
        target = file_path or self.config_file
        with self.lock:
            config_data = copy.deepcopy(self.configs)

        config_data['_metadata'] = {
            'saved_at': datetime.now().isoformat(),
            'version': CONFIG_VERSION
        }

        directory = os.path.dirname(target)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(target, 'w', encoding='utf-8') as f:
            json.dump(config_data, f, indent=2, ensure_ascii=False)
        logger.debug(f"config saved: {target}")

    def sampling_options(self, **overrides) -> Dict[str, Any]:
        """采样参数（命令行参数优先）"""
        options = self.get_config('sampling')
        options['threads'] = self.get('workers.threads', 1)
        options.update({k: v for k, v in overrides.items() if v is not None})
        return options


# 全局配置管理实例
_config_manager: Optional[ConfigManager] = None
_config_lock = threading.Lock()


def get_config_manager(config_file: Optional[str] = None) -> ConfigManager:
    """获取全局配置管理器实例"""
    global _config_manager
    with _config_lock:
        if _config_manager is None or config_file is not None:
            _config_manager = ConfigManager(config_file)
        return _config_manager


def reset_config_manager():
    """丢弃全局实例（测试用）"""
    global _config_manager
    with _config_lock:
        _config_manager = None
