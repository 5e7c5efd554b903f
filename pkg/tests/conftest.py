# -*- coding: utf-8 -*-
"""
测试共享夹具
"""

import os
import sys

import pytest

from core.catalog import build_catalog
from core.config_manager import reset_config_manager

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
MAIN = os.path.join(ROOT, "main.py")


@pytest.fixture
def sl2():
    return build_catalog('sl2')


@pytest.fixture
def sl2_diag():
    """sl(2,R)，g_0 = <H>，g_1 = <E, F>"""
    return build_catalog('sl2-z2-diag')


@pytest.fixture
def a6():
    """sl(2,C) 作为 6 维实代数"""
    return build_catalog('sl2c-real-z2')


@pytest.fixture(scope="session")
def e7():
    return build_catalog('e7-split-z2')


@pytest.fixture(scope="session")
def e8():
    return build_catalog('e8-split-z3')


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    monkeypatch.delenv("GRADUS_CONFIG", raising=False)
    monkeypatch.delenv("GRADUS_THREADS", raising=False)
    reset_config_manager()
    yield
    reset_config_manager()


@pytest.fixture
def cli_command():
    def command(*args):
        return [sys.executable, MAIN, '--no-log-file', *args]
    return command
