#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
环境检查脚本
依赖包版本、精确算术能力、JSON schema、配置文件以及一次小规模的公理自检。
"""

import importlib
import os
import sys
from typing import Callable, List, Tuple

ROOT = os.path.dirname(os.path.abspath(__file__))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

MIN_PYTHON = (3, 9)
# (模块名, 包名, 最低版本)
REQUIRED_PACKAGES = [
    ('sympy', 'sympy', '1.12'),
    ('numpy', 'numpy', '1.22'),
    ('scipy', 'scipy', '1.10'),
    ('sqlalchemy', 'SQLAlchemy', '2.0'),
    ('psutil', 'psutil', '5.9'),
    ('jsonschema', 'jsonschema', '4.17'),
    ('pytest', 'pytest', '7.4'),
]

Check = Tuple[str, bool, str]


def _version_tuple(text: str) -> Tuple[int, ...]:
    parts = []
    for piece in text.split('.'):
        digits = ''.join(ch for ch in piece if ch.isdigit())
        if not digits:
            break
        parts.append(int(digits))
    return tuple(parts)


def _run(name: str, action: Callable[[], str]) -> Check:
    try:
        return name, True, f"✅ {name}: {action()}"
    except Exception as e:
        return name, False, f"❌ {name}: {e}"


def check_python_version() -> Check:
    version = sys.version_info
    text = f"{version.major}.{version.minor}.{version.micro}"
    if version[:2] >= MIN_PYTHON:
        return 'python', True, f"✅ Python版本: {text}"
    return 'python', False, f"❌ Python版本过低: {text} (需要{MIN_PYTHON[0]}.{MIN_PYTHON[1]}+)"


def check_required_packages() -> List[Check]:
    results = []
    for module_name, package_name, minimum in REQUIRED_PACKAGES:
        try:
            module = importlib.import_module(module_name)
        except ImportError:
            results.append((package_name, False, f"❌ {package_name}: 未安装"))
            continue
        version = getattr(module, '__version__', '0')
        if _version_tuple(version) < _version_tuple(minimum):
            results.append((package_name, False, f"❌ {package_name}: {version} (需要 >= {minimum})"))
        else:
            results.append((package_name, True, f"✅ {package_name}: {version}"))
    return results


def _exact_arithmetic() -> str:
    from sympy import QQ, QQ_I
    from sympy.polys.matrices import DomainMatrix
    matrix = DomainMatrix([[QQ(1, 2), QQ(1)], [QQ(1), QQ(2)]], (2, 2), QQ)
    _, pivots = matrix.rref()
    if tuple(pivots) != (0,):
        raise RuntimeError("DomainMatrix.rref returned unexpected pivots")
    if QQ_I(0, 1) ** 2 != QQ_I(-1, 0):
        raise RuntimeError("QQ_I arithmetic is broken")
    return "QQ / QQ_I / DomainMatrix 可用"


def _schemas() -> str:
    import jsonschema
    from utils.validators import KINDS, load_schema
    for kind in KINDS:
        jsonschema.Draft7Validator.check_schema(load_schema(kind))
    return f"{len(KINDS)} 个 schema 有效"


def _configuration() -> str:
    from core.config_manager import ConfigManager
    manager = ConfigManager()
    return f"{manager.config_file} (threads={manager.get('workers.threads')})"


def _axiom_smoke_test() -> str:
    from core.catalog import build_catalog
    from core.lie import verify_axioms
    report = verify_axioms(build_catalog('sl2c-real-z2'))
    if not report.passed:
        raise RuntimeError(report.violations[0]['message'])
    return f"sl2c-real-z2 通过 ({report.checked_triples} 个三元组)"


def check_project() -> List[Check]:
    """项目自检（依赖包齐全时才有意义）"""
    return [
        _run('精确算术', _exact_arithmetic),
        _run('JSON schema', _schemas),
        _run('配置文件', _configuration),
        _run('公理自检', _axiom_smoke_test),
    ]


def _print_section(title: str, results: List[Check]) -> bool:
    print(f"\n{title}")
    for _, _, msg in results:
        print(f"  {msg}")
    return all(ok for _, ok, _ in results)


def main() -> int:
    print("=" * 60)
    print("🔍 gradus 环境检查")
    print("=" * 60)

    python_ok = _print_section("📋 Python环境:", [check_python_version()])
    packages_ok = _print_section("📦 依赖包检查:", check_required_packages())
    project_ok = packages_ok and _print_section("🧮 项目自检:", check_project())

    print("\n" + "=" * 60)
    if python_ok and packages_ok and project_ok:
        print("🎉 所有检查通过")
        print("   python main.py catalog list")
        return 0
    print("⚠️  发现问题:")
    if not python_ok:
        print(f"   - 请升级Python到{MIN_PYTHON[0]}.{MIN_PYTHON[1]}或更高版本")
    if not packages_ok:
        print("   - 请安装依赖: python -m pip install -r requirements.txt")
    elif not project_ok:
        print("   - 项目自检失败，详见上方信息")
    return 1


if __name__ == "__main__":
    sys.exit(main())
