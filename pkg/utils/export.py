# -*- coding: utf-8 -*-
"""
报告导出工具
JSON 文档的读取、确定性写出与运行清单
"""

import hashlib
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, TextIO

from core import __version__
from core.exceptions import InputError
from core.exterior import MultiVector
from core.lie import Element, GradedAlgebra, element_from_dict, element_to_dict
from utils.validators import validate_document

logger = logging.getLogger(__name__)


def dumps_report(document: Dict[str, Any]) -> str:
    """确定性序列化：键排序、两空格缩进、末尾换行"""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def file_digest(path: str) -> str:
    sha = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(65536), b''):
            sha.update(chunk)
    return sha.hexdigest()


def text_digest(text: str) -> str:
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


@dataclass
class RunManifest:
    """运行清单：命令、参数、种子、版本与输入摘要"""
    command: str
    arguments: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    version: str = __version__
    input_digests: Dict[str, str] = field(default_factory=dict)
    wall_seconds: Optional[float] = None
    timing: Optional[Dict[str, Any]] = None

    def add_input(self, path: str):
        self.input_digests[os.path.basename(path)] = file_digest(path)

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            'command': self.command,
            'arguments': {k: self.arguments[k] for k in sorted(self.arguments)},
            'seed': self.seed,
            'tool_version': self.version,
            'input_digests': dict(sorted(self.input_digests.items())),
        }
        if self.wall_seconds is not None:
            doc['wall_seconds'] = round(self.wall_seconds, 3)
        if self.timing is not None:
            doc['timing'] = self.timing
        return doc


class ReportExporter:
    """报告导出器"""

    def __init__(self, validate: bool = True):
        self.validate = validate

    # ---------- 读取 ----------

    def load_json(self, path: str) -> Dict[str, Any]:
        if not os.path.exists(path):
            raise InputError(f"input file not found: {path}")
        try:
            with open(path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise InputError(f"{path} is not valid JSON: {e}", original_error=e)

    def load_algebra(self, path: str) -> GradedAlgebra:
        doc = self.load_json(path)
        if self.validate:
            validate_document('algebra', doc)
        return GradedAlgebra.from_dict(doc)

    def load_element(self, algebra: GradedAlgebra, path: str) -> Element:
        doc = self.load_json(path)
        if self.validate:
            validate_document('element', doc)
        return element_from_dict(algebra, doc)

    def load_multivector(self, path: str) -> MultiVector:
        doc = self.load_json(path)
        if self.validate:
            validate_document('multivector', doc)
        return MultiVector.from_dict(doc)

    # ---------- 文档 ----------

    @staticmethod
    def element_document(x: Element) -> Dict[str, Any]:
        doc = element_to_dict(x)
        doc['describe'] = x.describe()
        return doc

    def report(self, manifest: RunManifest, result: Dict[str, Any]) -> Dict[str, Any]:
        document = {'manifest': manifest.to_dict(), 'result': result}
        if self.validate:
            validate_document('report', document)
        return document

    # ---------- 写出 ----------

    def write(self, document: Dict[str, Any], output: Optional[str] = None,
              stream: Optional[TextIO] = None) -> str:
        """写出到文件或标准输出，返回序列化文本"""
        text = dumps_report(document)
        if output:
            directory = os.path.dirname(output)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(output, 'w', encoding='utf-8') as f:
                f.write(text)
            logger.info(f"报告已写入: {output}")
        else:
            (stream or sys.stdout).write(text)
        return text
