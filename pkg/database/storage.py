# -*- coding: utf-8 -*-
"""
运行归档存储
保存与查询 CLI 运行报告
"""

import logging
from typing import Any, Dict, List, Optional

from sqlalchemy import select

from .connection import ArchiveConnectionManager
from .models import RunRecord

logger = logging.getLogger(__name__)


class RunArchive:
    """运行归档"""

    def __init__(self, connection: ArchiveConnectionManager):
        self.connection = connection
        self.connection.connect()

    @classmethod
    def open(cls, url: str) -> 'RunArchive':
        return cls(ArchiveConnectionManager(url))

    def save_run(self, manifest: Dict[str, Any], report: Dict[str, Any], digest: str) -> int:
        """保存一次运行，返回记录 id"""
        with self.connection.session_scope() as session:
            record = RunRecord(command=manifest.get('command', ''), seed=manifest.get('seed'),
                               manifest_digest=digest)
            record.set_arguments(manifest.get('arguments', {}))
            record.set_report(report)
            session.add(record)
            session.flush()
            run_id = record.id
        logger.info(f"archived run {run_id} ({manifest.get('command')})")
        return run_id

    def find_by_digest(self, digest: str) -> Optional[Dict[str, Any]]:
        with self.connection.session_scope() as session:
            record = session.execute(
                select(RunRecord).where(RunRecord.manifest_digest == digest).order_by(RunRecord.id.desc())
            ).scalars().first()
            return record.get_report() if record else None

    def list_runs(self, limit: int = 20) -> List[Dict[str, Any]]:
        with self.connection.session_scope() as session:
            records = session.execute(
                select(RunRecord).order_by(RunRecord.id.desc()).limit(limit)
            ).scalars().all()
            return [record.to_summary() for record in records]

    def close(self):
        self.connection.disconnect()
