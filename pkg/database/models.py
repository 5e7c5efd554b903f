# -*- coding: utf-8 -*-
"""
数据库模型定义
运行归档：每次 CLI 运行的清单与报告
"""

from sqlalchemy import Column, Integer, String, DateTime, Text, Index
from sqlalchemy.orm import declarative_base
from datetime import datetime
import json
import logging

logger = logging.getLogger(__name__)
Base = declarative_base()


class RunRecord(Base):
    """运行记录表"""
    __tablename__ = 'run_records'

    id = Column(Integer, primary_key=True, autoincrement=True)
    command = Column(String(64), nullable=False, index=True)
    arguments_json = Column(Text, nullable=True)  # JSON格式的参数
    seed = Column(Integer, nullable=True)
    manifest_digest = Column(String(64), nullable=False, index=True)  # 报告的 SHA-256
    report_json = Column(Text, nullable=False)
    created_at = Column(DateTime, default=datetime.utcnow, nullable=False)

    __table_args__ = (
        Index('idx_run_command_time', 'command', 'created_at'),
    )

    def set_arguments(self, arguments):
        self.arguments_json = json.dumps(arguments, ensure_ascii=False, sort_keys=True, default=str)

    def get_arguments(self):
        try:
            return json.loads(self.arguments_json) if self.arguments_json else {}
        except json.JSONDecodeError:
            logger.error(f"Failed to parse arguments JSON for run {self.id}")
            return {}

    def set_report(self, report_dict):
        """设置报告数据"""
        self.report_json = json.dumps(report_dict, ensure_ascii=False, sort_keys=True, indent=2)

    def get_report(self):
        """获取报告数据"""
        try:
            return json.loads(self.report_json) if self.report_json else {}
        except json.JSONDecodeError:
            logger.error(f"Failed to parse report JSON for run {self.id}")
            return {}

    def to_summary(self):
        return {
            'id': self.id,
            'command': self.command,
            'seed': self.seed,
            'digest': self.manifest_digest,
            'created_at': self.created_at.isoformat() if self.created_at else None,
        }
