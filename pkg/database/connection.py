# -*- coding: utf-8 -*-
"""
数据库连接管理器
负责归档数据库引擎与会话的创建和释放
"""

import logging
from typing import Optional
from contextlib import contextmanager

from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import sessionmaker, Session
from sqlalchemy.pool import StaticPool
from sqlalchemy.exc import SQLAlchemyError

from core.exceptions import ArchiveError
from .models import Base

logger = logging.getLogger(__name__)


class ArchiveConnectionManager:
    """归档数据库连接管理器"""

    def __init__(self, url: str = "sqlite:///gradus_runs.db", echo: bool = False):
        self.url = url
        self.echo = echo
        self.engine: Optional[Engine] = None
        self.SessionLocal: Optional[sessionmaker] = None

    def connect(self) -> bool:
        """连接到数据库并建表"""
        if self.engine:
            return True
        try:
            options = {'echo': self.echo}
            if self.url in ('sqlite://', 'sqlite:///:memory:'):
                # 内存库须共享同一连接
                options.update(poolclass=StaticPool, connect_args={'check_same_thread': False})
            self.engine = create_engine(self.url, **options)
            self.SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=self.engine)
            Base.metadata.create_all(bind=self.engine)
            logger.debug(f"archive connected: {self.url}")
            return True
        except SQLAlchemyError as e:
            self.engine = None
            self.SessionLocal = None
            raise ArchiveError(f"cannot open run archive {self.url}", original_error=e)

    def disconnect(self):
        if self.engine:
            self.engine.dispose()
        self.engine = None
        self.SessionLocal = None

    close = disconnect

    @contextmanager
    def session_scope(self) -> Session:
        """获取数据库会话的上下文管理器"""
        if not self.SessionLocal:
            raise ArchiveError("archive not connected, call connect() first")
        session = self.SessionLocal()
        try:
            yield session
            session.commit()
        except SQLAlchemyError as e:
            session.rollback()
            logger.error(f"数据库操作失败: {e}")
            raise ArchiveError("archive operation failed", original_error=e)
        except Exception:
            session.rollback()
            raise
        finally:
            session.close()

    def __enter__(self):
        self.connect()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.disconnect()
