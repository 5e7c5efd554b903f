# -*- coding: utf-8 -*-
"""
运行监控模块
记录各计算阶段的耗时与进程内存峰值
"""

import time
import threading
from collections import defaultdict
from contextlib import contextmanager
from datetime import datetime
from typing import Dict, List, Any
import logging

import psutil

logger = logging.getLogger(__name__)


class RunMonitor:
    """运行监控器"""

    def __init__(self, slow_stage_seconds: float = 60.0):
        self.slow_stage_seconds = slow_stage_seconds
        self.stages: Dict[str, List[float]] = defaultdict(list)
        self.lock = threading.Lock()
        self.start_time = time.time()
        self._process = psutil.Process()
        self.peak_rss_mb = self._rss_mb()

    def _rss_mb(self) -> float:
        try:
            return self._process.memory_info().rss / (1024 * 1024)
        except psutil.Error as e:
            logger.debug(f"无法读取进程内存: {e}")
            return 0.0

    def sample_memory(self) -> float:
        rss = self._rss_mb()
        with self.lock:
            self.peak_rss_mb = max(self.peak_rss_mb, rss)
        return rss

    def record_stage(self, name: str, seconds: float):
        """记录阶段耗时"""
        with self.lock:
            self.stages[name].append(seconds)
        if seconds > self.slow_stage_seconds:
            logger.warning(f"stage {name} took {seconds:.1f}s")

    @contextmanager
    def stage(self, name: str):
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.record_stage(name, time.perf_counter() - start)
            self.sample_memory()

    def get_stage_summary(self, name: str) -> Dict[str, Any]:
        with self.lock:
            values = list(self.stages.get(name, []))
        if not values:
            return {}
        return {
            'count': len(values),
            'total_seconds': sum(values),
            'max_seconds': max(values),
        }

    def get_run_report(self) -> Dict[str, Any]:
        """生成运行报告"""
        self.sample_memory()
        with self.lock:
            names = sorted(self.stages)
        return {
            'generated_at': datetime.now().isoformat(),
            'wall_seconds': time.time() - self.start_time,
            'peak_rss_mb': round(self.peak_rss_mb, 1),
            'stages': {name: self.get_stage_summary(name) for name in names},
        }
