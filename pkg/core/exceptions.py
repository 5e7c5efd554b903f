# -*- coding: utf-8 -*-
"""
异常处理模块
gradus 的异常层次、统一错误响应以及错误处理装饰器/上下文管理器。

Every failure carries a stable ``error_code`` and maps to a process exit code:
input problems exit 2, failed computations exit 3, undecided verdicts under
``--strict`` exit 4.
"""

import logging
import traceback
from contextlib import contextmanager
from typing import Any, Dict, Optional

from sympy.polys.matrices.exceptions import DMError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_COMPUTATION = 3
EXIT_UNDECIDED = 4


# ==================== 自定义异常类 ====================

class GradusError(Exception):
    """gradus 基础异常"""

    exit_code = EXIT_COMPUTATION

    def __init__(self, message: str, error_code: str = None,
                 original_error: Exception = None):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.original_error = original_error

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'error_type': self.__class__.__name__,
            'message': self.message,
            'error_code': self.error_code,
            'original_error': str(self.original_error) if self.original_error else None
        }


class InputError(GradusError):
    """输入数据错误（解析、形状、字段不匹配）"""

    exit_code = EXIT_INPUT

    def __init__(self, message: str = "invalid input", **kwargs):
        kwargs.setdefault('error_code', "INPUT_ERROR")
        super().__init__(message, **kwargs)


class SchemaValidationError(InputError):
    """JSON 文档不符合 schema"""

    def __init__(self, message: str = "document does not match schema",
                 path: str = "", **kwargs):
        super().__init__(message, error_code="SCHEMA_ERROR", **kwargs)
        self.path = path

    def to_dict(self) -> Dict[str, Any]:
        return dict(super().to_dict(), path=self.path)


class ComputationError(GradusError):
    """计算失败"""

    def __init__(self, message: str = "computation failed", **kwargs):
        kwargs.setdefault('error_code', "COMPUTATION_ERROR")
        super().__init__(message, **kwargs)


class AxiomViolation(ComputationError):
    """结构常数不满足李代数公理"""

    def __init__(self, message: str, triple: Optional[tuple] = None, **kwargs):
        super().__init__(message, error_code="AXIOM_VIOLATION", **kwargs)
        self.triple = triple


class CalibrationError(ComputationError):
    """目录模型的常数标定失败"""

    def __init__(self, message: str = "bracket constants could not be calibrated", **kwargs):
        super().__init__(message, error_code="CALIBRATION_ERROR", **kwargs)


class NotNilpotentError(ComputationError):
    """元素不是幂零的"""

    def __init__(self, message: str = "element is not nilpotent", **kwargs):
        super().__init__(message, error_code="NOT_NILPOTENT", **kwargs)


class PreconditionError(ComputationError):
    """前置条件不成立"""

    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="PRECONDITION_FAILED", **kwargs)


class NumericToleranceError(ComputationError):
    """浮点残差超出容差"""

    def __init__(self, message: str, residual: float = None, **kwargs):
        super().__init__(message, error_code="NUMERIC_TOLERANCE", **kwargs)
        self.residual = residual


class ArchiveError(GradusError):
    """运行归档（数据库）错误"""

    def __init__(self, message: str = "run archive failure", **kwargs):
        super().__init__(message, error_code="ARCHIVE_ERROR", **kwargs)


class UndecidedError(GradusError):
    """--strict 模式下无法给出确定结论"""

    exit_code = EXIT_UNDECIDED

    def __init__(self, message: str = "verdict is undecided", **kwargs):
        super().__init__(message, error_code="UNDECIDED", **kwargs)


# ==================== 错误处理工具 ====================

class ErrorHandler:
    """错误处理器"""

    @staticmethod
    def convert(error: Exception, context: str = "") -> GradusError:
        """把底层异常转换为 gradus 异常"""
        if isinstance(error, GradusError):
            return error
        prefix = f"{context}: " if context else ""
        if isinstance(error, ZeroDivisionError):
            return ComputationError(f"{prefix}division by zero", original_error=error)
        if isinstance(error, DMError):
            return ComputationError(f"{prefix}matrix shape or domain mismatch: {error}",
                                    original_error=error)
        if isinstance(error, (ValueError, ArithmeticError)):
            return ComputationError(f"{prefix}{error}", original_error=error)
        return GradusError(f"{prefix}operation failed: {error}",
                           error_code="OPERATION_ERROR", original_error=error)

    @staticmethod
    def log_error(error: Exception, context: str = ""):
        """记录错误日志"""
        error_info = {
            'error_type': type(error).__name__,
            'error_message': str(error),
            'context': context,
        }
        if isinstance(error, GradusError):
            error_info.update(error.to_dict())
        else:
            error_info['traceback'] = traceback.format_exc()

        logger.error(f"gradus error - {context}: {error_info}")

    @staticmethod
    def create_error_response(error: Exception, operation: str = "") -> Dict[str, Any]:
        """创建统一的错误响应"""
        if isinstance(error, GradusError):
            return {
                'success': False,
                'error': error.to_dict(),
                'operation': operation
            }
        return {
            'success': False,
            'error': {
                'error_type': type(error).__name__,
                'message': str(error),
                'error_code': 'UNKNOWN_ERROR'
            },
            'operation': operation
        }


def exit_code_for(error: Exception) -> int:
    """异常对应的进程退出码"""
    if isinstance(error, GradusError):
        return error.exit_code
    return EXIT_COMPUTATION


# ==================== 上下文管理器 ====================

@contextmanager
def safe_operation(operation_name: str = ""):
    """安全操作上下文管理器"""
    try:
        yield
    except GradusError as e:
        ErrorHandler.log_error(e, operation_name)
        raise
    except Exception as e:
        converted = ErrorHandler.convert(e, operation_name)
        ErrorHandler.log_error(converted, operation_name)
        raise converted from e
