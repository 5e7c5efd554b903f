# -*- coding: utf-8 -*-
import pytest

from core.exceptions import (EXIT_COMPUTATION, EXIT_INPUT, EXIT_UNDECIDED, ArchiveError, ComputationError,
                             ErrorHandler, GradusError, InputError, NotNilpotentError, PreconditionError,
                             SchemaValidationError, UndecidedError, exit_code_for, safe_operation)


def test_exit_codes_follow_hierarchy():
    assert exit_code_for(InputError()) == EXIT_INPUT
    assert exit_code_for(SchemaValidationError(path='basis/0')) == EXIT_INPUT
    assert exit_code_for(PreconditionError("h must lie in g_0")) == EXIT_COMPUTATION
    assert exit_code_for(ArchiveError()) == EXIT_COMPUTATION
    assert exit_code_for(UndecidedError()) == EXIT_UNDECIDED
    assert exit_code_for(RuntimeError("boom")) == EXIT_COMPUTATION


def test_error_codes_and_document():
    error = NotNilpotentError(original_error=ValueError("ad x has eigenvalue 2"))
    assert isinstance(error, ComputationError)
    doc = error.to_dict()
    assert doc['error_type'] == 'NotNilpotentError'
    assert doc['error_code'] == 'NOT_NILPOTENT'
    assert doc['original_error'] == "ad x has eigenvalue 2"


def test_convert_standard_errors():
    assert isinstance(ErrorHandler.convert(ZeroDivisionError()), ComputationError)
    converted = ErrorHandler.convert(ValueError("bad shape"), "solve")
    assert isinstance(converted, ComputationError)
    assert converted.message == "solve: bad shape"
    generic = ErrorHandler.convert(KeyError('x'))
    assert type(generic) is GradusError
    assert generic.error_code == 'OPERATION_ERROR'
    original = InputError("kept")
    assert ErrorHandler.convert(original) is original


def test_error_response():
    response = ErrorHandler.create_error_response(InputError("unknown catalog algebra"), 'catalog build')
    assert response['success'] is False
    assert response['operation'] == 'catalog build'
    assert response['error']['error_code'] == 'INPUT_ERROR'
    plain = ErrorHandler.create_error_response(RuntimeError("boom"))
    assert plain['error']['error_code'] == 'UNKNOWN_ERROR'


def test_safe_operation_converts_stray_errors():
    with pytest.raises(ComputationError) as info:
        with safe_operation("nilorbits"):
            raise ZeroDivisionError("division by zero")
    assert isinstance(info.value.original_error, ZeroDivisionError)
    with pytest.raises(InputError):
        with safe_operation("verify"):
            raise InputError("missing file")
