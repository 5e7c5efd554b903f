# -*- coding: utf-8 -*-
"""
JSON Schema 校验
"""

import json
import logging
import os
from functools import lru_cache
from typing import Any, Dict

import jsonschema

from core.exceptions import InputError, SchemaValidationError

logger = logging.getLogger(__name__)

SCHEMA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'schemas')
KINDS = ('algebra', 'element', 'multivector', 'report')


@lru_cache(maxsize=None)
def load_schema(kind: str) -> Dict[str, Any]:
    if kind not in KINDS:
        raise InputError(f"unknown document kind {kind!r}; known: {list(KINDS)}")
    path = os.path.join(SCHEMA_DIR, f"{kind}.schema.json")
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def validate_document(kind: str, document: Any) -> None:
    """校验失败时抛出 SchemaValidationError"""
    try:
        jsonschema.validate(instance=document, schema=load_schema(kind))
    except jsonschema.ValidationError as e:
        path = '/'.join(str(p) for p in e.absolute_path)
        logger.debug(f"{kind} document failed validation at {path or '<root>'}: {e.message}")
        raise SchemaValidationError(f"{kind} document invalid at {path or '<root>'}: {e.message}",
                                    path=path, original_error=e)
