# -*- coding: utf-8 -*-
import json

import pytest

from core.exceptions import InputError, SchemaValidationError
from utils.export import ReportExporter, RunManifest, dumps_report, file_digest, text_digest
from utils.validators import validate_document


def test_dumps_report_is_deterministic():
    text = dumps_report({'b': 1, 'a': {'z': [1, 2], 'y': 'x'}})
    assert text == '{\n  "a": {\n    "y": "x",\n    "z": [\n      1,\n      2\n    ]\n  },\n  "b": 1\n}\n'
    assert text_digest(text) == text_digest(dumps_report({'a': {'y': 'x', 'z': [1, 2]}, 'b': 1}))


def test_manifest_document(tmp_path):
    path = tmp_path / "h.json"
    path.write_text('{"terms": {"H": 1}}', encoding='utf-8')
    manifest = RunManifest('nilorbits', {'samples': 64, 'algebra': 'sl2c-real-z2'}, seed=3)
    manifest.add_input(str(path))
    doc = manifest.to_dict()
    assert list(doc['arguments']) == ['algebra', 'samples']
    assert doc['input_digests'] == {'h.json': file_digest(str(path))}
    assert 'wall_seconds' not in doc
    validate_document('report', {'manifest': doc, 'result': {}})


def test_load_algebra_and_element(tmp_path, sl2):
    exporter = ReportExporter()
    algebra_path = tmp_path / "sl2.json"
    algebra_path.write_text(json.dumps(sl2.to_dict()), encoding='utf-8')
    loaded = exporter.load_algebra(str(algebra_path))
    assert loaded.table == sl2.table
    element_path = tmp_path / "e.json"
    element_path.write_text('{"terms": {"E": "1/2"}}', encoding='utf-8')
    x = exporter.load_element(loaded, str(element_path))
    assert x == loaded.from_terms({'E': '1/2'})
    assert ReportExporter.element_document(x)['describe'] == x.describe()


def test_load_multivector(tmp_path):
    path = tmp_path / "w.json"
    path.write_text('{"n": 8, "k": 4, "terms": [[[1, 2, 3, 4], "2"]]}', encoding='utf-8')
    w = ReportExporter().load_multivector(str(path))
    assert (w.n, w.k) == (8, 4)


def test_missing_and_malformed_files(tmp_path):
    exporter = ReportExporter()
    with pytest.raises(InputError, match="not found"):
        exporter.load_json(str(tmp_path / "absent.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("[1,", encoding='utf-8')
    with pytest.raises(InputError, match="not valid JSON"):
        exporter.load_json(str(broken))


def test_schema_violations():
    with pytest.raises(SchemaValidationError) as info:
        validate_document('algebra', {'name': 'x', 'modulus': 0, 'basis': ['a'], 'degrees': [0], 'brackets': []})
    assert info.value.path == 'modulus'
    with pytest.raises(SchemaValidationError):
        validate_document('element', {'algebra': 'sl2'})
    with pytest.raises(SchemaValidationError):
        validate_document('multivector', {'n': 3, 'k': 1, 'terms': [[[0], '1']]})
    with pytest.raises(InputError, match="unknown document kind"):
        validate_document('orbit', {})


def test_write_to_file(tmp_path):
    target = tmp_path / "reports" / "out.json"
    text = ReportExporter().write({'result': {'ok': True}}, str(target))
    assert target.read_text(encoding='utf-8') == text
