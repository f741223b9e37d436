"""
response_formatter 단위 테스트 - 결정적 JSON, 실수 표기, _meta
"""
import json
import math

import numpy as np

from src.models.schemas import FORMAT_VERSION
from src.utils.response_formatter import (
    add_metadata,
    format_number,
    render_json,
    round_significant,
    sanitize_for_json,
)


class TestSanitize:
    def test_numpy_types_become_python(self):
        out = sanitize_for_json({"a": np.int64(3), "b": np.float64(0.5), "c": np.array([1.0, 2.0]), "d": np.bool_(True)})
        assert out == {"a": 3, "b": 0.5, "c": [1.0, 2.0], "d": True}
        assert type(out["a"]) is int

    def test_non_finite_become_null(self):
        assert sanitize_for_json([math.nan, math.inf, 1.0]) == [None, None, 1.0]


class TestRender:
    def test_seventeen_digits(self):
        assert format_number(0.1) == "0.10000000000000001"
        assert format_number(2.0) == "2.0"
        assert format_number(1e-20) == "9.9999999999999995e-21"

    def test_keys_sorted_and_parseable(self):
        text = render_json({"z": 1, "a": {"y": [1.5, None], "b": "한글"}})
        assert text.index('"a"') < text.index('"z"')
        assert json.loads(text) == {"z": 1, "a": {"y": [1.5, None], "b": "한글"}}

    def test_same_input_same_bytes(self):
        report = {"rows": [{"n": 2, "err": 0.1}, {"n": 4, "err": 0.01}]}
        assert render_json(report) == render_json(json.loads(render_json(report)))


class TestMetadata:
    def test_meta_block(self):
        out = add_metadata({"n": 4}, "mz", {"layer": "x.txt"})
        meta = out["_meta"]
        assert meta["format_version"] == FORMAT_VERSION
        assert meta["command"] == "mz"
        assert meta["config"] == {"layer": "x.txt"}
        assert meta["response_type"] == "mz"
        assert set(meta["tolerances"]) == {"rank_tol", "eig_tol"}

    def test_error_response_type(self):
        out = add_metadata({"error_code": "MZ_DEFICIENT"}, "fit")
        assert out["_meta"]["response_type"] == "error"

    def test_kappa_rounding(self):
        assert round_significant(1.23456789, 6) == 1.23457
