"""
파일 Repository 단위 테스트 - 레이어/근사/구적 규칙/보고서 파일 포맷
"""
import numpy as np
import pytest

from src.errors import DomainError, LayerFormatError
from src.numerics.approximation import fit
from src.numerics.mz_analysis import build_design
from src.numerics.pointsets import fibonacci_layer, gauss_product_layer
from src.numerics.quadrature import lsq_weights
from src.repositories import (
    ApproximantRepository,
    BaseFileRepository,
    LayerRepository,
    ReportRepository,
    RuleRepository,
)
from src.repositories.base import read_cache


@pytest.fixture(autouse=True)
def clear_read_cache():
    read_cache.clear()
    yield
    read_cache.clear()


class TestBaseFileRepository:
    def test_float_format_round_trips_exactly(self):
        value = 0.1 + 0.2
        assert float(BaseFileRepository.format_float(value)) == value

    def test_atomic_write_creates_directories(self, tmp_path):
        target = tmp_path / "a" / "b" / "out.txt"
        BaseFileRepository.atomic_write_text(str(target), "hello\n")
        assert target.read_text(encoding="utf-8") == "hello\n"
        assert [p.name for p in target.parent.iterdir()] == ["out.txt"]

    def test_comments_and_blank_lines(self, tmp_path):
        path = tmp_path / "m.txt"
        path.write_text("# note\n\n1 2 3\n", encoding="utf-8")
        comments, data = BaseFileRepository.read_lines(str(path))
        assert comments == ["note"]
        assert data == ["1 2 3"]

    def test_bad_column_count(self, tmp_path):
        path = tmp_path / "m.txt"
        path.write_text("1 2\n", encoding="utf-8")
        with pytest.raises(LayerFormatError) as exc:
            BaseFileRepository.read_matrix(str(path), 3)
        assert exc.value.context["row"] == 1


class TestLayerRepository:
    def test_save_and_load_preserve_layer(self, tmp_path):
        repo = LayerRepository()
        layer = fibonacci_layer(3, 2.0)
        path = repo.save(layer, str(tmp_path / "layer.txt"))
        loaded = repo.load(path)
        assert loaded.n == 3
        assert np.array_equal(loaded.points, layer.points)
        assert np.array_equal(loaded.weights, layer.weights)
        assert loaded.provenance["generator"] == "fibonacci"

    def test_header_line(self, tmp_path):
        path = LayerRepository().save(gauss_product_layer(1), str(tmp_path / "g.txt"))
        lines = open(path, encoding="utf-8").read().splitlines()
        assert lines[0].startswith("# provenance:")
        assert lines[1] == "2 1 8"
        assert len(lines) == 10

    def test_data_lines_follow_layer_format(self, tmp_path):
        layer = fibonacci_layer(2, 2.0)
        path = LayerRepository().save(layer, str(tmp_path / "f.txt"))
        lines = [line for line in open(path, encoding="utf-8").read().splitlines() if not line.startswith("#")]
        assert lines[0] == f"2 2 {layer.size}"
        table = np.array([[float(v) for v in line.split()] for line in lines[1:]])
        assert table.shape == (layer.size, 4)
        assert np.array_equal(table[:, :3], layer.points)
        assert np.array_equal(table[:, 3], layer.weights)

    def test_file_without_provenance_loads(self, tmp_path):
        layer = gauss_product_layer(1)
        path = LayerRepository().save(layer, str(tmp_path / "g.txt"))
        text = open(path, encoding="utf-8").read()
        plain = tmp_path / "plain.txt"
        body = [line for line in text.splitlines() if not line.startswith("#")]
        plain.write_text("\n".join(body) + "\n", encoding="utf-8")
        loaded = LayerRepository().load(str(plain))
        assert loaded.provenance == {}
        assert np.array_equal(loaded.points, layer.points)
        assert np.array_equal(loaded.weights, layer.weights)

    def test_load_is_cached(self, tmp_path):
        repo = LayerRepository()
        path = repo.save(gauss_product_layer(2), str(tmp_path / "g.txt"))
        assert repo.load(path) is repo.load(path)

    def test_count_mismatch(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("2 0 2\n0 0 1 1\n", encoding="utf-8")
        with pytest.raises(LayerFormatError):
            LayerRepository().load(str(path))

    def test_unsupported_dimension(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3 0 1\n0 0 0 1 1\n", encoding="utf-8")
        with pytest.raises(LayerFormatError):
            LayerRepository().load(str(path))

    def test_off_sphere_point_rejected(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("2 0 1\n0 0 1.1 1\n", encoding="utf-8")
        with pytest.raises(DomainError):
            LayerRepository().load(str(path))


class TestApproximantRepository:
    def test_round_trip(self, tmp_path, rng):
        sys = build_design(fibonacci_layer(3, 2.0), 3)
        approx = fit(sys, rng.standard_normal(sys.layer.size))
        repo = ApproximantRepository()
        loaded = repo.load(repo.save(approx, str(tmp_path / "p.txt")))
        assert loaded.n == 3
        assert np.array_equal(loaded.coefficients, approx.coefficients)

    def test_wrong_count(self, tmp_path):
        path = tmp_path / "p.txt"
        path.write_text("2 1\n1\n2\n", encoding="utf-8")
        with pytest.raises(LayerFormatError):
            ApproximantRepository().load(str(path))


class TestRuleRepository:
    def test_file_keeps_weights_exactly(self, tmp_path):
        sys = build_design(fibonacci_layer(3, 2.0), 3)
        rule = lsq_weights(sys)
        path = RuleRepository().save(rule, str(tmp_path / "r.txt"))
        lines = open(path, encoding="utf-8").read().splitlines()
        assert lines[0] == f"2 3 {sys.layer.size} 3"
        table = np.array([[float(v) for v in line.split()] for line in lines[1:]])
        assert table.shape == (sys.layer.size, 4)
        assert np.array_equal(table[:, :3], sys.layer.points)
        assert np.array_equal(table[:, 3], rule.weights)


class TestReportRepository:
    def test_csv_blank_for_missing(self):
        text = ReportRepository().render_csv([
            {"n": 4, "l_n": 50, "kappa": 1.5, "err_l2": 0.25, "err_Sn": 0.125, "err_quad": 0.0},
            {"n": 6, "l_n": 20, "status": "mz_deficient"},
        ])
        lines = text.splitlines()
        assert lines[0] == "n,l_n,kappa,err_l2,err_Sn,err_quad,lebesgue"
        assert lines[1] == "4,50,1.5,0.25,0.125,0,"
        assert lines[2] == "6,20,,,,,"

    def test_values_length_checked(self, tmp_path):
        repo = ReportRepository()
        path = repo.save_values([1.0, 2.0], str(tmp_path / "v.txt"))
        assert repo.load_values(path).tolist() == [1.0, 2.0]
        with pytest.raises(LayerFormatError):
            repo.load_values(path, expected=3)

    def test_json_is_deterministic(self, tmp_path):
        repo = ReportRepository()
        report = {"b": 1.0, "a": np.float64(0.5)}
        first = open(repo.save_json(report, str(tmp_path / "a.json")), encoding="utf-8").read()
        second = open(repo.save_json(dict(reversed(list(report.items()))), str(tmp_path / "b.json")), encoding="utf-8").read()
        assert first == second
