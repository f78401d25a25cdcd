import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from facpca import DataError, ParseError, SizeError, ThresholdError
from facpca.datasets import dataset1_corr_path
from facpca.reporting import (
    CORRELATION_CSV,
    RAW_CSV,
    RunConfig,
    emit_scree,
    ingest,
    read_correlation_csv,
    read_data_csv,
    run_report,
)
from facpca.stats import CorrelationMatrix, DataMatrix

from conftest import permuted_sign_matched_diff
from reference_values import (
    REF_EIGENVALUES,
    REF_LOADINGS_4F_ROTATED,
    WEATHER_CORR,
)


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


RAW_SAMPLE = "a,b,c\n1,1,2\n2,3,3\n2,2,1\n5,4,4\n"


# ---------------------------------------------------------------------------
# ingestion


def test_bundled_fixture_ingests_to_weather_matrix():
    result = ingest(dataset1_corr_path(), CORRELATION_CSV)
    corr = result.data
    assert isinstance(corr, CorrelationMatrix)
    assert corr.size == 7
    assert corr.labels == tuple(f"x{i}" for i in range(1, 8))
    assert corr.entries[1, 2] == 0.875
    assert_allclose(corr.entries, WEATHER_CORR)


def test_raw_csv_roundtrip(tmp_path):
    path = _write(tmp_path / "raw.csv", RAW_SAMPLE)
    data, dropped = read_data_csv(path)
    assert isinstance(data, DataMatrix)
    assert dropped == 0
    assert data.values.shape == (4, 3)
    assert data.labels == ("a", "b", "c")


def test_raw_csv_drops_bad_rows(tmp_path):
    path = _write(tmp_path / "raw.csv", "a,b\n1,2\nx,3\n4,5\n6,\n7,8\n")
    data, dropped = read_data_csv(path)
    assert dropped == 2
    assert data.values.shape == (3, 2)


def test_raw_csv_drops_nonfinite_rows(tmp_path):
    path = _write(tmp_path / "raw.csv", "a,b\n1,2\nnan,3\n4,inf\n5,6\n")
    _, dropped = read_data_csv(path)
    assert dropped == 2


def test_raw_csv_field_count_is_a_parse_error(tmp_path):
    path = _write(tmp_path / "raw.csv", "a,b\n1,2\n3,4,5\n")
    with pytest.raises(ParseError, match="line 3"):
        read_data_csv(path)


def test_raw_csv_too_few_usable_rows(tmp_path):
    path = _write(tmp_path / "raw.csv", "a,b\n1,2\nbad,2\n")
    with pytest.raises(SizeError):
        read_data_csv(path)


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(ParseError, match="not found"):
        ingest(tmp_path / "absent.csv", RAW_CSV)


def test_correlation_csv_requires_matching_labels(tmp_path):
    path = _write(
        tmp_path / "corr.csv", ",a,b\na,1,0.5\nWRONG,0.5,1\n"
    )
    with pytest.raises(DataError, match="label"):
        read_correlation_csv(path)


def test_correlation_csv_rejects_nonnumeric(tmp_path):
    path = _write(tmp_path / "corr.csv", ",a,b\na,1,oops\nb,0.5,1\n")
    with pytest.raises(ParseError, match="line 2"):
        read_correlation_csv(path)


def test_correlation_csv_rejects_gross_asymmetry(tmp_path):
    path = _write(tmp_path / "corr.csv", ",a,b\na,1,0.5\nb,0.3,1\n")
    with pytest.raises(DataError, match="asymmetric"):
        read_correlation_csv(path)


def test_correlation_csv_symmetrizes_small_asymmetry(tmp_path):
    path = _write(
        tmp_path / "corr.csv", ",a,b\na,1,0.5000001\nb,0.4999999,1\n"
    )
    corr = read_correlation_csv(path)
    assert corr.entries[0, 1] == pytest.approx(0.5, abs=1e-12)
    assert corr.entries[0, 1] == corr.entries[1, 0]


def test_correlation_csv_enforces_unit_diagonal(tmp_path):
    path = _write(tmp_path / "corr.csv", ",a,b\na,0.9,0.5\nb,0.5,1\n")
    with pytest.raises(DataError, match="diagonal"):
        read_correlation_csv(path)


def test_correlation_csv_rounds_diagonal_to_one(tmp_path):
    path = _write(tmp_path / "corr.csv", ",a,b\na,0.9999999,0.5\nb,0.5,1\n")
    corr = read_correlation_csv(path)
    assert corr.entries[0, 0] == 1.0


# ---------------------------------------------------------------------------
# RunConfig


def test_run_config_validation(tmp_path):
    with pytest.raises(ThresholdError):
        RunConfig("x.csv", RAW_CSV, epsilon=0.5)
    with pytest.raises(ThresholdError):
        RunConfig("x.csv", RAW_CSV, percent_threshold=0.0)
    with pytest.raises(DataError):
        RunConfig("x.csv", RAW_CSV, rotate="oblimin")
    with pytest.raises(DataError):
        RunConfig("x.csv", RAW_CSV, output_format="xlsx")
    with pytest.raises(DataError):
        RunConfig("x.csv", "spreadsheet")
    with pytest.raises(SizeError):
        RunConfig("x.csv", RAW_CSV, factor_count_override=0)


def test_output_dir_defaults_to_env(monkeypatch, tmp_path):
    monkeypatch.setenv("FACPCA_OUT", str(tmp_path / "fromenv"))
    config = RunConfig("x.csv", RAW_CSV)
    assert config.output_dir == str(tmp_path / "fromenv")
    monkeypatch.delenv("FACPCA_OUT")
    assert RunConfig("x.csv", RAW_CSV).output_dir == "."


# ---------------------------------------------------------------------------
# run_report


EXPECTED_TABLES = {
    "correlation_matrix",
    "determination_matrix",
    "eigenvalues",
    "explained_variance",
    "loadings_full",
    "cumulative_communality_pct",
    "retention",
    "criteria_comparison",
    "loadings_truncated",
    "common_variances_truncated",
    "loadings_rotated",
    "common_variances_rotated",
}


def _report_config(tmp_path, **overrides):
    defaults = dict(
        input_path=str(dataset1_corr_path()),
        input_kind=CORRELATION_CSV,
        output_dir=str(tmp_path),
    )
    defaults.update(overrides)
    return RunConfig(**defaults)


def test_report_bundle_contents(tmp_path):
    bundle = run_report(_report_config(tmp_path))
    assert set(bundle) == EXPECTED_TABLES
    for name in EXPECTED_TABLES:
        assert (tmp_path / f"{name}.csv").exists()
    assert (tmp_path / "scree.svg").exists()
    assert (tmp_path / "scree.txt").exists()
    retention = bundle["retention"]
    assert retention.rows[1][0] == "MinVar"
    assert retention.rows[3][1:] == ["5", "7", "7", "4", "6", "2", "6"]
    criteria = dict((row[0], row[1]) for row in bundle["criteria_comparison"].rows)
    assert criteria["kaiser"] == "3"
    assert criteria["half_of_variables"] == "3"
    assert criteria["explained_variance(80%)"] == "4"
    assert criteria["min_variance(epsilon=0.51)"] == "3"


def test_report_summary_table_only_for_raw(tmp_path):
    raw = _write(tmp_path / "raw.csv", RAW_SAMPLE)
    config = RunConfig(
        str(raw), RAW_CSV, output_dir=str(tmp_path / "out"), rotate="none"
    )
    bundle = run_report(config)
    assert "summary_statistics" in bundle
    stats = bundle["summary_statistics"]
    assert stats.header == ["statistic", "a", "b", "c"]
    assert stats.rows[0][0] == "Mean"


def test_report_four_factor_override_matches_reference(tmp_path):
    bundle = run_report(_report_config(tmp_path, factor_count_override=4))
    table = bundle["loadings_rotated"]
    got = np.array([[float(cell) for cell in row[1:5]] for row in table.rows])
    assert permuted_sign_matched_diff(got, REF_LOADINGS_4F_ROTATED) < 2e-2


def test_report_no_rotation_keeps_full_loadings(tmp_path):
    bundle = run_report(
        _report_config(tmp_path, factor_count_override=7, rotate="none")
    )
    assert "loadings_rotated" not in bundle
    full = [row[1:] for row in bundle["loadings_full"].rows]
    truncated = [row[1:-1] for row in bundle["loadings_truncated"].rows]
    assert truncated == full


def test_report_override_beyond_n_fails(tmp_path):
    with pytest.raises(SizeError):
        run_report(_report_config(tmp_path, factor_count_override=8))


def test_written_correlation_matrix_reingests(tmp_path):
    run_report(_report_config(tmp_path))
    corr = read_correlation_csv(tmp_path / "correlation_matrix.csv")
    assert np.max(np.abs(corr.entries - WEATHER_CORR)) < 1e-9


def test_report_outputs_are_byte_deterministic(tmp_path):
    first = tmp_path / "one"
    second = tmp_path / "two"
    run_report(_report_config(first))
    run_report(_report_config(second))
    names = sorted(p.name for p in first.iterdir())
    assert names == sorted(p.name for p in second.iterdir())
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_report_json_format(tmp_path):
    bundle = run_report(_report_config(tmp_path, output_format="json"))
    payload = json.loads((tmp_path / "report.json").read_text())
    assert set(payload) == set(bundle)
    assert payload["retention"]["rows"][3][1:] == ["5", "7", "7", "4", "6", "2", "6"]
    assert not (tmp_path / "retention.csv").exists()


# ---------------------------------------------------------------------------
# emit_scree


def test_scree_series_contents(tmp_path):
    svg_path, txt_path = emit_scree(REF_EIGENVALUES, tmp_path / "scree.svg")
    lines = txt_path.read_text().splitlines()
    assert len(lines) == 7
    assert lines[0] == "1 2.29"
    svg = svg_path.read_text()
    assert svg.startswith("<svg")
    assert "polyline" in svg
    assert "Eigenvalue" in svg and "Component number" in svg


def test_scree_single_point(tmp_path):
    svg_path, txt_path = emit_scree([1.5], tmp_path / "single.svg")
    assert txt_path.read_text() == "1 1.5\n"
    assert "<circle" in svg_path.read_text()


def test_scree_regeneration_is_byte_identical(tmp_path):
    emit_scree(REF_EIGENVALUES, tmp_path / "a.svg")
    emit_scree(REF_EIGENVALUES, tmp_path / "b.svg")
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()
