import numpy as np
import pytest
from numpy.testing import assert_allclose

from facpca import (
    DataMatrix,
    DegenerateColumnError,
    InconsistentModelError,
    ShapeError,
    SizeError,
    build_model,
    eigen_symmetric,
    full_loadings,
    pc_variable_determination,
    pca_modified,
    project,
    simulate,
    standardize,
    truncate,
    verify_artifact,
)

from conftest import random_correlation_psd
from reference_values import REF_BASIS_PRODUCT, WEATHER_LABELS


@pytest.fixture(scope="module")
def weather_synthetic(weather_eig):
    """Synthetic observations whose sample correlations track the weather matrix."""
    model = build_model(full_loadings(weather_eig, WEATHER_LABELS))
    return simulate(model, 20_000, seed=101)


@pytest.fixture(scope="module")
def weather_run(weather_synthetic):
    return pca_modified(weather_synthetic, 0.51)


def _biased_variances(matrix):
    centered = matrix - matrix.mean(axis=0)
    return np.mean(centered**2, axis=0)


# ---------------------------------------------------------------------------
# project


def test_identity_projection_returns_input():
    rng = np.random.default_rng(40)
    data = standardize(
        DataMatrix(rng.standard_normal((50, 3)), ("a", "b", "c"))
    )
    scores = project(data, np.eye(3), 3)
    assert_allclose(scores, data.values)


def test_two_variable_score_variances():
    eig = eigen_symmetric(np.array([[1.0, 0.6], [0.6, 1.0]]), correlation_input=True)
    model = build_model(full_loadings(eig, ("a", "b")))
    data = standardize(simulate(model, 10_000, seed=41))
    sample_eig = eigen_symmetric(
        np.corrcoef(data.values, rowvar=False), correlation_input=True
    )
    scores = project(data, sample_eig.eigenvectors, 2)
    variances = _biased_variances(scores)
    assert variances[0] == pytest.approx(1.6, abs=0.05)
    assert variances[1] == pytest.approx(0.4, abs=0.05)


def test_score_variances_equal_eigenvalues(weather_synthetic):
    data = standardize(weather_synthetic)
    from facpca import correlation_matrix

    eig = eigen_symmetric(correlation_matrix(data).entries, correlation_input=True)
    scores = project(data, eig.eigenvectors, eig.size)
    assert np.max(np.abs(_biased_variances(scores) - eig.eigenvalues)) < 1e-8


def test_project_shape_checks():
    rng = np.random.default_rng(42)
    data = standardize(DataMatrix(rng.standard_normal((20, 3)), ("a", "b", "c")))
    with pytest.raises(ShapeError):
        project(data, np.eye(4), 2)
    with pytest.raises(ShapeError):
        project(data, np.eye(3), 0)
    with pytest.raises(ShapeError):
        project(data, np.eye(3), 4)


# ---------------------------------------------------------------------------
# pca_modified


def test_weather_synthetic_retains_three_components(weather_synthetic, weather_run):
    from facpca import correlation_matrix

    sample = correlation_matrix(weather_synthetic)
    from reference_values import WEATHER_CORR

    assert np.max(np.abs(sample.entries - WEATHER_CORR)) < 0.02
    assert weather_run.retained == 3
    assert weather_run.scores.shape == (20_000, 3)
    assert weather_run.loadings.k == 3


def test_perfectly_correlated_pair_collapses_to_one_component():
    rng = np.random.default_rng(43)
    x = rng.standard_normal(500)
    data = DataMatrix(np.column_stack([x, 2.0 * x]), ("x", "y"))
    result = pca_modified(data, 0.51)
    assert result.retained == 1
    assert result.eig.eigenvalues[0] == pytest.approx(2.0, abs=1e-10)
    assert _biased_variances(result.scores)[0] == pytest.approx(2.0, abs=1e-8)


def test_independent_columns_need_every_component():
    # the exact-identity limit (tested in test_retention) always keeps every
    # component; a sampled near-identity matrix does so only when its small
    # eigenvectors concentrate on single variables, which this seed gives
    rng = np.random.default_rng(3)
    data = DataMatrix(rng.standard_normal((10_000, 4)), ("a", "b", "c", "d"))
    result = pca_modified(data, 0.51)
    assert result.retained == 4


def test_stage_tag_on_failure():
    data = DataMatrix(
        np.column_stack([np.arange(10.0), np.full(10, 3.0)]), ("ok", "flat")
    )
    with pytest.raises(DegenerateColumnError, match=r"step \(01-04\)"):
        pca_modified(data, 0.51)


def test_result_invariants(weather_run):
    scores = weather_run.scores
    m = scores.shape[0]
    assert np.max(np.abs(scores.mean(axis=0))) < 1e-10
    variances = _biased_variances(scores)
    assert np.max(np.abs(variances - weather_run.eig.eigenvalues[:3])) < 1e-8
    centered = scores - scores.mean(axis=0)
    cov = centered.T @ centered / m
    denom = np.sqrt(np.outer(variances, variances))
    corr = cov / denom - np.eye(3)
    assert np.max(np.abs(corr)) < 1e-8


def test_score_variances_sum_to_variable_count(weather_synthetic):
    data = standardize(weather_synthetic)
    from facpca import correlation_matrix

    eig = eigen_symmetric(correlation_matrix(data).entries, correlation_input=True)
    scores = project(data, eig.eigenvectors, eig.size)
    assert float(np.sum(_biased_variances(scores))) == pytest.approx(7.0, abs=1e-8)


def test_full_projection_is_invertible(weather_synthetic):
    data = standardize(weather_synthetic)
    from facpca import correlation_matrix

    eig = eigen_symmetric(correlation_matrix(data).entries, correlation_input=True)
    scores = project(data, eig.eigenvectors, eig.size)
    recovered = scores @ eig.eigenvectors.T
    assert np.max(np.abs(recovered - data.values)) < 1e-10


# ---------------------------------------------------------------------------
# pc_variable_determination


def test_determination_equals_squared_loadings(weather_synthetic):
    data = standardize(weather_synthetic)
    from facpca import correlation_matrix

    eig = eigen_symmetric(correlation_matrix(data).entries, correlation_input=True)
    scores = project(data, eig.eigenvectors, eig.size)
    determination = pc_variable_determination(data, scores)
    loadings = full_loadings(eig, WEATHER_LABELS)
    assert np.max(np.abs(determination - loadings.entries**2)) < 1e-6
    assert np.max(np.abs(determination.sum(axis=1) - 1.0)) < 1e-6
    assert np.max(np.abs(determination.sum(axis=0) - eig.eigenvalues)) < 1e-6


def test_determination_identity_pattern():
    # exactly uncorrelated columns (orthogonalized) scored with U = I
    rng = np.random.default_rng(45)
    raw = rng.standard_normal((200, 3))
    q, _ = np.linalg.qr(raw - raw.mean(axis=0))
    data = standardize(DataMatrix(q, ("a", "b", "c")))
    determination = pc_variable_determination(data, np.array(data.values))
    assert np.max(np.abs(determination - np.eye(3))) < 1e-10


def test_determination_zero_variance_column_warns():
    rng = np.random.default_rng(46)
    x = rng.standard_normal(300)
    data = DataMatrix(np.column_stack([x, 2.0 * x]), ("x", "y"))
    std = standardize(data)
    eig = eigen_symmetric(
        np.array([[1.0, 1.0], [1.0, 1.0]]), correlation_input=True
    )
    scores = project(std, eig.eigenvectors, 2)
    with pytest.warns(UserWarning, match="zero variance"):
        determination = pc_variable_determination(std, scores)
    assert_allclose(determination[:, 1], [0.0, 0.0])


def test_determination_row_count_check(weather_synthetic):
    data = standardize(weather_synthetic)
    with pytest.raises(ShapeError):
        pc_variable_determination(data, np.zeros((10, 2)))


# ---------------------------------------------------------------------------
# verify_artifact


def test_weather_basis_product_matches_reference(weather_eig):
    loadings = full_loadings(weather_eig, WEATHER_LABELS)
    product, symmetric = verify_artifact(loadings, weather_eig.eigenvectors)
    assert symmetric
    assert np.max(np.abs(product - REF_BASIS_PRODUCT)) < 5e-3
    assert product[0, 0] == pytest.approx(0.987, abs=5e-3)
    assert product[1, 2] == pytest.approx(0.508, abs=5e-3)


def test_identity_input_gives_identity_product():
    eig = eigen_symmetric(np.eye(4), correlation_input=True)
    product, _ = verify_artifact(full_loadings(eig), eig.eigenvectors)
    assert_allclose(product, np.eye(4), atol=1e-12)


def test_product_symmetry_for_100_random_psd_matrices():
    rng = np.random.default_rng(47)
    for _ in range(100):
        n = int(rng.integers(2, 10))
        r = random_correlation_psd(rng, n)
        eig = eigen_symmetric(r, correlation_input=True)
        product, symmetric = verify_artifact(full_loadings(eig), eig.eigenvectors)
        assert symmetric
        assert np.max(np.abs(product - product.T)) < 1e-10


def test_mismatched_basis_raises(weather_eig):
    loadings = full_loadings(weather_eig, WEATHER_LABELS)
    shuffled = np.array(weather_eig.eigenvectors)[:, ::-1]
    with pytest.raises(InconsistentModelError):
        verify_artifact(loadings, shuffled)


def test_artifact_needs_full_loadings(weather_eig):
    loadings = truncate(full_loadings(weather_eig, WEATHER_LABELS), 3)
    with pytest.raises(SizeError):
        verify_artifact(loadings, weather_eig.eigenvectors)
