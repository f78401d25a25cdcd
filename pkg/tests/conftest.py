import itertools
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from reference_values import WEATHER_CORR, WEATHER_LABELS

from facpca import CorrelationMatrix, eigen_symmetric


@pytest.fixture(scope="session")
def weather_corr() -> CorrelationMatrix:
    return CorrelationMatrix(WEATHER_CORR, WEATHER_LABELS)


@pytest.fixture(scope="session")
def weather_eig(weather_corr):
    return eigen_symmetric(weather_corr.entries, correlation_input=True)


def sign_matched_diff(got: np.ndarray, want: np.ndarray) -> float:
    """Max abs difference after flipping each column of `got` to best match `want`."""
    assert got.shape == want.shape
    worst = 0.0
    for j in range(got.shape[1]):
        direct = float(np.max(np.abs(got[:, j] - want[:, j])))
        flipped = float(np.max(np.abs(got[:, j] + want[:, j])))
        worst = max(worst, min(direct, flipped))
    return worst


def permuted_sign_matched_diff(got: np.ndarray, want: np.ndarray) -> float:
    """Best sign-matched diff over all column permutations of `got`."""
    assert got.shape == want.shape
    return min(
        sign_matched_diff(got[:, perm], want)
        for perm in itertools.permutations(range(got.shape[1]))
    )


def random_correlation_psd(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random positive semidefinite matrix with a unit diagonal."""
    g = rng.standard_normal((n, n + 2))
    a = g @ g.T
    scale = np.sqrt(np.diag(a))
    return a / np.outer(scale, scale)
