"""Bundled reference data."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

__all__ = ["dataset1_corr_path"]


def dataset1_corr_path() -> Path:
    """Path to the bundled 7-variable weather-data correlation matrix.

    Correlations between sea-level pressure, air temperature, dew point,
    wind direction, wind speed, visibility and time of measurement,
    estimated from roughly 50k weather records.
    """
    return Path(resources.files("facpca").joinpath("data/dataset1_corr.csv"))
