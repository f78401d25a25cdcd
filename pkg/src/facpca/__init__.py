"""Principal component and exploratory factor analysis on correlation matrices.

The library covers the shared PCA/FA pipeline (standardization, Pearson
correlation, Jacobi eigendecomposition, factor loadings, Varimax rotation)
and a retention rule that keeps adding factors until every variable has
most of its variance explained.
"""

from .eigen import EigenDecomposition, compose_rotation, eigen_symmetric, plane_rotation
from .errors import (
    ConvergenceError,
    DataError,
    DegenerateColumnError,
    FacpcaError,
    InconsistentModelError,
    NotPositiveSemidefiniteError,
    OrderError,
    ParseError,
    PlaneIndexError,
    ShapeError,
    SizeError,
    ThresholdError,
)
from .factors import (
    FactorModel,
    LoadingMatrix,
    build_model,
    communalities,
    cumulative_communalities,
    full_loadings,
    simulate,
    truncate,
)
from .pipeline import (
    PcaResult,
    pc_variable_determination,
    pca_modified,
    project,
    verify_artifact,
)
from .retention import (
    RetentionReport,
    VarianceTable,
    half_count,
    kaiser_count,
    minvar_count,
    percentage_count,
    scree_data,
    variance_table,
)
from .stats import (
    CorrelationMatrix,
    DataMatrix,
    VariableStats,
    correlation,
    correlation_matrix,
    determination_matrix,
    standardize,
    summarize,
)
from .varimax import RotationResult, optimal_plane_angle, varimax, varimax_objective

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # stats
    "DataMatrix",
    "VariableStats",
    "CorrelationMatrix",
    "summarize",
    "standardize",
    "correlation",
    "correlation_matrix",
    "determination_matrix",
    # eigen
    "EigenDecomposition",
    "plane_rotation",
    "compose_rotation",
    "eigen_symmetric",
    # factors
    "LoadingMatrix",
    "FactorModel",
    "full_loadings",
    "truncate",
    "communalities",
    "cumulative_communalities",
    "build_model",
    "simulate",
    # varimax
    "RotationResult",
    "varimax_objective",
    "optimal_plane_angle",
    "varimax",
    # retention
    "RetentionReport",
    "VarianceTable",
    "variance_table",
    "kaiser_count",
    "percentage_count",
    "half_count",
    "minvar_count",
    "scree_data",
    # pipeline
    "PcaResult",
    "project",
    "pca_modified",
    "pc_variable_determination",
    "verify_artifact",
    # errors
    "FacpcaError",
    "SizeError",
    "DataError",
    "DegenerateColumnError",
    "PlaneIndexError",
    "ShapeError",
    "NotPositiveSemidefiniteError",
    "ConvergenceError",
    "ThresholdError",
    "OrderError",
    "InconsistentModelError",
    "ParseError",
]
