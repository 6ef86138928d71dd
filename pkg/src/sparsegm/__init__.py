"""High-dimensional sparse undirected graphical model estimation.

Pipeline: simulate or load data, optionally Gaussianize the marginals by
rank transform, screen the correlation matrix (exact block decomposition
or lossy top-k neighborhoods), estimate a regularization path
(neighborhood regression, graphical lasso, or correlation thresholding),
and pick a penalty by stability, permutation calibration, or extended BIC.
"""

from .datagen import (CovarianceModel, GraphStructureSpec, SyntheticDataset,
                      build_covariance_model, generate_structure,
                      sample_dataset)
from .dataset import Dataset
from .errors import (ConfigError, DegenerateColumnError, DegeneratePathError,
                     FormatError, InputError, NumericError, ParameterError,
                     SparseGMError)
from .estimators import (GraphPath, LambdaSequence, PrecisionPath,
                         correlation_matrix, correlation_threshold_path,
                         glasso_kkt_residual, glasso_path, lambda_max,
                         lambda_sequence, mb_path)
from .graphs import AdjacencyMatrix
from .io import (export_dot, read_dataset_csv, read_graph_edgelist,
                 write_dataset_csv, write_graph_edgelist)
from .lasso import LassoSolution, kkt_violation, lasso_cd
from .nonparanormal import npn_truncation, truncation_level
from .pipeline import (BenchmarkScenario, PipelineConfig, benchmark,
                       benchmark_csv, run_pipeline)
from .screening import (BlockPartition, CovarianceSummary, NeighborhoodPlan,
                        lossless_partition, lossy_neighborhoods)
from .selection import (SelectionResult, StarsConfig, ebic_select,
                        gaussian_loglik, ric_select, stars_select)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyMatrix", "BenchmarkScenario", "BlockPartition", "ConfigError",
    "CovarianceModel", "CovarianceSummary", "Dataset",
    "DegenerateColumnError", "DegeneratePathError", "FormatError",
    "GraphPath", "GraphStructureSpec", "InputError", "LambdaSequence",
    "LassoSolution", "NeighborhoodPlan", "NumericError", "ParameterError",
    "PipelineConfig", "PrecisionPath", "SelectionResult", "SparseGMError",
    "StarsConfig", "SyntheticDataset", "benchmark", "benchmark_csv",
    "build_covariance_model", "correlation_matrix",
    "correlation_threshold_path", "ebic_select", "export_dot",
    "gaussian_loglik", "generate_structure", "glasso_kkt_residual",
    "glasso_path", "kkt_violation", "lambda_max", "lambda_sequence",
    "lasso_cd", "lossless_partition", "lossy_neighborhoods", "mb_path",
    "npn_truncation", "read_dataset_csv", "read_graph_edgelist",
    "ric_select", "run_pipeline", "sample_dataset", "stars_select",
    "truncation_level", "write_dataset_csv", "write_graph_edgelist",
]
