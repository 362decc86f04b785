"""Global and local functional data depths.

Three global depths (FMD, MBD, FSD) and two local, kernel-based depths
(HMD, KFSD) for curves observed on a common grid, together with the
simulation models and rank statistics used to compare them.
"""

from .depths import (GLOBAL_METHODS, LOCAL_METHODS, METHODS, DepthParams,
                     DepthResult, Method, all_depths, bandwidth, depth,
                     depth_all, fmd, fsd, hmd, kfsd, mbd)
from .evaluate import StudyResult, corr_matrix, ranks, run_study, spearman
from .exceptions import (DegenerateSampleError, DepthError, DimensionError,
                         GridError, InsufficientSampleError, SampleFormatError,
                         UndefinedCorrelationError)
from .sample import (FunctionalSample, Grid, PairwiseGeometry, l2_dist,
                     l2_inner, make_grid, pairwise_geometry)
from .simulate import ModelSpec, SimulatedSample, benchmark_density, generate

__version__ = "0.1.0"

__all__ = [
    "GLOBAL_METHODS", "LOCAL_METHODS", "METHODS", "DepthParams", "DepthResult",
    "Method", "all_depths", "bandwidth", "depth", "depth_all", "fmd", "fsd",
    "hmd", "kfsd", "mbd", "StudyResult", "corr_matrix", "ranks", "run_study",
    "spearman", "DegenerateSampleError", "DepthError", "DimensionError",
    "GridError", "InsufficientSampleError", "SampleFormatError",
    "UndefinedCorrelationError", "FunctionalSample", "Grid", "PairwiseGeometry",
    "l2_dist", "l2_inner", "make_grid", "pairwise_geometry", "ModelSpec",
    "SimulatedSample", "benchmark_density", "generate",
]
