"""Planar Boolean models of rectangles: exact intrinsic volumes of
realizations, closed-form asymptotic covariances, and Monte Carlo
machinery to validate one against the other."""

from .config import ConfigError, RunConfig, parse_config, write_config
from .estimation import (
    CovarianceEstimate,
    Histogram,
    bootstrap_se,
    estimate_cov,
    histogram,
    ks_normal,
    standardize,
)
from .formulas import (
    RectModel,
    cov_entry,
    cov_matrix,
    cov_v0_v0,
    cov_v0_v1,
    cov_v0_v2,
    cov_v1_v1,
    cov_v1_v2,
    cov_v2_v2,
    covariogram,
    covariogram_exp_integral,
    exp_moment_s,
    exp_moment_s2,
    exp_moment_s2_plus_st,
    exp_moment_st,
    h_quad,
    h_series,
    mean_densities,
    quad_cov_v2_v2,
    rescale,
)
from .grains import Domain, GrainSizeError, PlacedGrain
from .gridcomplex import (
    FunctionalVector,
    UnionComplex,
    build_complex,
    clip_to_window,
    intrinsic_volumes,
)
from .polyunion import clip_convex, rect_corners, union_functionals
from .sampling import (
    ModelSpec,
    SampleResult,
    measure_sample,
    mix64,
    run,
    sample_grains,
    stream_seed,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "CovarianceEstimate",
    "Domain",
    "FunctionalVector",
    "GrainSizeError",
    "Histogram",
    "ModelSpec",
    "PlacedGrain",
    "RectModel",
    "RunConfig",
    "SampleResult",
    "UnionComplex",
    "bootstrap_se",
    "build_complex",
    "clip_convex",
    "clip_to_window",
    "cov_entry",
    "cov_matrix",
    "cov_v0_v0",
    "cov_v0_v1",
    "cov_v0_v2",
    "cov_v1_v1",
    "cov_v1_v2",
    "cov_v2_v2",
    "covariogram",
    "covariogram_exp_integral",
    "estimate_cov",
    "exp_moment_s",
    "exp_moment_s2",
    "exp_moment_s2_plus_st",
    "exp_moment_st",
    "h_quad",
    "h_series",
    "histogram",
    "intrinsic_volumes",
    "ks_normal",
    "mean_densities",
    "measure_sample",
    "mix64",
    "parse_config",
    "quad_cov_v2_v2",
    "rect_corners",
    "rescale",
    "run",
    "sample_grains",
    "standardize",
    "stream_seed",
    "union_functionals",
    "write_config",
    "__version__",
]
