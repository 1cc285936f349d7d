"""Achievable angles between RIP-compressed sparse vectors.

Closed-form angle bounds, an independent brute-force oracle, restricted
isometry constant calculus and Monte Carlo sensing experiments.
"""
__version__ = "0.1.0"

from .bounds import (
    AngleInterval,
    CosRange,
    achievable_cos_range,
    alpha_max,
    alpha_min,
    angle_interval,
    describe_bounds,
    orthogonal_interval,
    polarization_cos_bound,
)
from .envelope import (
    DistanceEnvelope,
    FeasibleTriple,
    RipScenario,
    compute_envelope,
    is_feasible,
    normalize_scenario,
)
from .exceptions import (
    DomainError,
    EnumerationCapError,
    OracleConsistencyError,
    RipAngleError,
    StabilityError,
)
from .oracle import OracleResult, constrained_sum_extremum, oracle_extremes

from .omp import OmpReport, omp
from .ric import (
    RicComparison,
    algebraic_projected_ric,
    compare_ric,
    democracy_ric,
    invert_algebraic_ric,
    invert_projected_ric,
    measurement_reduction,
    omp_ric_threshold,
    omp_ric_threshold_prior,
    projected_ric,
    reconstruction_error_bound,
)
from .sensing import (
    SensingConfig,
    SparsePairSample,
    angle_between,
    exhaustive_ric,
    gaussian_sensing_matrix,
    projection_complement,
    sparse_pair,
    support_ric,
)
