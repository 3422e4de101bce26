"""Certified numerics for Bernoulli-convolution tent maps."""

from .cache import cache_load, cache_path, cache_store
from .cdf import (
    DyadicProb,
    LambdaInterval,
    f_lower,
    f_lower_interval,
    f_upper,
    f_upper_interval,
    lipschitz_D,
)
from .convexity import (
    CERTIFIED,
    INCONCLUSIVE,
    REFUTED,
    ConvexityCertificate,
    certify_envelope,
    check_interval,
    check_point,
    recheck_refutation,
    scan,
)
from .density import (
    RychlikBound,
    min_cylinder_length,
    minimal_admissible_n,
    rychlik_bounds,
    sup_density_pipeline,
)
from .envelope import (
    BoundsContext,
    TentEnvelope,
    blowup_exponent,
    build_envelope,
    expected_blowup_exponent,
    invariance_mc,
    ks_against_bounds,
    phi_bounds,
    phi_lower,
    phi_upper,
    sample_truncated_series,
)
from .errors import (
    IntegrityError,
    InternalConsistencyError,
    ParameterError,
    PrecisionError,
    ResourceError,
)
from .exact import (
    ExactMap,
    exact_F_sqrt2,
    exact_F_sqrt2_inv,
    exact_phi_sqrt2,
    exact_small_lambda_tent,
)
from .presets import PRESET_NAMES, preset_lambda
from .tables import (
    HalfSumTable,
    brute_force_count,
    build_half_sum_table,
    count_le,
    default_eta,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsContext",
    "CERTIFIED",
    "ConvexityCertificate",
    "DyadicProb",
    "ExactMap",
    "HalfSumTable",
    "INCONCLUSIVE",
    "IntegrityError",
    "InternalConsistencyError",
    "LambdaInterval",
    "PRESET_NAMES",
    "ParameterError",
    "PrecisionError",
    "REFUTED",
    "ResourceError",
    "RychlikBound",
    "TentEnvelope",
    "blowup_exponent",
    "brute_force_count",
    "build_envelope",
    "build_half_sum_table",
    "cache_load",
    "cache_path",
    "cache_store",
    "certify_envelope",
    "check_interval",
    "check_point",
    "count_le",
    "default_eta",
    "exact_F_sqrt2",
    "exact_F_sqrt2_inv",
    "exact_phi_sqrt2",
    "exact_small_lambda_tent",
    "expected_blowup_exponent",
    "f_lower",
    "f_lower_interval",
    "f_upper",
    "f_upper_interval",
    "invariance_mc",
    "ks_against_bounds",
    "lipschitz_D",
    "min_cylinder_length",
    "minimal_admissible_n",
    "phi_bounds",
    "phi_lower",
    "phi_upper",
    "preset_lambda",
    "recheck_refutation",
    "rychlik_bounds",
    "sample_truncated_series",
    "scan",
    "sup_density_pipeline",
]
