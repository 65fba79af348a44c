"""Truncated path signatures, log signatures and signature features."""

from .cde import (
    LinearVectorField,
    PicardTrace,
    euler_cde_oracle,
    exact_linear_cde_endpoint,
    linear_cde_solve_signature,
    picard_exponential,
)
from .embeddings import (
    cumsum_basepoint,
    embed_linear,
    embed_rectilinear,
    lead_lag,
    lead_lag_time,
    missing_data_embed,
)
from .features import (
    FeatureMatrix,
    Level2Terms,
    bare_leadlag_level2,
    build_feature_matrix,
    cumsum_leadlag_level2,
    mean_var_from_sig,
    quadratic_variation,
    standardize_columns,
)
from .lyndon import (
    LogSignature,
    LyndonBasis,
    bracket_expansion,
    is_lyndon,
    log_sig_dimension,
    log_signature_coords,
    lyndon_words,
    standard_factorization,
)
from .models import (
    ArmaSpec,
    ConfusionMatrix,
    ExperimentResult,
    LogisticModel,
    arma_generate,
    logistic_fit,
    run_arma_experiment,
)
from .signature import (
    concat,
    levy_area,
    reparametrize_uniform,
    signature,
    signature_bruteforce,
    signature_of_sampled_function,
    time_reverse,
)
from .tensor import (
    TruncatedTensorSeries,
    shuffle,
    tensor_exp,
    tensor_exp_series,
    tensor_log,
    tensor_mul,
    word_index,
    word_label,
    words,
)

__version__ = "0.1.0"

__all__ = [
    "ArmaSpec",
    "ConfusionMatrix",
    "ExperimentResult",
    "FeatureMatrix",
    "Level2Terms",
    "LinearVectorField",
    "LogSignature",
    "LogisticModel",
    "LyndonBasis",
    "PicardTrace",
    "TruncatedTensorSeries",
    "arma_generate",
    "bare_leadlag_level2",
    "bracket_expansion",
    "build_feature_matrix",
    "concat",
    "cumsum_basepoint",
    "cumsum_leadlag_level2",
    "embed_linear",
    "embed_rectilinear",
    "euler_cde_oracle",
    "exact_linear_cde_endpoint",
    "is_lyndon",
    "lead_lag",
    "lead_lag_time",
    "levy_area",
    "linear_cde_solve_signature",
    "log_sig_dimension",
    "log_signature_coords",
    "logistic_fit",
    "lyndon_words",
    "mean_var_from_sig",
    "missing_data_embed",
    "picard_exponential",
    "quadratic_variation",
    "reparametrize_uniform",
    "run_arma_experiment",
    "shuffle",
    "signature",
    "signature_bruteforce",
    "signature_of_sampled_function",
    "standard_factorization",
    "standardize_columns",
    "time_reverse",
    "tensor_exp",
    "tensor_exp_series",
    "tensor_log",
    "tensor_mul",
    "word_index",
    "word_label",
    "words",
]
