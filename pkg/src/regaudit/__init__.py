"""Audit published linear-regression models from their summary statistics.

The library reconstructs what a published model actually implies: predicted
outcomes from coefficient and mean tables, bounds on each predictor's
relative importance, full distributions rebuilt from percentile tables,
effect sizes between groups, tiered pass rates, and adverse-impact screens.
"""

from .diagnostics import NullSpec, anscombe_demo, anscombe_sets, r2_null_mean, r2_null_pvalue
from .distributions import (
    DensityCurve,
    Direction,
    EffectSizeReport,
    QuantileProfile,
    SampleSet,
    cles_mc,
    cles_normal,
    cohen_d,
    density,
    effect_size_report,
    odds,
    profile_moments,
    quantile_function,
    sample,
    silverman_bandwidth,
)
from .errors import (
    AuditError,
    DegenerateError,
    InputError,
    InternalCheckError,
    SingularDesignError,
)
from .importance import (
    CompositeFold,
    CovarianceMatrix,
    ImportanceReport,
    ImportanceRow,
    calibrate_p,
    composite_fold,
    explained_variance,
    ri,
    ri_bounds,
    weight_shares,
    zfold,
)
from .models import (
    ConsistencyReport,
    ObservationTable,
    OlsFit,
    PredictorSummary,
    RegressionModel,
    ValidationReport,
    consistency_check,
    cross_validate,
    fit_ols,
    predict,
    sd_bounds,
    validate_observations,
)
from .scoring import (
    Cohort,
    EventStandard,
    ImpactReport,
    PassRateReport,
    ScoringStandard,
    difficulty_ratio,
    evaluate,
    impact_ratio,
    pass_rates,
    score_event,
    wathen_1rm,
)
from .special import regularized_incomplete_beta

__version__ = "0.1.0"

__all__ = [
    "AuditError",
    "Cohort",
    "CompositeFold",
    "ConsistencyReport",
    "CovarianceMatrix",
    "DegenerateError",
    "DensityCurve",
    "Direction",
    "EffectSizeReport",
    "EventStandard",
    "ImpactReport",
    "ImportanceReport",
    "ImportanceRow",
    "InputError",
    "InternalCheckError",
    "NullSpec",
    "ObservationTable",
    "OlsFit",
    "PassRateReport",
    "PredictorSummary",
    "QuantileProfile",
    "RegressionModel",
    "SampleSet",
    "ScoringStandard",
    "SingularDesignError",
    "ValidationReport",
    "__version__",
    "anscombe_demo",
    "anscombe_sets",
    "calibrate_p",
    "cles_mc",
    "cles_normal",
    "cohen_d",
    "composite_fold",
    "consistency_check",
    "cross_validate",
    "density",
    "difficulty_ratio",
    "effect_size_report",
    "evaluate",
    "explained_variance",
    "fit_ols",
    "impact_ratio",
    "odds",
    "pass_rates",
    "predict",
    "profile_moments",
    "quantile_function",
    "r2_null_mean",
    "r2_null_pvalue",
    "regularized_incomplete_beta",
    "ri",
    "ri_bounds",
    "sample",
    "score_event",
    "sd_bounds",
    "silverman_bandwidth",
    "validate_observations",
    "wathen_1rm",
    "weight_shares",
    "zfold",
]
