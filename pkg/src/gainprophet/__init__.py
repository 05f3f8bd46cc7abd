"""Deterministic gain-analysis toolkit.

Yearly gain series go in; step predictions, score-equation estimates,
factor-level supports, boolean sequence patterns, crisp state enumerations,
fuzzy optimum realizations and forecasting statistics come out.  Every type
is immutable and every operation is a pure function.
"""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    GainProphetError,
    NoRootError,
    ParseError,
    SizeError,
    ValidationError,
)
from .core import (
    FACTORS,
    FACTOR_LEVELS,
    FACTOR_NAMES,
    LEVEL_CODES,
    FactorVector,
    GainSeries,
    Observation,
    ObservationTable,
    SequenceMatrix,
    SequenceRow,
    encode_sequence,
    format_number,
    gain_series_to_csv,
    parse_gain_series,
    parse_observation_table,
)
from .predictors import (
    ARModel,
    CustomScore,
    DeltaReport,
    ExponentialMean,
    MAModel,
    NormalLocation,
    Policy,
    ScoreProblem,
    ar_forecast,
    delta_avg,
    delta_gaps,
    fit_ar_least_squares,
    ma_forecast,
    mle_expected_gain,
    predict_next,
    score,
)
from .mining import (
    FAVORABLE_CODES,
    OptimumCondition,
    PatternSummary,
    SupportReport,
    deviation_flags,
    dominant_pattern,
    enumerate_states,
    optimum_condition,
    support_counts,
)
from .fuzzy import (
    DEFAULT_INTERSECTION,
    DEFAULT_UNION,
    ELEMENT_TO_FACTOR,
    UNIVERSE,
    FuzzyGainSet,
    OptimumGainResult,
    fuzzy_intersection_membership,
    fuzzy_union_membership,
    optimum_gain,
    parse_fuzzy_sets,
    parse_set_years,
)
from .stats import (
    PROBABILITY_TOLERANCE,
    DiscreteDistribution,
    JointDistribution,
    MidpointCheck,
    expectation,
    exponential_midpoint_check,
    geometric_mean,
    harmonic_mean,
    joint_expectation_sum,
    mean_deviation,
    mean_deviation_about_mean,
)

__all__ = [
    "ARModel",
    "CustomScore",
    "DEFAULT_INTERSECTION",
    "DEFAULT_UNION",
    "DeltaReport",
    "DiscreteDistribution",
    "DomainError",
    "ELEMENT_TO_FACTOR",
    "ExponentialMean",
    "FACTORS",
    "FACTOR_LEVELS",
    "FACTOR_NAMES",
    "FAVORABLE_CODES",
    "FactorVector",
    "FuzzyGainSet",
    "GainProphetError",
    "GainSeries",
    "JointDistribution",
    "LEVEL_CODES",
    "MAModel",
    "MidpointCheck",
    "NoRootError",
    "NormalLocation",
    "Observation",
    "ObservationTable",
    "OptimumCondition",
    "OptimumGainResult",
    "ParseError",
    "PatternSummary",
    "Policy",
    "PROBABILITY_TOLERANCE",
    "ScoreProblem",
    "SequenceMatrix",
    "SequenceRow",
    "SizeError",
    "SupportReport",
    "UNIVERSE",
    "ValidationError",
    "ar_forecast",
    "delta_avg",
    "delta_gaps",
    "deviation_flags",
    "dominant_pattern",
    "encode_sequence",
    "enumerate_states",
    "expectation",
    "exponential_midpoint_check",
    "fit_ar_least_squares",
    "format_number",
    "fuzzy_intersection_membership",
    "fuzzy_union_membership",
    "gain_series_to_csv",
    "geometric_mean",
    "harmonic_mean",
    "joint_expectation_sum",
    "ma_forecast",
    "mean_deviation",
    "mean_deviation_about_mean",
    "mle_expected_gain",
    "optimum_condition",
    "optimum_gain",
    "parse_fuzzy_sets",
    "parse_gain_series",
    "parse_observation_table",
    "parse_set_years",
    "predict_next",
    "score",
    "support_counts",
]
