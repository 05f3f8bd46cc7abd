"""Forecasting operations over gain series.

Two families live here.  The delta-average step predictor derives the
absolute year-over-year gaps, steps one average gap from the last gain and
reports the optimum gain and the normalization factor.  The classical side
covers score-equation maximum likelihood, autoregressive and moving-average
one-step forecasts, and a least-squares fitter for AR coefficients.

All summations run left to right in the written term order, so independent
re-implementations that follow the same order reproduce results bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence, Union

from .core import GainSeries
from .errors import DomainError, NoRootError, SizeError, ValidationError


class Policy(Enum):
    """Direction rule for the delta-average step.

    THRESHOLD steps up when the last gain sits below the average gap and
    down otherwise (equality steps down).  TREND follows the sign of the
    most recent raw difference instead.
    """

    THRESHOLD = "threshold"
    TREND = "trend"


@dataclass(frozen=True)
class DeltaReport:
    """Everything the step predictor derives from one series."""

    gaps: tuple[float, ...]
    delta_avg: float
    predicted_gain: float
    optimum_gain: float
    # First position attaining the maximum gain, 0-based.
    optimum_index: int
    # predicted_gain - optimum_gain; reported, never applied.
    normalization_factor: float


def delta_gaps(series: GainSeries) -> tuple[float, ...]:
    """Absolute year-over-year differences |g[i+1] - g[i]|."""
    gains = series.gains
    if len(gains) < 2:
        raise SizeError("need at least 2 entries to compute gaps")
    return tuple(abs(b - a) for a, b in zip(gains, gains[1:]))


def delta_avg(series: GainSeries) -> float:
    """Arithmetic mean of the absolute gaps."""
    gaps = delta_gaps(series)
    return sum(gaps) / len(gaps)


def predict_next(
    series: GainSeries, policy: Union[Policy, str] = Policy.THRESHOLD
) -> DeltaReport:
    """Predict the next gain as one average-gap step from the last gain.

    THRESHOLD compares the last gain against the average gap itself: below
    steps up, at or above steps down.  TREND needs three entries and steps
    up exactly when the last raw difference is >= 0.
    """
    policy = Policy(policy)
    gains = series.gains
    minimum = 3 if policy is Policy.TREND else 2
    if len(gains) < minimum:
        raise SizeError(f"{policy.value} policy needs at least {minimum} entries")
    gaps = delta_gaps(series)
    avg = sum(gaps) / len(gaps)
    last = gains[-1]
    if policy is Policy.THRESHOLD:
        step_up = last < avg
    else:
        step_up = gains[-1] - gains[-2] >= 0
    predicted = last + avg if step_up else last - avg
    optimum = max(gains)
    return DeltaReport(
        gaps=gaps,
        delta_avg=avg,
        predicted_gain=predicted,
        optimum_gain=optimum,
        optimum_index=gains.index(optimum),
        normalization_factor=predicted - optimum,
    )


@dataclass(frozen=True)
class NormalLocation:
    """Normal location family with known scale; score is (g - t) / sigma**2."""

    sigma: float = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValidationError("sigma must be positive")


@dataclass(frozen=True)
class ExponentialMean:
    """Exponential family parameterized by its mean; defined for t > 0 only."""


@dataclass(frozen=True)
class CustomScore:
    """Caller-supplied per-observation score (observation, parameter) -> value.

    The callable must be side-effect free; it may be evaluated any number
    of times during root search.
    """

    score: Callable[[float, float], float]


ScoreFamily = Union[NormalLocation, ExponentialMean, CustomScore]


@dataclass(frozen=True)
class ScoreProblem:
    """Observations, a score family and a root bracket for the estimate."""

    observations: tuple[float, ...]
    family: ScoreFamily
    bracket: tuple[float, float]

    def __post_init__(self):
        observations = tuple(float(g) for g in self.observations)
        bracket = (float(self.bracket[0]), float(self.bracket[1]))
        object.__setattr__(self, "observations", observations)
        object.__setattr__(self, "bracket", bracket)
        if not observations:
            raise SizeError("need at least one observation")
        lo, hi = bracket
        if not lo < hi:
            raise ValidationError(f"bracket must satisfy lo < hi, got ({lo}, {hi})")


def _score_term(family: ScoreFamily, g: float, t: float) -> float:
    if isinstance(family, NormalLocation):
        return (g - t) / (family.sigma * family.sigma)
    if isinstance(family, ExponentialMean):
        if t <= 0:
            raise DomainError(f"exponential-mean score undefined at t = {t}")
        return -1.0 / t + g / (t * t)
    return family.score(g, t)


def score(problem: ScoreProblem, t: float) -> float:
    """Summed score over all observations at parameter value t."""
    total = 0.0
    for g in problem.observations:
        total += _score_term(problem.family, g, t)
    if not math.isfinite(total):
        raise DomainError(f"score is not finite at t = {t}")
    return total


def mle_expected_gain(problem: ScoreProblem, tol: Union[float, None] = None) -> float:
    """Root of the summed score over the bracket, found by bisection.

    The bracket is narrowed below ``tol`` (default 1e-12 of the bracket
    width) and the midpoint returned.  Raises NoRootError when the score
    does not change sign over the bracket and DomainError when a score
    evaluation is not finite.
    """
    lo, hi = problem.bracket
    if tol is None:
        tol = 1e-12 * (hi - lo)
    if not tol > 0:
        raise ValidationError("tol must be positive")
    s_lo = score(problem, lo)
    if s_lo == 0.0:
        return lo
    s_hi = score(problem, hi)
    if s_hi == 0.0:
        return hi
    if (s_lo < 0.0) == (s_hi < 0.0):
        raise NoRootError(f"score does not change sign over [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # bracket narrower than float resolution
        s_mid = score(problem, mid)
        if s_mid == 0.0:
            return mid
        if (s_mid < 0.0) == (s_lo < 0.0):
            lo, s_lo = mid, s_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ARModel:
    """One-step autoregressive model.

    ``coefficients[j]`` multiplies the value j steps back, most recent
    first.  The random-error term is supplied at forecast time and defaults
    to zero, so forecasts are conditional means by default.
    """

    intercept: float
    coefficients: tuple[float, ...]
    degenerate: bool = False

    def __post_init__(self):
        coefficients = tuple(float(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coefficients)
        if not coefficients:
            raise ValidationError("need at least one coefficient")

    @property
    def order(self) -> int:
        return len(self.coefficients)


@dataclass(frozen=True)
class MAModel:
    """One-step moving-average model over the q+1 most recent shocks."""

    coefficients: tuple[float, ...]
    q: int

    def __post_init__(self):
        coefficients = tuple(float(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coefficients)
        if self.q < 0:
            raise ValidationError("q must be >= 0")
        if len(coefficients) != self.q + 1:
            raise ValidationError(
                f"expected q + 1 = {self.q + 1} coefficients, got {len(coefficients)}"
            )


def ar_forecast(model: ARModel, history: Sequence[float], shock: float = 0.0) -> float:
    """One-step AR forecast: intercept, then the lag terms, then the shock."""
    if len(history) < model.order:
        raise SizeError(
            f"need at least {model.order} history values, got {len(history)}"
        )
    total = model.intercept
    for j, coeff in enumerate(model.coefficients):
        total += coeff * history[-1 - j]
    return total + shock


def ma_forecast(
    model: MAModel, shocks: Sequence[float], next_shock: float = 0.0
) -> float:
    """One-step MA forecast: next shock plus the weighted recent shocks."""
    if len(shocks) < model.q + 1:
        raise SizeError(f"need at least {model.q + 1} shocks, got {len(shocks)}")
    total = next_shock
    for j, coeff in enumerate(model.coefficients):
        total += coeff * shocks[-1 - j]
    return total


def fit_ar_least_squares(series: GainSeries, order: int) -> ARModel:
    """Fit intercept and AR coefficients by least squares on one-step error.

    A rank-deficient design (a constant series, for instance) returns the
    best intercept-only model with the degenerate flag set, so the residual
    sum of squares never exceeds that of the zero-coefficient model.
    """
    if order < 1:
        raise ValidationError("order must be >= 1")
    gains = series.gains
    if len(gains) < 2 * order + 1:
        raise SizeError(
            f"need at least {2 * order + 1} entries for order {order}, got {len(gains)}"
        )
    import numpy as np  # deferred: keeps CLI startup light

    targets = np.array(gains[order:], dtype=float)
    design = np.ones((len(targets), order + 1), dtype=float)
    for j in range(order):
        design[:, j + 1] = [gains[t - 1 - j] for t in range(order, len(gains))]
    solution, _, rank, _ = np.linalg.lstsq(design, targets, rcond=None)
    if rank < order + 1:
        return ARModel(float(targets.mean()), (0.0,) * order, degenerate=True)
    return ARModel(float(solution[0]), tuple(float(c) for c in solution[1:]))
