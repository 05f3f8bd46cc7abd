"""Support counting, boolean pattern inspection and crisp state enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .core import (
    FACTORS,
    LEVEL_CODES,
    FactorVector,
    GainSeries,
    ObservationTable,
    SequenceMatrix,
)
from .errors import SizeError, ValidationError
from .predictors import delta_gaps

# The fixed favorable level per factor: high production, best quality, high
# market competition, low risk, low cost.  A domain rule, not a data fit.
FAVORABLE_CODES = ("PH", "QB", "MH", "RL", "CL")


@dataclass(frozen=True)
class SupportReport:
    """Exact rational support of each of the ten factor levels."""

    support: Mapping[str, Fraction]
    rows: int


@dataclass(frozen=True)
class PatternSummary:
    """Column-majority verdict per factor plus a rendered reading."""

    dominant: Mapping[str, str]  # per factor: "0", "1" or "tie"
    recommendation: str


@dataclass(frozen=True)
class OptimumCondition:
    """The favorable level vector, annotated with its observed supports."""

    factors: FactorVector
    supports: Mapping[str, Fraction]


def support_counts(table: ObservationTable) -> SupportReport:
    """Fraction of rows exhibiting each factor level, as exact rationals.

    Complementary levels of one factor always sum to exactly 1.
    """
    total = len(table.rows)
    if total == 0:
        raise SizeError("an observation table needs at least one row")
    counts = {code: 0 for code in LEVEL_CODES}
    for row in table.rows:
        for code in row.factors.codes:
            counts[code] += 1
    support = {code: Fraction(count, total) for code, count in counts.items()}
    return SupportReport(support=support, rows=total)


def optimum_condition(report: SupportReport) -> OptimumCondition:
    """The favorable level vector with each level's observed support.

    The target vector is fixed; only the support annotations vary with the
    data.  Levels absent from the rows still appear with support 0.
    """
    vector = FactorVector.from_codes(FAVORABLE_CODES)
    supports = {code: report.support[code] for code in FAVORABLE_CODES}
    return OptimumCondition(factors=vector, supports=supports)


_LEVEL_PHRASES = {
    ("P", 0): "production is low",
    ("P", 1): "production is high",
    ("Q", 0): "quality is medium",
    ("Q", 1): "quality is best",
    ("M", 0): "market competition is low",
    ("M", 1): "market competition is high",
    ("R", 0): "risk involvement is low",
    ("R", 1): "risk involvement is high",
    ("C", 0): "cost is low",
    ("C", 1): "cost is high",
}


def dominant_pattern(matrix: SequenceMatrix) -> PatternSummary:
    """Strict column majorities; an exact half split is reported as a tie."""
    total = len(matrix.rows)
    if total == 0:
        raise SizeError("a sequence matrix needs at least one row")
    dominant = {}
    phrases = []
    for position, factor in enumerate(FACTORS):
        ones = sum(row.bits[position] for row in matrix.rows)
        if 2 * ones > total:
            dominant[factor] = "1"
            phrases.append(_LEVEL_PHRASES[(factor, 1)])
        elif 2 * ones < total:
            dominant[factor] = "0"
            phrases.append(_LEVEL_PHRASES[(factor, 0)])
        else:
            dominant[factor] = "tie"
    recommendation = "; ".join(phrases) if phrases else "no factor level dominates"
    return PatternSummary(dominant=dominant, recommendation=recommendation)


def enumerate_states() -> tuple[FactorVector, ...]:
    """All 32 crisp factor states in ascending binary order, P most significant."""
    width = len(FACTORS)
    states = []
    for value in range(2**width):
        bits = tuple((value >> (width - 1 - j)) & 1 for j in range(width))
        states.append(FactorVector.from_bits(bits))
    return tuple(states)


def deviation_flags(
    series: GainSeries, multiplier: float = 2.0
) -> tuple[tuple[str, bool], ...]:
    """Flag gaps strictly exceeding multiplier times the average gap.

    Each flag attaches to the later year of its gap, so a series of n
    entries yields n - 1 (year, flagged) pairs.
    """
    if not multiplier > 0:
        raise ValidationError("multiplier must be positive")
    if len(series.gains) < 3:
        raise SizeError("need at least 3 entries to flag deviations")
    gaps = delta_gaps(series)
    threshold = multiplier * (sum(gaps) / len(gaps))
    years = series.years
    return tuple((years[i + 1], gap > threshold) for i, gap in enumerate(gaps))
