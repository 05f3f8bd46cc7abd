"""Descriptive and probabilistic gain statistics.

Expectation over discrete distributions, additivity of expectation over a
joint distribution, geometric and harmonic means, the exponential midpoint
identity, and mean deviation about an arbitrary center or the mean.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import DomainError, SizeError, ValidationError

# Mass within this absolute tolerance of 1 is renormalized; anything
# further off is rejected.
PROBABILITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finite outcome/probability pairs."""

    outcomes: tuple[float, ...]
    probabilities: tuple[float, ...]

    def __post_init__(self):
        outcomes = tuple(float(v) for v in self.outcomes)
        probabilities = tuple(float(p) for p in self.probabilities)
        if len(outcomes) != len(probabilities):
            raise ValidationError(
                f"{len(outcomes)} outcomes but {len(probabilities)} probabilities"
            )
        if not outcomes:
            raise SizeError("need at least one outcome")
        for p in probabilities:
            if not 0.0 <= p <= 1.0:
                raise ValidationError(f"probability {p} outside [0, 1]")
        total = sum(probabilities)
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            raise ValidationError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(
            self, "probabilities", tuple(p / total for p in probabilities)
        )


@dataclass(frozen=True)
class JointDistribution:
    """Two outcome margins and a joint pmf matrix with total mass 1."""

    g_outcomes: tuple[float, ...]
    q_outcomes: tuple[float, ...]
    pmf: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        g = tuple(float(v) for v in self.g_outcomes)
        q = tuple(float(v) for v in self.q_outcomes)
        pmf = tuple(tuple(float(p) for p in row) for row in self.pmf)
        if not g or not q:
            raise SizeError("need at least one outcome on each margin")
        if len(pmf) != len(g) or any(len(row) != len(q) for row in pmf):
            raise ValidationError(f"pmf must be {len(g)} x {len(q)}")
        total = 0.0
        for row in pmf:
            for p in row:
                if p < 0.0:
                    raise ValidationError(f"pmf entry {p} is negative")
                total += p
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            raise ValidationError(f"pmf mass is {total}, not 1")
        object.__setattr__(self, "g_outcomes", g)
        object.__setattr__(self, "q_outcomes", q)
        object.__setattr__(
            self, "pmf", tuple(tuple(p / total for p in row) for row in pmf)
        )


def expectation(dist: DiscreteDistribution) -> float:
    """Probability-weighted mean of the outcomes."""
    total = 0.0
    for g, p in zip(dist.outcomes, dist.probabilities):
        total += g * p
    return total


def joint_expectation_sum(joint: JointDistribution) -> tuple[float, float, float]:
    """(E[G + Q], E[G], E[Q]) from the joint pmf and its marginals."""
    e_sum = 0.0
    for i, g in enumerate(joint.g_outcomes):
        for j, q in enumerate(joint.q_outcomes):
            e_sum += (g + q) * joint.pmf[i][j]
    e_g = 0.0
    for i, g in enumerate(joint.g_outcomes):
        e_g += g * sum(joint.pmf[i])
    e_q = 0.0
    for j, q in enumerate(joint.q_outcomes):
        e_q += q * sum(row[j] for row in joint.pmf)
    return e_sum, e_g, e_q


def geometric_mean(values: Sequence[float]) -> float:
    """exp of the mean log; requires strictly positive values."""
    if len(values) == 0:
        raise SizeError("need at least one value")
    log_total = 0.0
    for v in values:
        if v <= 0:
            raise DomainError(f"geometric mean needs positive values, got {v}")
        log_total += math.log(v)
    return math.exp(log_total / len(values))


class MidpointCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def exponential_midpoint_check(
    m: float, n: float, a1: float, a2: float
) -> MidpointCheck:
    """For exponential growth m * n**a, compare the value at the midpoint of
    (a1, a2) with the geometric mean of the endpoint values.

    ``holds`` is true when the two sides agree within 1e-9 relative.
    """
    if m <= 0 or n <= 0:
        raise DomainError("m and n must be positive")
    lhs = m * n ** ((a1 + a2) / 2.0)
    rhs = math.sqrt((m * n**a1) * (m * n**a2))
    holds = abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))
    return MidpointCheck(lhs, rhs, holds)


def harmonic_mean(values: Sequence[float]) -> float:
    """count / sum of reciprocals; zero values are outside the domain.

    Negative values are allowed, but reciprocals that cancel to zero leave
    the mean undefined.
    """
    if len(values) == 0:
        raise SizeError("need at least one value")
    reciprocal_total = 0.0
    for v in values:
        if v == 0:
            raise DomainError("harmonic mean is undefined for zero values")
        reciprocal_total += 1.0 / v
    if reciprocal_total == 0.0:
        raise DomainError("reciprocals cancel to zero; harmonic mean is undefined")
    return len(values) / reciprocal_total


def mean_deviation(values: Sequence[float], center: float) -> float:
    """Mean absolute deviation of the values about the center."""
    if len(values) == 0:
        raise SizeError("need at least one value")
    total = 0.0
    for v in values:
        total += abs(v - center)
    return total / len(values)


def mean_deviation_about_mean(values: Sequence[float]) -> float:
    """Mean absolute deviation about the arithmetic mean.

    The mean is computed with exact rational arithmetic and rounded once,
    so a constant sequence deviates by exactly zero.
    """
    if len(values) == 0:
        raise SizeError("need at least one value")
    return mean_deviation(values, statistics.mean(values))
