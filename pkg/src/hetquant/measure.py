"""Heteroskedasticity scores composed from the variance-histogram pipeline.

A series is scored by estimating local variances with a sliding window,
histogramming them, and measuring how close that histogram is to a uniform
reference over the same support. Scores live in [0, 1]; higher means the
local variance is spread more evenly, i.e. the series is more
heteroskedastic. A perfectly uniform variance histogram scores 1; a
single-bin histogram scores 1/sqrt(B) under the Bhattacharyya variant.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

from .distribution import ProbabilityDistribution, estimate_pdf, uniform_reference
from .divergence import bhattacharyya_coefficient
from .errors import ConfigurationError, ParameterError
from .local_variance import local_variance
from .series import TimeSeries

__all__ = ["MeasureConfig", "MeasureReport", "measure", "measure_from_distribution"]

_VARIANTS = ("bhattacharyya", "hellinger")

# Below this many variance estimates per bin budget, the histogram is too
# sparse for a stable score and the report flags it.
_SPARSE_FACTOR = 10


@dataclass(frozen=True)
class MeasureConfig:
    """Analysis parameters: window w, bin count B, and score variant."""

    window: int = 128
    bins: int = 64
    variant: str = "bhattacharyya"

    def __post_init__(self) -> None:
        if self.window < 2:
            raise ConfigurationError("window must be at least 2")
        if self.bins < 2:
            raise ConfigurationError("bins must be at least 2")
        if self.variant not in _VARIANTS:
            raise ConfigurationError(f"variant must be one of {_VARIANTS}")


@dataclass(frozen=True)
class MeasureReport:
    """Score plus the distribution and bookkeeping behind it."""

    score: float
    variant: str
    config: MeasureConfig
    n_variances: int
    distribution: ProbabilityDistribution
    sparse_histogram: bool


def measure_from_distribution(
    p: ProbabilityDistribution, variant: str = "bhattacharyya"
) -> float:
    """Score a readymade variance distribution against its uniform reference."""
    if variant not in _VARIANTS:
        raise ParameterError(f"variant must be one of {_VARIANTS}")
    coefficient = bhattacharyya_coefficient(p, uniform_reference(p))
    if variant == "bhattacharyya":
        return coefficient
    return 1.0 - sqrt(1.0 - coefficient)


def measure(series: TimeSeries, config: MeasureConfig = MeasureConfig()) -> MeasureReport:
    """Run the full pipeline on ``series`` and report the score.

    Requires at least window + 1 samples so the histogram sees two or more
    variance estimates.
    """
    n = len(series)
    if n < config.window + 1:
        raise ParameterError(
            f"series length ({n}) must be at least window + 1 ({config.window + 1})"
        )
    variances = local_variance(series, config.window)
    dist = estimate_pdf(variances, config.bins)
    score = measure_from_distribution(dist, config.variant)
    n_variances = len(variances)
    return MeasureReport(
        score=score,
        variant=config.variant,
        config=config,
        n_variances=n_variances,
        distribution=dist,
        sparse_histogram=n_variances < _SPARSE_FACTOR * config.bins,
    )
