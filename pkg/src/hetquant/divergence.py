"""Divergences, affinities, and entropies over shared-binning histograms.

Every pairwise operation requires both distributions to have identical bin
edges. Zero-mass conventions: 0*log(0/x) = 0, and a positive p-mass facing
a zero q-mass yields +infinity wherever the formula demands it. Infinity is
a first-class result value, never an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distribution import ProbabilityDistribution
from .errors import BinningMismatchError, InternalError, ParameterError

__all__ = [
    "DivergenceResult",
    "bhattacharyya_coefficient",
    "bhattacharyya_distance",
    "hellinger_affinity",
    "hellinger_standard",
    "kl_divergence",
    "renyi_divergence",
    "tsallis_divergence",
    "jensen_shannon_divergence",
    "shannon_entropy",
    "renyi_entropy",
    "evaluate",
    "METRICS",
]

_LOG_BASES = ("natural", "base2")


def _check_pair(p: ProbabilityDistribution, q: ProbabilityDistribution) -> None:
    if not p.same_edges(q):
        raise BinningMismatchError("distributions do not share identical bin edges")


def _scalar_log(x: float, log_base: str) -> float:
    if log_base == "natural":
        return math.log(x)
    if log_base == "base2":
        return math.log2(x)
    raise ParameterError(f"log_base must be one of {_LOG_BASES}, got {log_base!r}")


def _clamp_rounding(value: float) -> float:
    """Snap rounding-level negatives of a nonnegative quantity to zero."""
    if value < 0.0:
        if value < -1e-11:
            raise InternalError(f"nonnegative quantity evaluated to {value}")
        return 0.0
    # Adding 0.0 turns IEEE negative zero into positive zero, which "< 0.0"
    # cannot catch; negative zero would otherwise leak into CSV output as -0.
    return value + 0.0


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha > 0:
        raise ParameterError(f"alpha must be positive, got {alpha}")
    if alpha == 1.0:
        raise ParameterError("alpha = 1 is the KL limit; call kl_divergence")
    return alpha


def _power_sum(p: np.ndarray, q: np.ndarray, alpha: float) -> float:
    """Sum of p_i^alpha * q_i^(1-alpha), or +inf when the formula demands it."""
    mask = p > 0
    if alpha > 1 and bool(np.any(mask & (q == 0))):
        return math.inf
    return float(np.sum(p[mask] ** alpha * q[mask] ** (1.0 - alpha)))


def bhattacharyya_coefficient(
    p: ProbabilityDistribution, q: ProbabilityDistribution
) -> float:
    """Sum of sqrt(p_i * q_i): 1 iff the distributions coincide, 0 iff disjoint."""
    _check_pair(p, q)
    value = float(np.sum(np.sqrt(p.masses * q.masses)))
    # Accumulated rounding can overshoot the exact upper bound by ~1e-16.
    return min(value, 1.0)


def bhattacharyya_distance(
    p: ProbabilityDistribution, q: ProbabilityDistribution
) -> float:
    """-ln BC(p, q); +infinity on disjoint supports. Not a metric."""
    coefficient = bhattacharyya_coefficient(p, q)
    if coefficient == 0.0:
        return math.inf
    if coefficient >= 1.0:
        return 0.0
    return -math.log(coefficient)


def hellinger_affinity(p: ProbabilityDistribution, q: ProbabilityDistribution) -> float:
    """Affinity variant 1 - sqrt(1 - BC): 1 for identical, 0 for disjoint."""
    return 1.0 - math.sqrt(1.0 - bhattacharyya_coefficient(p, q))


def hellinger_standard(p: ProbabilityDistribution, q: ProbabilityDistribution) -> float:
    """Textbook Hellinger distance sqrt(1 - BC); a true metric in [0, 1]."""
    return math.sqrt(1.0 - bhattacharyya_coefficient(p, q))


def kl_divergence(
    p: ProbabilityDistribution, q: ProbabilityDistribution, log_base: str = "natural"
) -> float:
    """Relative entropy of p with respect to q.

    Returns +infinity when some bin has positive p-mass but zero q-mass.
    """
    _check_pair(p, q)
    _scalar_log(1.0, log_base)
    pm, qm = p.masses, q.masses
    mask = pm > 0
    if bool(np.any(mask & (qm == 0))):
        return math.inf
    value = float(np.sum(pm[mask] * np.log(pm[mask] / qm[mask])))
    if log_base == "base2":
        value /= math.log(2.0)
    return _clamp_rounding(value)


def renyi_divergence(
    p: ProbabilityDistribution,
    q: ProbabilityDistribution,
    alpha: float,
    log_base: str = "natural",
) -> float:
    """Order-alpha Renyi divergence log(sum p^a q^(1-a)) / (a - 1).

    Nondecreasing in alpha, nonnegative, and equal to twice the
    Bhattacharyya distance at alpha = 1/2.
    """
    _check_pair(p, q)
    alpha = _check_alpha(alpha)
    _scalar_log(1.0, log_base)
    total = _power_sum(p.masses, q.masses, alpha)
    if total == 0.0 or math.isinf(total):
        return math.inf
    value = _scalar_log(total, log_base) / (alpha - 1.0)
    return _clamp_rounding(value)


def tsallis_divergence(
    p: ProbabilityDistribution, q: ProbabilityDistribution, alpha: float
) -> float:
    """Order-alpha Tsallis divergence (1 - sum p^a q^(1-a)) / (1 - a)."""
    _check_pair(p, q)
    alpha = _check_alpha(alpha)
    total = _power_sum(p.masses, q.masses, alpha)
    if math.isinf(total):
        return math.inf
    value = (1.0 - total) / (1.0 - alpha)
    return _clamp_rounding(value)


def jensen_shannon_divergence(
    p: ProbabilityDistribution, q: ProbabilityDistribution
) -> float:
    """Symmetric, base-2 Jensen-Shannon divergence, bounded in [0, 1]."""
    _check_pair(p, q)
    pm, qm = p.masses, q.masses
    mixture = (pm + qm) / 2.0
    value = 0.0
    for masses in (pm, qm):
        mask = masses > 0
        value += 0.5 * float(np.sum(masses[mask] * np.log2(masses[mask] / mixture[mask])))
    return min(_clamp_rounding(value), 1.0)


def shannon_entropy(p: ProbabilityDistribution, log_base: str = "natural") -> float:
    """-sum p_i log p_i with the 0 log 0 = 0 convention."""
    _scalar_log(1.0, log_base)
    masses = p.masses[p.masses > 0]
    value = -float(np.sum(masses * np.log(masses)))
    if log_base == "base2":
        value /= math.log(2.0)
    return _clamp_rounding(value)


def renyi_entropy(
    p: ProbabilityDistribution, alpha: float, log_base: str = "natural"
) -> float:
    """Order-alpha Renyi entropy log(sum p^a) / (1 - a); ln B on uniforms."""
    alpha = _check_alpha(alpha)
    _scalar_log(1.0, log_base)
    masses = p.masses[p.masses > 0]
    total = float(np.sum(masses**alpha))
    value = _scalar_log(total, log_base) / (1.0 - alpha)
    return _clamp_rounding(value)


@dataclass(frozen=True)
class DivergenceResult:
    """A named metric value with its parameters and boundedness flag."""

    metric: str
    value: float
    alpha: float | None = None
    log_base: str | None = None
    bounded: bool = False


# metric name -> (needs q, needs alpha, uses log_base, bounded on [0, 1])
METRICS: dict[str, tuple[bool, bool, bool, bool]] = {
    "bc": (True, False, False, True),
    "bhattacharyya": (True, False, False, False),
    "hellinger_affinity": (True, False, False, True),
    "hellinger_standard": (True, False, False, True),
    "kl": (True, False, True, False),
    "renyi": (True, True, True, False),
    "tsallis": (True, True, False, False),
    "jsd": (True, False, False, True),
    "shannon_entropy": (False, False, True, False),
    "renyi_entropy": (False, True, True, False),
}


def evaluate(
    metric: str,
    p: ProbabilityDistribution,
    q: ProbabilityDistribution | None = None,
    alpha: float | None = None,
    log_base: str = "natural",
) -> DivergenceResult:
    """Dispatch a metric by name, validating its parameter requirements."""
    if metric not in METRICS:
        raise ParameterError(
            f"unknown metric {metric!r}; choose from {sorted(METRICS)}"
        )
    needs_q, needs_alpha, uses_base, bounded = METRICS[metric]
    if needs_q and q is None:
        raise ParameterError(f"metric {metric!r} requires a second distribution")
    if not needs_q and q is not None:
        raise ParameterError(f"metric {metric!r} takes only one distribution")
    if needs_alpha and alpha is None:
        raise ParameterError(f"metric {metric!r} requires alpha")
    if not needs_alpha and alpha is not None:
        raise ParameterError(f"alpha is not a parameter of metric {metric!r}")
    if metric == "bc":
        value = bhattacharyya_coefficient(p, q)
    elif metric == "bhattacharyya":
        value = bhattacharyya_distance(p, q)
    elif metric == "hellinger_affinity":
        value = hellinger_affinity(p, q)
    elif metric == "hellinger_standard":
        value = hellinger_standard(p, q)
    elif metric == "kl":
        value = kl_divergence(p, q, log_base)
    elif metric == "renyi":
        value = renyi_divergence(p, q, alpha, log_base)
    elif metric == "tsallis":
        value = tsallis_divergence(p, q, alpha)
    elif metric == "jsd":
        value = jensen_shannon_divergence(p, q)
    elif metric == "shannon_entropy":
        value = shannon_entropy(p, log_base)
    else:
        value = renyi_entropy(p, alpha, log_base)
    reported_base = "base2" if metric == "jsd" else (log_base if uses_base else None)
    return DivergenceResult(
        metric=metric,
        value=value,
        alpha=alpha,
        log_base=reported_base,
        bounded=bounded,
    )
