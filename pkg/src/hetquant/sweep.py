"""Grid sweeps of the heteroskedasticity score over k, window, and seed.

Every (k, window, seed) cell generates a fresh segmented series, runs the
variance-histogram pipeline once, and records three scores derived from the
single Bhattacharyya evaluation: H_B (the coefficient itself), H_H (its
Hellinger-variant transform), and the Bhattacharyya distance. A cell's
random stream depends only on (seed, k), never on the window, so every
window analyzes the same series. Rows are ordered canonically by
(k, window, seed, metric), which makes reports byte-identical at any
parallelism level.
"""

from __future__ import annotations

import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import NamedTuple

import numpy as np
from scipy.stats import rankdata

from .distribution import estimate_pdf, uniform_reference
from .divergence import bhattacharyya_coefficient
from .errors import ConfigurationError, CorrelationUndefinedError, ParameterError
from .local_variance import local_variance
from .series import SegmentedGeneratorConfig, format_float, generate_segmented

__all__ = [
    "SweepConfig",
    "SweepRow",
    "SummaryRow",
    "SweepReport",
    "run_sweep",
    "spearman",
    "METRIC_ORDER",
]

METRIC_ORDER = ("H_B", "H_H", "bhattacharyya_distance")


def spearman(xs, ys) -> float:
    """Spearman rank correlation: Pearson correlation of average ranks."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise CorrelationUndefinedError(
            f"inputs must be equal-length vectors, got {xs.shape} and {ys.shape}"
        )
    if xs.size < 2:
        raise CorrelationUndefinedError("need at least two observations")
    rx = rankdata(xs)
    ry = rankdata(ys)
    if np.ptp(rx) == 0 or np.ptp(ry) == 0:
        raise CorrelationUndefinedError("zero rank variance makes correlation undefined")
    return float(np.corrcoef(rx, ry)[0, 1])


@dataclass(frozen=True)
class SweepConfig:
    """Sweep grid plus the generator settings shared by all cells."""

    sigma_counts: tuple[int, ...] = (1, 2, 4, 8, 16, 32, 64)
    windows: tuple[int, ...] = (32, 64, 128, 256)
    bins: int = 64
    total_samples: int = 65536
    seeds: tuple[int, ...] = tuple(range(1, 21))
    sigma_min: float = 0.25
    sigma_max: float = 8.0
    spacing: str = "linear"
    shuffle_segments: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma_counts", tuple(int(k) for k in self.sigma_counts))
        object.__setattr__(self, "windows", tuple(int(w) for w in self.windows))
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        if not self.sigma_counts or not self.windows or not self.seeds:
            raise ConfigurationError("sigma_counts, windows, and seeds must be nonempty")
        if min(self.sigma_counts) < 1:
            raise ConfigurationError("sigma counts must be positive")
        if max(self.sigma_counts) > self.total_samples:
            raise ConfigurationError("largest sigma count exceeds total_samples")
        if min(self.windows) < 2:
            raise ConfigurationError("windows must be at least 2")
        if max(self.windows) + 1 > self.total_samples:
            raise ConfigurationError(
                "largest window leaves fewer than two variance estimates"
            )
        if self.bins < 2:
            raise ConfigurationError("bins must be at least 2")
        # Delegate generator-parameter validation (sigma range, spacing, seeds).
        for seed in self.seeds:
            SegmentedGeneratorConfig(
                total_samples=self.total_samples,
                num_sigmas=max(self.sigma_counts),
                sigma_min=self.sigma_min,
                sigma_max=self.sigma_max,
                spacing=self.spacing,
                shuffle_segments=self.shuffle_segments,
                seed=seed,
            )


class SweepRow(NamedTuple):
    k: int
    window: int
    seed: int
    metric: str
    score: float


class SummaryRow(NamedTuple):
    window: int
    metric: str
    spearman: float
    mean_scores: tuple[float, ...]


def _cell_rows(config: SweepConfig, seed: int, k: int) -> list[SweepRow]:
    """Score one generated series under every window of the sweep."""
    series = generate_segmented(
        SegmentedGeneratorConfig(
            total_samples=config.total_samples,
            num_sigmas=k,
            sigma_min=config.sigma_min,
            sigma_max=config.sigma_max,
            spacing=config.spacing,
            shuffle_segments=config.shuffle_segments,
            seed=seed,
        )
    )
    rows = []
    for window in config.windows:
        dist = estimate_pdf(local_variance(series, window), config.bins)
        bc = bhattacharyya_coefficient(dist, uniform_reference(dist))
        distance = math.inf if bc == 0.0 else (-math.log(bc) if bc < 1.0 else 0.0)
        rows.append(SweepRow(k, window, seed, "H_B", bc))
        rows.append(SweepRow(k, window, seed, "H_H", 1.0 - math.sqrt(1.0 - bc)))
        rows.append(SweepRow(k, window, seed, "bhattacharyya_distance", distance))
    return rows


def run_sweep(config: SweepConfig, workers: int = 1) -> "SweepReport":
    """Execute every (k, window, seed) cell and assemble a canonical report.

    ``workers`` > 1 distributes cells over a process pool; the result is
    byte-identical to the sequential run because each cell derives its own
    random stream and rows are sorted afterwards.
    """
    if workers < 1:
        raise ParameterError("workers must be at least 1")
    tasks = [(seed, k) for seed in config.seeds for k in config.sigma_counts]
    rows: list[SweepRow] = []
    if workers == 1:
        for seed, k in tasks:
            rows.extend(_cell_rows(config, seed, k))
    else:
        seeds = [t[0] for t in tasks]
        ks = [t[1] for t in tasks]
        chunksize = max(1, len(tasks) // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for cell in pool.map(partial(_cell_rows, config), seeds, ks, chunksize=chunksize):
                rows.extend(cell)
    rows.sort(key=lambda r: (r.k, r.window, r.seed, r.metric))
    return SweepReport(rows=tuple(rows), config=config)


@dataclass(frozen=True)
class SweepReport:
    """All sweep rows plus per-(window, metric) aggregates."""

    rows: tuple[SweepRow, ...]
    config: SweepConfig

    def scores(self, window: int, metric: str, seed: int) -> list[float]:
        """Scores for one seed and window, ordered by ascending k."""
        picked = {
            row.k: row.score
            for row in self.rows
            if row.window == window and row.metric == metric and row.seed == seed
        }
        return [picked[k] for k in sorted(self.config.sigma_counts)]

    def summary_rows(self) -> list[SummaryRow]:
        """Aggregate each (window, metric): mean per-seed Spearman against
        log2(k), plus the across-seed mean score per k."""
        ks = sorted(self.config.sigma_counts)
        log_k = np.log2(ks)
        out: list[SummaryRow] = []
        for window in sorted(self.config.windows):
            for metric in METRIC_ORDER:
                per_seed = np.array(
                    [self.scores(window, metric, seed) for seed in self.config.seeds]
                )
                rhos = []
                for row in per_seed:
                    try:
                        rhos.append(spearman(log_k, row))
                    except CorrelationUndefinedError:
                        rhos.append(math.nan)
                out.append(
                    SummaryRow(
                        window=window,
                        metric=metric,
                        spearman=float(np.mean(rhos)),
                        mean_scores=tuple(float(m) for m in per_seed.mean(axis=0)),
                    )
                )
        return out

    def report_csv_bytes(self) -> bytes:
        out = io.StringIO()
        out.write("k,window,seed,metric,score\n")
        for row in self.rows:
            out.write(
                f"{row.k},{row.window},{row.seed},{row.metric},{format_float(row.score)}\n"
            )
        return out.getvalue().encode("utf-8")

    def summary_csv_bytes(self) -> bytes:
        ks = sorted(self.config.sigma_counts)
        out = io.StringIO()
        out.write("window,metric,spearman")
        for k in ks:
            out.write(f",mean_score_k{k}")
        out.write("\n")
        for row in self.summary_rows():
            out.write(f"{row.window},{row.metric},{format_float(row.spearman)}")
            for mean in row.mean_scores:
                out.write(f",{format_float(mean)}")
            out.write("\n")
        return out.getvalue().encode("utf-8")

    def write_report_csv(self, sink) -> None:
        data = self.report_csv_bytes()
        if isinstance(sink, (str, os.PathLike)):
            with open(sink, "wb") as handle:
                handle.write(data)
            return
        sink.write(data)

    def write_summary_csv(self, sink) -> None:
        data = self.summary_csv_bytes()
        if isinstance(sink, (str, os.PathLike)):
            with open(sink, "wb") as handle:
                handle.write(data)
            return
        sink.write(data)
