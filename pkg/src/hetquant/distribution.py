"""Normalized histograms over variance space and the uniform reference.

The histogram support is [0, max(variances)] split into equal-width bins,
anchored at zero to match the idealized uniform-over-[0, inf) reference,
which is realized here as a discrete uniform on the same bins.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass

import numpy as np

from .errors import IngestionError, ParameterError
from .local_variance import LocalVarianceSeries
from .series import format_float

__all__ = [
    "ProbabilityDistribution",
    "estimate_pdf",
    "uniform_reference",
    "distribution_csv_bytes",
    "write_distribution_csv",
    "read_distribution_csv",
]

_SUM_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class ProbabilityDistribution:
    """Histogram with B+1 strictly increasing edges and B probability masses."""

    edges: np.ndarray
    masses: np.ndarray

    def __post_init__(self) -> None:
        edges = np.asarray(self.edges, dtype=np.float64)
        masses = np.asarray(self.masses, dtype=np.float64)
        if edges.ndim != 1 or edges.size < 2:
            raise ParameterError("edges must hold at least two boundaries")
        if masses.ndim != 1 or masses.size != edges.size - 1:
            raise ParameterError("masses must hold exactly one value per bin")
        if not np.all(np.isfinite(edges)):
            raise ParameterError("edges must be finite")
        if np.any(np.diff(edges) <= 0):
            raise ParameterError("edges must be strictly increasing")
        if np.any(masses < 0) or not np.all(np.isfinite(masses)):
            raise ParameterError("masses must be finite and nonnegative")
        total = float(masses.sum())
        if abs(total - 1.0) > _SUM_TOLERANCE:
            raise ParameterError(f"masses must sum to 1, got {total!r}")
        edges = edges.copy()
        masses = masses.copy()
        edges.flags.writeable = False
        masses.flags.writeable = False
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "masses", masses)

    @property
    def bins(self) -> int:
        return int(self.masses.size)

    @property
    def midpoints(self) -> np.ndarray:
        return (self.edges[:-1] + self.edges[1:]) / 2.0

    def same_edges(self, other: "ProbabilityDistribution") -> bool:
        return np.array_equal(self.edges, other.edges)


def estimate_pdf(variances, bins: int) -> ProbabilityDistribution:
    """Histogram nonnegative variance values into a normalized distribution.

    Accepts a LocalVarianceSeries or any sequence of nonnegative reals. The
    bin edges split [0, max(values)] linearly; an all-zero input degenerates
    to support [0, 1] so the mass concentrates in the first bin. The last
    bin includes its right edge, so the maximum always lands inside.
    """
    if isinstance(variances, LocalVarianceSeries):
        values = variances.variances
    else:
        values = np.asarray(variances, dtype=np.float64)
    if values.ndim != 1 or values.size < 1:
        raise ParameterError("need at least one variance value")
    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise ParameterError("variance values must be finite and nonnegative")
    if bins < 1:
        raise ParameterError(f"bins must be at least 1, got {bins}")
    top = float(values.max())
    if top <= 0.0:
        top = 1.0
    edges = np.linspace(0.0, top, bins + 1)
    counts, _ = np.histogram(values, bins=edges)
    masses = counts / counts.sum()
    return ProbabilityDistribution(edges, masses)


def uniform_reference(like: ProbabilityDistribution) -> ProbabilityDistribution:
    """Discrete uniform distribution on the same bin edges as ``like``."""
    bins = like.bins
    return ProbabilityDistribution(like.edges, np.full(bins, 1.0 / bins))


def distribution_csv_bytes(dist: ProbabilityDistribution) -> bytes:
    """Two-column ``bin_midpoint,mass`` CSV encoding, LF endings."""
    out = io.StringIO()
    out.write("bin_midpoint,mass\n")
    for mid, mass in zip(dist.midpoints, dist.masses):
        out.write(format_float(mid))
        out.write(",")
        out.write(format_float(mass))
        out.write("\n")
    return out.getvalue().encode("utf-8")


def write_distribution_csv(dist: ProbabilityDistribution, sink) -> None:
    data = distribution_csv_bytes(dist)
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "wb") as handle:
            handle.write(data)
        return
    sink.write(data)


def read_distribution_csv(source) -> ProbabilityDistribution:
    """Parse a ``bin_midpoint,mass`` CSV back into a distribution.

    Edges are reconstructed between consecutive midpoints; a single-bin file
    uses a unit-width bin around its midpoint. Masses must sum to 1.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as handle:
            return read_distribution_csv(handle)
    raw = source.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestionError(f"input is not valid UTF-8: {exc}") from None
    lines = text.splitlines()
    if not lines:
        raise IngestionError("empty file")
    if lines[0].strip() != "bin_midpoint,mass":
        raise IngestionError(f"header must be 'bin_midpoint,mass', got {lines[0]!r}")
    midpoints: list[float] = []
    masses: list[float] = []
    for row, line in enumerate(lines[1:], start=1):
        fields = line.strip().split(",")
        if len(fields) != 2:
            raise IngestionError(f"row {row}: expected 2 columns, got {len(fields)}")
        try:
            mid, mass = float(fields[0]), float(fields[1])
        except ValueError:
            raise IngestionError(f"row {row}: not a number: {line!r}") from None
        if not (np.isfinite(mid) and np.isfinite(mass)):
            raise IngestionError(f"row {row}: non-finite value: {line!r}")
        midpoints.append(mid)
        masses.append(mass)
    if not midpoints:
        raise IngestionError("no data rows")
    mids = np.array(midpoints)
    if mids.size > 1 and np.any(np.diff(mids) <= 0):
        raise IngestionError("bin midpoints must be strictly increasing")
    if mids.size == 1:
        edges = np.array([mids[0] - 0.5, mids[0] + 0.5])
    else:
        inner = (mids[:-1] + mids[1:]) / 2.0
        first = mids[0] - (inner[0] - mids[0])
        last = mids[-1] + (mids[-1] - inner[-1])
        edges = np.concatenate(([first], inner, [last]))
    total = float(np.sum(masses))
    if abs(total - 1.0) > _SUM_TOLERANCE:
        raise IngestionError(f"masses must sum to 1, got {total!r}")
    try:
        return ProbabilityDistribution(edges, np.array(masses))
    except ParameterError as exc:
        raise IngestionError(str(exc)) from None
