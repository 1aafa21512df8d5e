"""Time-series container, seeded segmented-variance generator, and CSV I/O.

The generator produces zero-mean Gaussian series whose standard deviation
changes across contiguous segments.  Randomness comes from NumPy's PCG64
generator seeded with ``SeedSequence([seed, num_sigmas])``, so output is
bit-reproducible for a fixed NumPy version and independent of any analysis
parameter such as the window size.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, IngestionError, ParameterError

__all__ = [
    "TimeSeries",
    "SegmentedGeneratorConfig",
    "generate_segmented",
    "segment_lengths",
    "sigma_values",
    "read_csv",
    "write_csv",
    "series_csv_bytes",
    "format_float",
]

_SPACINGS = ("linear", "logarithmic")


def format_float(x: float) -> str:
    """Render ``x`` in the shortest form that parses back to the same bits.

    Integral values drop the trailing ``.0`` (``1.0`` becomes ``"1"``).
    """
    text = repr(float(x))
    if text.endswith(".0"):
        text = text[:-2]
    return text


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Ordered sequence of finite real samples with optional provenance.

    ``times`` holds the optional timestamp column of a two-column CSV; it is
    carried through round trips but ignored by every analysis. Equality
    compares sample (and timestamp) values only, since ``name`` and
    ``metadata`` are provenance.
    """

    samples: np.ndarray
    name: str | None = None
    metadata: dict[str, str] = field(default_factory=dict)
    times: np.ndarray | None = None

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ParameterError("samples must be one-dimensional")
        if samples.size < 1:
            raise ParameterError("series must contain at least one sample")
        if not np.all(np.isfinite(samples)):
            raise ParameterError("samples must be finite")
        samples = samples.copy()
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)
        if self.times is not None:
            times = np.asarray(self.times, dtype=np.float64)
            if times.shape != samples.shape:
                raise ParameterError("times must match samples in length")
            if not np.all(np.isfinite(times)):
                raise ParameterError("times must be finite")
            times = times.copy()
            times.flags.writeable = False
            object.__setattr__(self, "times", times)

    def __len__(self) -> int:
        return int(self.samples.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TimeSeries):
            return NotImplemented
        if not np.array_equal(self.samples, other.samples):
            return False
        if (self.times is None) != (other.times is None):
            return False
        return self.times is None or np.array_equal(self.times, other.times)


@dataclass(frozen=True)
class SegmentedGeneratorConfig:
    """Parameters for the segmented-variance Gaussian generator."""

    total_samples: int
    num_sigmas: int = 1
    sigma_min: float = 0.25
    sigma_max: float = 8.0
    spacing: str = "linear"
    shuffle_segments: bool = False
    seed: int = 0

    def __post_init__(self) -> None:
        if self.total_samples < 1:
            raise ConfigurationError("total_samples must be positive")
        if self.num_sigmas < 1:
            raise ConfigurationError("num_sigmas must be positive")
        if self.num_sigmas > self.total_samples:
            raise ConfigurationError(
                f"num_sigmas ({self.num_sigmas}) exceeds total_samples ({self.total_samples})"
            )
        if not self.sigma_min > 0:
            raise ConfigurationError("sigma_min must be positive")
        if self.sigma_max < self.sigma_min:
            raise ConfigurationError("sigma_max must be at least sigma_min")
        if self.spacing not in _SPACINGS:
            raise ConfigurationError(f"spacing must be one of {_SPACINGS}")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must fit in 64 unsigned bits")


def segment_lengths(total_samples: int, num_segments: int) -> list[int]:
    """Split ``total_samples`` into ``num_segments`` as-equal-as-possible parts.

    The first ``total_samples mod num_segments`` parts receive one extra
    sample, so lengths differ by at most 1 and sum to the total.
    """
    base, extra = divmod(total_samples, num_segments)
    return [base + 1 if j < extra else base for j in range(num_segments)]


def sigma_values(config: SegmentedGeneratorConfig) -> np.ndarray:
    """Per-segment standard deviations before any shuffling.

    A single segment uses ``sigma_min``; otherwise the k values span
    [sigma_min, sigma_max] with linear or logarithmic spacing, hitting both
    endpoints exactly.
    """
    if config.num_sigmas == 1:
        return np.array([config.sigma_min])
    if config.spacing == "linear":
        return np.linspace(config.sigma_min, config.sigma_max, config.num_sigmas)
    return np.geomspace(config.sigma_min, config.sigma_max, config.num_sigmas)


def generate_segmented(config: SegmentedGeneratorConfig) -> TimeSeries:
    """Generate a zero-mean Gaussian series with segment-wise variances.

    The series has ``total_samples`` values in ``num_sigmas`` contiguous
    segments; segment j draws from N(0, sigma_j^2). Identical configs yield
    bit-identical output.
    """
    rng = np.random.default_rng(np.random.SeedSequence([config.seed, config.num_sigmas]))
    sigmas = sigma_values(config)
    if config.shuffle_segments:
        sigmas = rng.permutation(sigmas)
    lengths = segment_lengths(config.total_samples, config.num_sigmas)
    parts = [rng.normal(0.0, sigma, length) for sigma, length in zip(sigmas, lengths)]
    samples = np.concatenate(parts)
    metadata = {
        "generator": "segmented",
        "total_samples": str(config.total_samples),
        "num_sigmas": str(config.num_sigmas),
        "sigma_min": format_float(config.sigma_min),
        "sigma_max": format_float(config.sigma_max),
        "spacing": config.spacing,
        "shuffle_segments": str(config.shuffle_segments).lower(),
        "seed": str(config.seed),
    }
    return TimeSeries(samples, name="segmented", metadata=metadata)


def _parse_value(token: str, row: int, column: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise IngestionError(f"row {row}: {column} is not a number: {token!r}") from None
    if not np.isfinite(value):
        raise IngestionError(f"row {row}: {column} is not finite: {token!r}")
    return value


def read_csv(source) -> TimeSeries:
    """Parse a series from a CSV byte stream or path.

    The first line must be the header ``value`` or ``t,value``. Every data
    row must hold finite numbers; errors name the offending data row
    (1-based, header excluded).
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as handle:
            return read_csv(handle)
    raw = source.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestionError(f"input is not valid UTF-8: {exc}") from None
    lines = text.splitlines()
    if not lines:
        raise IngestionError("empty file")
    header = lines[0].strip()
    if header == "value":
        has_times = False
    elif header == "t,value":
        has_times = True
    else:
        raise IngestionError(f"header must be 'value' or 't,value', got {header!r}")
    values: list[float] = []
    times: list[float] = []
    for row, line in enumerate(lines[1:], start=1):
        line = line.strip()
        if not line:
            raise IngestionError(f"row {row}: blank line")
        fields = line.split(",")
        expected = 2 if has_times else 1
        if len(fields) != expected:
            raise IngestionError(
                f"row {row}: expected {expected} column(s), got {len(fields)}"
            )
        if has_times:
            times.append(_parse_value(fields[0], row, "t"))
            values.append(_parse_value(fields[1], row, "value"))
        else:
            values.append(_parse_value(fields[0], row, "value"))
    if not values:
        raise IngestionError("no data rows")
    return TimeSeries(
        np.array(values), times=np.array(times) if has_times else None
    )


def series_csv_bytes(series: TimeSeries) -> bytes:
    """Canonical CSV encoding: LF endings, shortest round-trip floats."""
    out = io.StringIO()
    if series.times is None:
        out.write("value\n")
        for x in series.samples:
            out.write(format_float(x))
            out.write("\n")
    else:
        out.write("t,value\n")
        for t, x in zip(series.times, series.samples):
            out.write(format_float(t))
            out.write(",")
            out.write(format_float(x))
            out.write("\n")
    return out.getvalue().encode("utf-8")


def write_csv(series: TimeSeries, sink) -> None:
    """Write the canonical CSV encoding of ``series`` to a binary sink or path."""
    data = series_csv_bytes(series)
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "wb") as handle:
            handle.write(data)
        return
    sink.write(data)
