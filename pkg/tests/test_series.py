"""Generator and CSV contracts: partitioning, determinism, round trips."""

import io

import numpy as np
import pytest

from hetquant import (
    ConfigurationError,
    IngestionError,
    ParameterError,
    SegmentedGeneratorConfig,
    TimeSeries,
    format_float,
    generate_segmented,
    read_csv,
    segment_lengths,
    series_csv_bytes,
    sigma_values,
    write_csv,
)


class TestSegmentLengths:
    def test_equal_partition(self):
        assert segment_lengths(1024, 4) == [256, 256, 256, 256]

    def test_remainder_goes_to_leading_segments(self):
        assert segment_lengths(10, 3) == [4, 3, 3]
        assert segment_lengths(7, 4) == [2, 2, 2, 1]

    def test_lengths_sum_and_balance(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            total = int(rng.integers(1, 5000))
            parts = int(rng.integers(1, total + 1))
            lengths = segment_lengths(total, parts)
            assert sum(lengths) == total
            assert max(lengths) - min(lengths) <= 1


class TestSigmaGrid:
    def test_single_segment_uses_sigma_min(self):
        config = SegmentedGeneratorConfig(total_samples=8, num_sigmas=1, sigma_min=0.7)
        assert sigma_values(config).tolist() == [0.7]

    def test_linear_grid_hits_endpoints_exactly(self):
        config = SegmentedGeneratorConfig(
            total_samples=100, num_sigmas=7, sigma_min=0.3, sigma_max=5.0, spacing="linear"
        )
        grid = sigma_values(config)
        assert grid[0] == 0.3
        assert grid[-1] == 5.0
        np.testing.assert_allclose(np.diff(grid), np.diff(grid)[0], rtol=1e-12)

    def test_logarithmic_grid_has_constant_ratio(self):
        config = SegmentedGeneratorConfig(
            total_samples=100,
            num_sigmas=5,
            sigma_min=0.125,
            sigma_max=8.0,
            spacing="logarithmic",
        )
        grid = sigma_values(config)
        ratios = grid[1:] / grid[:-1]
        np.testing.assert_allclose(ratios, ratios[0], rtol=1e-12)
        np.testing.assert_allclose(grid[[0, -1]], [0.125, 8.0], rtol=1e-12)


class TestGenerator:
    def test_identical_config_is_bit_identical(self):
        config = SegmentedGeneratorConfig(total_samples=2048, num_sigmas=8, seed=123)
        a = generate_segmented(config)
        b = generate_segmented(config)
        assert np.array_equal(a.samples, b.samples)

    def test_seed_changes_output(self):
        base = dict(total_samples=512, num_sigmas=4)
        a = generate_segmented(SegmentedGeneratorConfig(seed=1, **base))
        b = generate_segmented(SegmentedGeneratorConfig(seed=2, **base))
        assert not np.array_equal(a.samples, b.samples)

    def test_output_length_and_metadata(self):
        config = SegmentedGeneratorConfig(total_samples=1000, num_sigmas=3, seed=5)
        series = generate_segmented(config)
        assert len(series) == 1000
        assert series.metadata["num_sigmas"] == "3"
        assert series.metadata["seed"] == "5"

    def test_unit_sigma_sample_variance(self):
        config = SegmentedGeneratorConfig(
            total_samples=4096, num_sigmas=1, sigma_min=1.0, sigma_max=1.0, seed=7
        )
        series = generate_segmented(config)
        assert 0.9 < series.samples.var() < 1.1

    def test_segments_carry_distinct_scales(self):
        config = SegmentedGeneratorConfig(
            total_samples=20000, num_sigmas=2, sigma_min=0.5, sigma_max=8.0, seed=3
        )
        series = generate_segmented(config)
        first, second = series.samples[:10000], series.samples[10000:]
        ratio = second.var() / first.var()
        expected = (8.0 / 0.5) ** 2
        assert 0.8 * expected < ratio < 1.2 * expected

    def test_shuffle_permutes_but_preserves_scales(self):
        base = dict(
            total_samples=40000, num_sigmas=4, sigma_min=0.5, sigma_max=4.0, seed=9
        )
        plain = generate_segmented(SegmentedGeneratorConfig(**base))
        mixed = generate_segmented(
            SegmentedGeneratorConfig(shuffle_segments=True, **base)
        )
        assert not np.array_equal(plain.samples, mixed.samples)

        def segment_stds(series):
            return sorted(part.std() for part in np.split(series.samples, 4))

        np.testing.assert_allclose(
            segment_stds(plain), segment_stds(mixed), rtol=0.15
        )

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(total_samples=0, num_sigmas=1),
            dict(total_samples=4, num_sigmas=5),
            dict(total_samples=4, num_sigmas=0),
            dict(total_samples=4, num_sigmas=1, sigma_min=0.0),
            dict(total_samples=4, num_sigmas=1, sigma_min=-1.0),
            dict(total_samples=4, num_sigmas=2, sigma_min=2.0, sigma_max=1.0),
            dict(total_samples=4, num_sigmas=1, spacing="cubic"),
            dict(total_samples=4, num_sigmas=1, seed=-1),
            dict(total_samples=4, num_sigmas=1, seed=2**64),
        ],
    )
    def test_invalid_config_rejected(self, kwargs):
        with pytest.raises(ConfigurationError):
            SegmentedGeneratorConfig(**kwargs)


class TestTimeSeries:
    def test_rejects_non_finite_samples(self):
        with pytest.raises(ParameterError):
            TimeSeries(np.array([1.0, np.nan]))
        with pytest.raises(ParameterError):
            TimeSeries(np.array([np.inf]))

    def test_rejects_empty_and_multidimensional(self):
        with pytest.raises(ParameterError):
            TimeSeries(np.array([]))
        with pytest.raises(ParameterError):
            TimeSeries(np.zeros((2, 2)))

    def test_samples_are_immutable(self):
        series = TimeSeries(np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            series.samples[0] = 5.0

    def test_times_must_match_length(self):
        with pytest.raises(ParameterError):
            TimeSeries(np.array([1.0, 2.0]), times=np.array([0.0]))

    def test_value_equality_ignores_provenance(self):
        a = TimeSeries(np.array([1.0, 2.0]), name="a", metadata={"seed": "1"})
        b = TimeSeries(np.array([1.0, 2.0]), name="b")
        assert a == b


class TestFloatFormatting:
    def test_integral_floats_drop_the_point(self):
        assert format_float(1.0) == "1"
        assert format_float(-3.0) == "-3"
        assert format_float(2.5) == "2.5"
        assert format_float(0.1) == "0.1"

    def test_round_trip_is_exact(self):
        rng = np.random.default_rng(42)
        values = np.concatenate(
            [
                rng.normal(0, 1, 300),
                rng.normal(0, 1e12, 300),
                rng.normal(0, 1e-12, 300),
            ]
        )
        for x in values:
            assert float(format_float(x)) == x, f"{x!r} did not survive formatting"


class TestCsv:
    def test_write_canonical_bytes(self):
        series = TimeSeries(np.array([1.0, 2.0]))
        assert series_csv_bytes(series) == b"value\n1\n2\n"

    def test_read_single_column(self):
        series = read_csv(io.BytesIO(b"value\n1.0\n2.0\n"))
        assert series.samples.tolist() == [1.0, 2.0]
        assert series.times is None

    def test_round_trip_identity(self):
        rng = np.random.default_rng(42)
        for _ in range(25):
            n = int(rng.integers(1, 200))
            series = TimeSeries(rng.normal(0, 100, n))
            buffer = io.BytesIO()
            write_csv(series, buffer)
            buffer.seek(0)
            assert read_csv(buffer) == series

    def test_two_column_round_trip_preserves_t(self):
        series = TimeSeries(
            np.array([5.0, 6.5, -1.0]), times=np.array([0.0, 0.5, 1.0])
        )
        buffer = io.BytesIO()
        write_csv(series, buffer)
        assert buffer.getvalue() == b"t,value\n0,5\n0.5,6.5\n1,-1\n"
        buffer.seek(0)
        back = read_csv(buffer)
        assert back == series
        assert back.times is not None

    def test_path_round_trip(self, tmp_path):
        series = TimeSeries(np.array([0.25, -0.75]))
        target = tmp_path / "series.csv"
        write_csv(series, target)
        assert read_csv(target) == series

    @pytest.mark.parametrize(
        "payload, fragment",
        [
            (b"", "empty"),
            (b"value\n", "no data rows"),
            (b"wrong\n1\n", "header"),
            (b"value\n1.0\nabc\n", "row 2"),
            (b"value\nabc\n", "row 1"),
            (b"value\n1.0\n2.0,3.0\n", "row 2"),
            (b"t,value\n0\n", "row 1"),
            (b"value\ninf\n", "row 1"),
            (b"value\n1.0\nnan\n", "row 2"),
            (b"value\n1.0\n\n2.0\n", "row 2"),
        ],
    )
    def test_ingestion_errors_name_the_row(self, payload, fragment):
        with pytest.raises(IngestionError, match=fragment):
            read_csv(io.BytesIO(payload))
