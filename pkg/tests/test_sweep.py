"""
Tests for condition grids and the synthetic sweep engine.
"""

import io

import numpy as np
import pytest

from splitplan.costmodel import LatencyModel, StressResponse
from splitplan.cutpoints import enumerate_cutpoints
from splitplan.exceptions import DeviceProfileError, SplitPlanConfigurationError, SweepError
from splitplan.fixtures import chain_document
from splitplan.graph import load_graph
from splitplan.sweep import (
    CSV_HEADER,
    ConditionGrid,
    default_grid,
    jitter_factors,
    load_grid,
    load_grid_file,
    restrict,
    run_sweep,
    sweep_platforms,
    write_records,
    write_records_file,
)


def _csv(records):
    buffer = io.StringIO()
    write_records(records, buffer)
    return buffer.getvalue()


@pytest.fixture
def two_platform_graph():
    """A chain priced on two edge devices."""
    document = chain_document(4, seed=2)
    for layer in document["layers"]:
        layer["base_latency"]["edge-arm"] = layer["base_latency"]["edge"] * 3
    return load_graph(document)


class TestConditionGrid:
    """Test cases for ConditionGrid."""

    def test_default_grid(self):
        """Five CPU levels, five memory levels and four rates give 100 combinations."""
        grid = default_grid()

        assert len(grid) == 100
        assert grid.repetitions == 10
        assert grid.cpu_levels == (0.0, 0.22, 0.45, 0.67, 0.9)
        assert grid.net_levels == (10.0, 25.0, 37.5, 50.0)

    def test_conditions_are_cpu_major(self):
        conditions = list(default_grid().conditions())

        assert len(conditions) == 100
        assert (conditions[0].cpu_stress, conditions[0].mem_stress, conditions[0].net_rate) == (0.0, 0.0, 10.0)
        assert conditions[1].net_rate == 25.0
        assert conditions[4].mem_stress == 0.22
        assert conditions[20].cpu_stress == 0.22

    def test_restrict_to_one_combination(self):
        grid = restrict(default_grid(), cpu_levels=[0.9], mem_levels=[0.0], net_levels=[10.0])

        assert len(grid) == 1
        assert grid.repetitions == 10

    def test_invalid_levels(self):
        with pytest.raises(ValueError):
            ConditionGrid(cpu_levels=(0.0, 1.2))
        with pytest.raises(ValueError):
            ConditionGrid(net_levels=(10.0, 10.0))
        with pytest.raises(ValueError):
            ConditionGrid(mem_levels=())
        with pytest.raises(ValueError):
            ConditionGrid(repetitions=0)

    def test_load_grid_keeps_missing_axes(self):
        grid = load_grid("net_levels: [10, 50]\nrepetitions: 2\n")

        assert grid.net_levels == (10.0, 50.0)
        assert grid.cpu_levels == default_grid().cpu_levels
        assert len(grid) == 50

    def test_load_grid_rejects_bad_levels(self):
        with pytest.raises(SplitPlanConfigurationError, match="Invalid condition grid"):
            load_grid({"cpu_levels": [2.0]})

    def test_load_grid_file(self, tmp_path):
        path = tmp_path / "grid.yaml"
        path.write_text("cpu_levels: [0.0, 0.9]\nmem_levels: [0.0]\nnet_levels: [50]\n")

        assert len(load_grid_file(path)) == 2

    def test_missing_grid_file(self, tmp_path):
        with pytest.raises(FileNotFoundError, match="Grid file not found"):
            load_grid_file(tmp_path / "grid.yaml")

    def test_grid_file_not_utf8(self, tmp_path):
        path = tmp_path / "grid.yaml"
        path.write_bytes(b"cpu_levels: [0.0, \xff]\n")

        with pytest.raises(SplitPlanConfigurationError, match="UTF-8"):
            load_grid_file(path)


class TestRunSweep:
    """Test cases for run_sweep."""

    def test_record_count(self, chain5_graph):
        """4 cuts x 100 conditions x 10 runs."""
        records = list(run_sweep(chain5_graph, default_grid(), StressResponse.default()))

        assert len(records) == 4000

    def test_one_repetition(self, chain5_graph):
        grid = restrict(default_grid(), repetitions=1)

        records = list(run_sweep(chain5_graph, grid, StressResponse.default()))

        assert len(records) == 400
        assert {r.run_index for r in records} == {0}

    def test_noise_free_records_equal_model(self, chain5_graph):
        resp = StressResponse.default()
        model = LatencyModel(response=resp)
        grid = restrict(default_grid(), repetitions=3)
        cuts = {cut.after_layer: cut for cut in enumerate_cutpoints(chain5_graph)}

        for record in run_sweep(chain5_graph, grid, resp, noise=0.0):
            cond = next(
                c
                for c in grid.conditions()
                if (c.cpu_stress, c.mem_stress, c.net_rate)
                == (record.cpu_stress, record.mem_stress, record.net_rate)
            )
            expected = model.estimate(chain5_graph, cuts[record.cut_after], cond).total_s
            assert record.latency_s == expected

    def test_record_order(self, chain5_graph):
        """Records come cut-major, then condition, then run index."""
        grid = restrict(default_grid(), repetitions=2)

        records = list(run_sweep(chain5_graph, grid, StressResponse.default()))

        assert [r.cut_after for r in records[:200]] == [0] * 200
        assert records[200].cut_after == 1
        assert [r.run_index for r in records[:4]] == [0, 1, 0, 1]
        assert records[0].net_rate == 10.0
        assert records[2].net_rate == 25.0

    def test_same_seed_same_bytes(self, chain5_graph):
        resp = StressResponse.default()

        first = _csv(run_sweep(chain5_graph, default_grid(), resp, seed=7))
        second = _csv(run_sweep(chain5_graph, default_grid(), resp, seed=7))

        assert first == second

    def test_parallel_sweep_is_identical(self, chain5_graph):
        resp = StressResponse.default()

        serial = _csv(run_sweep(chain5_graph, default_grid(), resp, seed=7))
        parallel = _csv(run_sweep(chain5_graph, default_grid(), resp, seed=7, jobs=3))

        assert serial == parallel

    def test_different_seed_differs(self, chain5_graph):
        resp = StressResponse.default()

        assert _csv(run_sweep(chain5_graph, default_grid(), resp, seed=1)) != _csv(
            run_sweep(chain5_graph, default_grid(), resp, seed=2)
        )

    def test_latencies_positive(self, chain5_graph):
        records = run_sweep(chain5_graph, default_grid(), StressResponse.default(), noise=0.5, seed=3)

        assert all(r.latency_s > 0 for r in records)

    def test_platform_label(self, chain5_graph):
        default = next(run_sweep(chain5_graph, default_grid(), StressResponse.identity()))
        named = next(run_sweep(chain5_graph, default_grid(), StressResponse.identity(), platform="P1"))

        assert default.platform == "edge:cloud"
        assert named.platform == "P1"
        assert default.model == "chain5"

    def test_all_cloud_cut(self, chain5_graph):
        grid = restrict(default_grid(), repetitions=1)

        records = list(run_sweep(chain5_graph, grid, StressResponse.identity(), allow_all_cloud=True))

        assert len(records) == 500
        assert records[0].cut_after == -1

    def test_graph_without_cuts(self):
        graph = load_graph(chain_document(1))

        with pytest.raises(SweepError, match="no cut point"):
            run_sweep(graph, default_grid(), StressResponse.identity())

    def test_bad_arguments_fail_eagerly(self, chain5_graph):
        resp = StressResponse.identity()

        with pytest.raises(SweepError, match="Noise"):
            run_sweep(chain5_graph, default_grid(), resp, noise=-0.1)
        with pytest.raises(SweepError, match="Seed"):
            run_sweep(chain5_graph, default_grid(), resp, seed=-1)
        with pytest.raises(SweepError, match="jobs"):
            run_sweep(chain5_graph, default_grid(), resp, jobs=0)
        with pytest.raises(DeviceProfileError):
            run_sweep(chain5_graph, default_grid(), resp, edge_profile="gpu")


class TestSweepPlatforms:
    """Test cases for sweep_platforms."""

    def test_platforms_in_order(self, two_platform_graph):
        grid = restrict(default_grid(), repetitions=1)
        platforms = {"P1": ("edge", "cloud"), "P2": ("edge-arm", "cloud")}

        records = list(sweep_platforms(two_platform_graph, grid, StressResponse.identity(), platforms, noise=0))

        assert len(records) == 2 * 3 * 100
        assert records[0].platform == "P1"
        assert records[-1].platform == "P2"
        p1 = {(r.cut_after, r.net_rate): r.latency_s for r in records if r.platform == "P1"}
        p2 = {(r.cut_after, r.net_rate): r.latency_s for r in records if r.platform == "P2"}
        assert all(p2[key] > p1[key] for key in p1)

    def test_no_platforms(self, two_platform_graph):
        with pytest.raises(SweepError, match="At least one platform"):
            sweep_platforms(two_platform_graph, default_grid(), StressResponse.identity(), {})

    def test_unknown_profile_fails_before_streaming(self, two_platform_graph):
        platforms = {"P1": ("edge", "cloud"), "P9": ("tpu", "cloud")}

        with pytest.raises(DeviceProfileError):
            sweep_platforms(two_platform_graph, default_grid(), StressResponse.identity(), platforms)

    def test_response_per_edge_profile(self, two_platform_graph):
        grid = restrict(default_grid(), repetitions=1)
        platforms = {"P1": ("edge", "cloud"), "P2": ("edge-arm", "cloud")}
        responses = {"edge": StressResponse.identity(), "edge-arm": StressResponse.default()}

        records = list(sweep_platforms(two_platform_graph, grid, responses, platforms, noise=0))

        identity = list(
            run_sweep(two_platform_graph, grid, StressResponse.identity(), edge_profile="edge-arm", noise=0)
        )
        stressed = [r for r in records if r.platform == "P2"]
        assert [r.latency_s for r in records if r.platform == "P1"] == [
            r.latency_s for r in run_sweep(two_platform_graph, grid, StressResponse.identity(), noise=0)
        ]
        for plain, record in zip(identity, stressed):
            if record.cpu_stress == 0.0 and record.mem_stress == 0.0:
                assert record.latency_s == plain.latency_s
            else:
                assert record.latency_s > plain.latency_s

    def test_missing_response_for_profile(self, two_platform_graph):
        platforms = {"P1": ("edge", "cloud"), "P2": ("edge-arm", "cloud")}

        with pytest.raises(SweepError, match="No stress response for edge profile 'edge-arm'"):
            sweep_platforms(two_platform_graph, default_grid(), {"edge": StressResponse.identity()}, platforms)

    def test_rtt_per_edge_profile(self, two_platform_graph):
        grid = restrict(default_grid(), repetitions=1)
        platforms = {"P1": ("edge", "cloud"), "P2": ("edge", "cloud")}

        records = list(
            sweep_platforms(
                two_platform_graph, grid, StressResponse.identity(), platforms, {"edge": 0.5}, noise=0
            )
        )

        base = list(run_sweep(two_platform_graph, grid, StressResponse.identity(), 0.5, noise=0))
        assert [r.latency_s for r in records if r.platform == "P2"] == [r.latency_s for r in base]

    def test_same_profiles_draw_independent_jitter(self, two_platform_graph):
        grid = restrict(default_grid(), repetitions=3)
        platforms = {"P1": ("edge", "cloud"), "P2": ("edge", "cloud")}

        records = list(
            sweep_platforms(two_platform_graph, grid, StressResponse.identity(), platforms, noise=0.05, seed=3)
        )
        again = list(
            sweep_platforms(two_platform_graph, grid, StressResponse.identity(), platforms, noise=0.05, seed=3)
        )

        p1 = [r.latency_s for r in records if r.platform == "P1"]
        p2 = [r.latency_s for r in records if r.platform == "P2"]
        assert len(p1) == len(p2)
        assert p1 != p2
        assert records == again


class TestRecordsCsv:
    """Test cases for the measurement CSV."""

    def test_header_and_count(self, chain5_graph):
        grid = restrict(default_grid(), repetitions=1)
        buffer = io.StringIO()

        count = write_records(run_sweep(chain5_graph, grid, StressResponse.identity()), buffer)

        lines = buffer.getvalue().splitlines()
        assert count == 400
        assert lines[0] == ",".join(CSV_HEADER)
        assert len(lines) == 401

    def test_floats_keep_full_precision(self, chain5_graph):
        grid = restrict(default_grid(), repetitions=1)
        record = next(run_sweep(chain5_graph, grid, StressResponse.identity(), noise=0.3, seed=5))

        row = record.to_row()

        assert float(row[-1]) == record.latency_s
        assert row[-1] == repr(record.latency_s)

    def test_write_file(self, chain5_graph, tmp_path):
        grid = restrict(default_grid(), repetitions=1)
        path = tmp_path / "out" / "sweep.csv"

        count = write_records_file(run_sweep(chain5_graph, grid, StressResponse.identity()), path)

        assert count == 400
        assert path.read_text().startswith("model,platform,cpu_stress")


class TestJitter:
    """Test cases for jitter_factors."""

    def test_no_noise_is_exactly_one(self):
        assert np.array_equal(jitter_factors(0.0, 3, (1, 2), 5), np.ones(5))

    def test_streams_are_independent_of_order(self):
        a = jitter_factors(0.05, 9, (2, 7), 10)
        b = jitter_factors(0.05, 9, (2, 7), 10)

        assert np.array_equal(a, b)
        assert not np.array_equal(a, jitter_factors(0.05, 9, (2, 8), 10))

    def test_floor(self):
        factors = jitter_factors(5.0, 1, (0,), 1000)

        assert factors.min() >= 0.1
