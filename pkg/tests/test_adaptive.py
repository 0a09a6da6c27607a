"""
Tests for planning, repartitioning decisions and scenario simulation.
"""

import numpy as np
import pytest

from splitplan.adaptive import (
    TRACE_HEADER,
    DeploymentState,
    RepartitionPolicy,
    RequestSchedule,
    Scenario,
    decide,
    load_scenario,
    load_scenario_file,
    plan,
    plan_with,
    simulate,
    write_trace,
)
from splitplan.analysis import optimal_cuts
from splitplan.costmodel import LatencyModel, OperationalCondition, StressResponse
from splitplan.cutpoints import enumerate_cutpoints
from splitplan.exceptions import PlanningError, ScenarioError
from splitplan.fixtures import chain_document, random_document
from splitplan.graph import load_graph
from splitplan.sweep import default_grid, restrict, run_sweep


@pytest.fixture
def shifting_graph(make_chain):
    """
    Cutting after layer 1 wins at 50 Mb/s; cutting after layer 2 wins at 10 Mb/s.

    Layer 1 emits 10^6 bytes, layer 2 only 10^4 but costs 0.4 s on the edge.
    """
    return make_chain(
        edge=[0.001, 0.4, 0.3],
        cloud=[0.0002, 0.04, 0.06],
        output_bytes=[1_000_000, 10_000, 10],
        name="shifting",
    )


@pytest.fixture
def identity_model():
    return LatencyModel(response=StressResponse.identity())


def _scenario(events=(), policy=None, rate=1.0, duration=60.0, net=50.0):
    document = {
        "initial": {"cpu": 0.0, "mem": 0.0, "net": net},
        "events": list(events),
        "requests": {"rate_per_s": rate, "duration_s": duration},
    }
    if policy is not None:
        document["policy"] = policy
    return load_scenario(document)


def _table_estimator(cuts, latencies):
    by_layer = {cut.after_layer: latency for cut, latency in zip(cuts, latencies)}
    return lambda cut, cond: by_layer[cut.after_layer]


class TestPlan:
    """Test cases for plan and plan_with."""

    def test_lowest_total_wins(self, make_chain):
        """Cuts 1, 4 and 7 at 3.236, 2.022 and 2.5 s: cut 4 is chosen."""
        sizes = [10_000_000] * 8
        sizes[0], sizes[3], sizes[6] = 3_236_000, 2_022_000, 2_500_000
        graph = make_chain(edge=[0.0] * 8, cloud=[0.0] * 8, output_bytes=sizes)
        cond = OperationalCondition(net_rate=8)

        cut, estimate = plan(graph, cond, StressResponse.identity())

        assert cut.label == 4
        assert estimate.total_s == pytest.approx(2.022)

    def test_single_cut(self):
        graph = load_graph(chain_document(2))

        cut, _ = plan(graph, OperationalCondition(net_rate=10), StressResponse.default())

        assert cut.after_layer == 0

    def test_no_cut(self):
        graph = load_graph(chain_document(1))

        with pytest.raises(PlanningError, match="no cut point"):
            plan(graph, OperationalCondition(net_rate=10), StressResponse.default())

    def test_ties_go_to_smallest_layer_id(self, make_chain):
        graph = make_chain(edge=[0.0] * 4, cloud=[0.0] * 4, output_bytes=[100] * 4)

        cut, _ = plan(graph, OperationalCondition(net_rate=10), StressResponse.identity())

        assert cut.after_layer == 0

    def test_ties_agree_with_sweep_analysis(self):
        """Declared out of topological order, the tied cuts after layers 3 and 1 resolve the same way everywhere."""

        def spec(layer_id, inputs, output_bytes, edge=0.01, cloud=0.002):
            return {
                "id": layer_id,
                "inputs": inputs,
                "output_bytes": output_bytes,
                "base_latency": {"edge": edge, "cloud": cloud},
            }

        graph = load_graph(
            {
                "name": "shuffled",
                "layers": [
                    spec(0, [], 1_000_000),
                    spec(1, [3], 10, edge=0.0, cloud=0.0),
                    spec(2, [1], 1_000_000),
                    spec(3, [0], 10),
                    spec(4, [2], 10),
                ],
            }
        )
        resp = StressResponse.default()

        optima = optimal_cuts(run_sweep(graph, restrict(default_grid(), repetitions=1), resp, noise=0))

        assert graph.topological_order == (0, 3, 1, 2, 4)
        assert len(optima) == 100
        for optimum in optima:
            key = optimum.key
            cond = OperationalCondition(cpu_stress=key.cpu_stress, mem_stress=key.mem_stress, net_rate=key.net_rate)
            cut, _ = plan(graph, cond, resp)
            assert cut.after_layer == optimum.cut_after == 1

    def test_all_cloud_option(self, make_chain):
        """A slow edge and a tiny input make running everything in the cloud best."""
        graph = make_chain(edge=[5.0, 5.0, 5.0], cloud=[0.01, 0.01, 0.01], output_bytes=[10, 1_000_000, 10])

        without, _ = plan(graph, OperationalCondition(net_rate=10), StressResponse.identity())
        with_all, _ = plan(graph, OperationalCondition(net_rate=10), StressResponse.identity(), allow_all_cloud=True)

        assert without.after_layer == 0
        assert with_all.is_all_cloud

    def test_parallel_pricing_is_identical(self):
        graph = load_graph(random_document(20, seed=8))
        cond = OperationalCondition(cpu_stress=0.45, mem_stress=0.22, net_rate=25)

        serial = plan(graph, cond, StressResponse.default())
        parallel = plan(graph, cond, StressResponse.default(), jobs=4)

        assert serial[0] == parallel[0]
        assert serial[1] == parallel[1]

    @pytest.mark.slow
    def test_random_instances_match_brute_force(self):
        """1000 random graphs and conditions against an exhaustive argmin."""
        rng = np.random.default_rng(2024)
        model = LatencyModel(response=StressResponse.default())

        for instance in range(1000):
            graph = load_graph(random_document(int(rng.integers(2, 21)), seed=instance))
            cond = OperationalCondition(
                cpu_stress=float(rng.uniform(0, 1)),
                mem_stress=float(rng.uniform(0, 1)),
                net_rate=float(rng.uniform(1, 100)),
            )
            cuts = enumerate_cutpoints(graph)
            totals = [model.estimate(graph, c, cond).total_s for c in cuts]

            chosen, estimate = plan_with(graph, cond, model)

            assert chosen == cuts[totals.index(min(totals))]
            assert all(estimate.total_s <= t for t in totals)


class TestDecide:
    """Test cases for decide."""

    @pytest.fixture
    def chain3(self):
        graph = load_graph(chain_document(3))
        return graph, enumerate_cutpoints(graph)

    def test_large_gain_switches(self, chain3, identity_model):
        """Static 2.254 s against best 1.296 s is a 42.50 % gain."""
        graph, cuts = chain3
        state = DeploymentState(current_cut=cuts[0])

        decision = decide(
            state,
            OperationalCondition(cpu_stress=0.9, net_rate=50),
            RepartitionPolicy(),
            graph,
            identity_model,
            estimator=_table_estimator(cuts, [2.254, 1.296]),
        )

        assert decision.is_switch
        assert decision.target_cut == cuts[1]
        assert decision.predicted_gain_pct == pytest.approx(42.50, abs=0.01)

    def test_best_is_current(self, chain3, identity_model):
        graph, cuts = chain3
        state = DeploymentState(current_cut=cuts[1])

        decision = decide(
            state,
            OperationalCondition(net_rate=50),
            RepartitionPolicy(),
            graph,
            identity_model,
            estimator=_table_estimator(cuts, [2.0, 1.0]),
        )

        assert decision.action == "keep"
        assert decision.target_cut == cuts[1]
        assert decision.predicted_gain_pct == 0.0

    def test_small_gain_keeps(self, chain3, identity_model):
        graph, cuts = chain3
        state = DeploymentState(current_cut=cuts[0])

        decision = decide(
            state,
            OperationalCondition(net_rate=50),
            RepartitionPolicy(min_gain_pct=5),
            graph,
            identity_model,
            estimator=_table_estimator(cuts, [1.0, 0.97]),
        )

        assert decision.action == "keep"
        assert decision.target_cut == cuts[0]
        assert decision.predicted_gain_pct == pytest.approx(3.0)

    def test_cooldown(self, chain3, identity_model):
        graph, cuts = chain3
        state = DeploymentState(current_cut=cuts[0], last_switch_s=10.0)
        policy = RepartitionPolicy(cooldown_s=5.0)
        estimator = _table_estimator(cuts, [2.0, 1.0])
        cond = OperationalCondition(net_rate=10)

        early = decide(state, cond, policy, graph, identity_model, now_s=12.0, estimator=estimator)
        later = decide(state, cond, policy, graph, identity_model, now_s=15.0, estimator=estimator)

        assert early.action == "keep"
        assert early.predicted_gain_pct == pytest.approx(50.0)
        assert later.action == "switch"

    def test_model_predictions(self, shifting_graph, identity_model):
        """Without an estimator the latency model prices the cuts."""
        cuts = enumerate_cutpoints(shifting_graph)
        cond = OperationalCondition(net_rate=10)

        decision = decide(DeploymentState(current_cut=cuts[0]), cond, RepartitionPolicy(), shifting_graph, identity_model)

        best, estimate = plan(shifting_graph, cond, StressResponse.identity())
        assert decision.is_switch
        assert decision.target_cut == best
        assert decision.predicted_best_s == estimate.total_s
        assert decision.predicted_static_s == pytest.approx(0.901)


class TestSimulate:
    """Test cases for simulate."""

    def test_constant_conditions(self, shifting_graph, identity_model):
        """No events: no switches and n times the planned latency."""
        scenario = _scenario()

        trace = simulate(shifting_graph, scenario, identity_model)

        _, estimate = plan(shifting_graph, OperationalCondition(net_rate=50), StressResponse.identity())
        assert trace.switches == 0
        assert trace.decisions == []
        assert len(trace.requests) == 60
        assert trace.cumulative_latency_s == pytest.approx(60 * estimate.total_s)

    def test_two_phase_switches_once(self, shifting_graph, identity_model):
        scenario = _scenario(events=[{"t_s": 30, "net": 10}])

        trace = simulate(shifting_graph, scenario, identity_model)

        assert trace.initial_cut == 0
        assert trace.switches == 1
        assert trace.decisions[0].t_s == 30
        assert trace.decisions[0].target_cut == 1
        assert [r.cut_after for r in trace.requests[:30]] == [0] * 30
        assert [r.cut_after for r in trace.requests[30:]] == [1] * 30

    def test_switch_delays_next_request(self, shifting_graph, identity_model):
        """The event at t=30 is handled before the request arriving at t=30."""
        scenario = _scenario(events=[{"t_s": 30, "net": 10}], policy={"switch_overhead_s": 2.5})

        trace = simulate(shifting_graph, scenario, identity_model)

        assert trace.requests[30].arrival_s == 30.0
        assert trace.requests[30].start_s == pytest.approx(32.5)
        assert trace.overhead_s == 2.5

    def test_high_threshold_never_switches(self, shifting_graph, identity_model):
        scenario = _scenario(events=[{"t_s": 30, "net": 10}])

        adaptive = simulate(shifting_graph, scenario, identity_model)
        reluctant = simulate(shifting_graph, scenario, identity_model, RepartitionPolicy(min_gain_pct=100))
        static = simulate(shifting_graph, scenario, identity_model, adaptive=False)

        assert reluctant.switches == 0
        assert reluctant.decisions[0].action == "keep"
        assert reluctant.cumulative_latency_s > adaptive.cumulative_latency_s
        assert reluctant.cumulative_latency_s == pytest.approx(static.cumulative_latency_s)

    def test_scenario_policy_is_used(self, shifting_graph, identity_model):
        scenario = _scenario(events=[{"t_s": 30, "net": 10}], policy={"min_gain_pct": 100})

        trace = simulate(shifting_graph, scenario, identity_model)

        assert trace.switches == 0

    def test_infinite_cooldown_switches_at_most_once(self, shifting_graph, identity_model):
        events = [{"t_s": t, "net": 10 if i % 2 == 0 else 50} for i, t in enumerate(range(10, 60, 10))]
        scenario = _scenario(events=events)

        normal = simulate(shifting_graph, scenario, identity_model)
        damped = simulate(shifting_graph, scenario, identity_model, RepartitionPolicy(cooldown_s=float("inf")))

        assert normal.switches == 5
        assert damped.switches == 1

    @pytest.mark.slow
    def test_adaptive_dominates_static(self):
        """On random two-phase scenarios adaptivity never loses more than its overhead."""
        rng = np.random.default_rng(77)
        model = LatencyModel(response=StressResponse.default())
        levels = [0.0, 0.22, 0.45, 0.67, 0.9]
        rates = [10.0, 25.0, 37.5, 50.0]

        for instance in range(50):
            graph = load_graph(random_document(int(rng.integers(3, 16)), seed=1000 + instance))
            second = {
                "t_s": float(rng.uniform(5, 15)),
                "cpu": float(rng.choice(levels)),
                "mem": float(rng.choice(levels)),
                "net": float(rng.choice(rates)),
            }
            scenario = load_scenario(
                {
                    "initial": {
                        "cpu": float(rng.choice(levels)),
                        "mem": float(rng.choice(levels)),
                        "net": float(rng.choice(rates)),
                    },
                    "events": [second],
                    "requests": {"rate_per_s": 1.0, "duration_s": 20.0},
                }
            )

            adaptive = simulate(graph, scenario, model)
            static = simulate(graph, scenario, model, adaptive=False)

            bound = static.cumulative_latency_s + adaptive.switches * RepartitionPolicy().switch_overhead_s
            assert adaptive.cumulative_latency_s <= bound + 1e-9
            gained = [d for d in adaptive.decisions if d.action == "switch" and d.predicted_gain_pct > 5.0]
            if gained:
                assert adaptive.cumulative_latency_s < static.cumulative_latency_s

    def test_deterministic_with_noise(self, shifting_graph, identity_model, tmp_path):
        scenario = _scenario(events=[{"t_s": 30, "net": 10}])

        first = simulate(shifting_graph, scenario, identity_model, noise=0.1, seed=3)
        second = simulate(shifting_graph, scenario, identity_model, noise=0.1, seed=3)
        write_trace(first, tmp_path / "a.csv")
        write_trace(second, tmp_path / "b.csv")

        assert first == second
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_noise_changes_served_latencies(self, shifting_graph, identity_model):
        scenario = _scenario()

        quiet = simulate(shifting_graph, scenario, identity_model)
        noisy = simulate(shifting_graph, scenario, identity_model, noise=0.1, seed=1)

        assert quiet.cumulative_latency_s != noisy.cumulative_latency_s
        assert noisy.switches == 0

    def test_negative_noise(self, shifting_graph, identity_model):
        with pytest.raises(ScenarioError):
            simulate(shifting_graph, _scenario(), identity_model, noise=-1)

    def test_graph_without_cuts(self, identity_model):
        graph = load_graph(chain_document(1))

        with pytest.raises(PlanningError):
            simulate(graph, _scenario(), identity_model)

    def test_trace_file(self, shifting_graph, identity_model, tmp_path):
        scenario = _scenario(events=[{"t_s": 30, "net": 10}], duration=40)
        trace = simulate(shifting_graph, scenario, identity_model)
        path = tmp_path / "trace" / "run.csv"

        write_trace(trace, path)

        lines = path.read_text().splitlines()
        assert lines[0] == ",".join(TRACE_HEADER)
        assert len(lines) == 1 + 1 + 40
        assert lines[31].startswith("decision,30.0,")
        assert lines[32].startswith("request,30.0,")


class TestScenario:
    """Test cases for scenario documents."""

    def test_rate_schedule(self):
        schedule = RequestSchedule(rate_per_s=2, duration_s=3)

        assert schedule.arrival_times() == [0.0, 0.5, 1.0, 1.5, 2.0, 2.5]

    def test_explicit_times(self):
        scenario = load_scenario(
            {"initial": {"net": 25}, "requests": {"times": [0, 0.5, 4]}}
        )

        assert scenario.requests.arrival_times() == [0, 0.5, 4]
        assert scenario.initial.to_condition() == OperationalCondition(net_rate=25)

    def test_yaml_document(self):
        text = """
initial: {cpu: 0.2, mem: 0.0, net: 50}
events:
  - {t_s: 5, cpu: 0.9}
  - {t_s: 9, net: 10}
requests: {rate_per_s: 1, duration_s: 10}
policy: {min_gain_pct: 10, switch_overhead_s: 0.5}
"""
        scenario = load_scenario(text)

        cond = scenario.initial.to_condition()
        cond = scenario.events[0].apply(cond)
        assert (cond.cpu_stress, cond.net_rate) == (0.9, 50.0)
        cond = scenario.events[1].apply(cond)
        assert (cond.cpu_stress, cond.net_rate) == (0.9, 10.0)
        assert scenario.policy == RepartitionPolicy(min_gain_pct=10, switch_overhead_s=0.5)

    def test_events_must_increase(self):
        with pytest.raises(ScenarioError, match="strictly increasing"):
            _scenario(events=[{"t_s": 5, "net": 10}, {"t_s": 5, "net": 25}])

    def test_requests_need_a_schedule(self):
        with pytest.raises(ScenarioError):
            load_scenario({"initial": {"net": 50}, "requests": {"rate_per_s": 1}})

    def test_times_and_rate_conflict(self):
        with pytest.raises(ScenarioError):
            load_scenario({"initial": {"net": 50}, "requests": {"times": [0], "rate_per_s": 1, "duration_s": 1}})

    def test_bad_condition(self):
        with pytest.raises(ScenarioError):
            load_scenario({"initial": {"cpu": 2.0, "net": 50}, "requests": {"times": [0]}})

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError, match="Scenario file not found"):
            load_scenario_file(tmp_path / "scenario.json")

    def test_file_not_utf8(self, tmp_path):
        path = tmp_path / "scenario.yaml"
        path.write_bytes(b"initial: {net: 50}\n# \xff\n")

        with pytest.raises(ScenarioError, match="UTF-8"):
            load_scenario_file(path)

    def test_scenario_model(self):
        scenario = Scenario(
            initial={"net": 50},
            requests={"rate_per_s": 1, "duration_s": 2},
        )

        assert scenario.events == []
        assert scenario.policy is None
