import csv
import os
import sys
import tempfile

import numpy as np
import pytest

sys.path.append(os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src"))

from coalflow.economics import CommModelConfig
from coalflow.network import (
    Agent,
    CapabilityAssignmentConfig,
    EconRanges,
    NodeProfile,
    build_network,
    generate_er_network,
)
from coalflow.search import (
    SearchConfig,
    SearchStatus,
    brute_force_oracle,
    effective_max_coalition_size,
    enumerate_candidates,
    solve,
)
from coalflow.workflow import RequirementMultiset, SubTask, TaskSpec, WorkflowDag, chain_task


def make_node(i, *caps, effort=1.0, kappa_cpu=0.1):
    return NodeProfile(
        id=i,
        agents=tuple(Agent(id=a, capabilities=tuple(c), baseline_effort=effort) for a, c in enumerate(caps)),
        rho=2.0,
        alpha=1.0,
        kappa_cpu=kappa_cpu,
        kappa_lat=0.01,
        comm_fixed=0.1,
    )


def star_network(effort_2: float = 2.0, kappa_1: float = 0.1, kappa_2: float = 0.1):
    # 1 - 0 - 2, both leaves offer B
    nodes = [
        make_node(0, ["A"]),
        make_node(1, ["B"], kappa_cpu=kappa_1),
        make_node(2, ["B"], effort=effort_2, kappa_cpu=kappa_2),
    ]
    return build_network(nodes, [(0, 1), (0, 2)], ["A", "B", "C", "D"])


def path_network():
    # 0 - 1 - 2
    nodes = [make_node(0, ["A"]), make_node(1, ["C"]), make_node(2, ["B"])]
    return build_network(nodes, [(0, 1), (1, 2)], ["A", "B", "C", "D"])


def check_trace(result):
    assert len(result.trace) == result.evaluations
    assert [n for n, _ in result.trace] == list(range(1, result.evaluations + 1))
    costs = [c for _, c in result.trace]
    seen = [c for c in costs if c is not None]
    assert costs[len(costs) - len(seen):] == seen
    assert all(a >= b for a, b in zip(seen, seen[1:]))
    return


class TestCandidates:
    def test_order_without_pruning(self):
        net = star_network()
        reqs = RequirementMultiset({"A": 1, "B": 1})
        cfg = SearchConfig(prune=False, max_coalition_size=3)
        assert list(enumerate_candidates(net, 0, reqs, 1, cfg)) == [(0,), (0, 1), (0, 2), (0, 1, 2)]
        assert list(enumerate_candidates(net, 1, reqs, 1, cfg)) == [(1,), (0, 1)]
        assert list(enumerate_candidates(net, 0, reqs, 0, cfg)) == [(0,)]
        return

    def test_pruning(self):
        net = star_network()
        reqs = RequirementMultiset({"A": 1, "B": 1})
        assert list(enumerate_candidates(net, 0, reqs, 1, SearchConfig())) == [(0, 1), (0, 2)]
        # node 2 is covered by the cheaper B agent of node 1
        cfg = SearchConfig(max_coalition_size=3)
        assert list(enumerate_candidates(net, 0, reqs, 1, cfg)) == [(0, 1), (0, 2)]
        cfg = SearchConfig(max_coalition_size=3, asg_mode="one_to_one")
        assert list(enumerate_candidates(net, 0, reqs, 1, cfg)) == [(0, 1), (0, 2), (0, 1, 2)]
        return

    def test_idle_neighbor(self):
        nodes = [make_node(0, ["A"]), make_node(1, ["C"])]
        net = build_network(nodes, [(0, 1)], ["A", "C"])
        reqs = RequirementMultiset({"A": 1})
        unpruned = SearchConfig(prune=False, max_coalition_size=2)
        pruned = SearchConfig(prune=True, max_coalition_size=2)
        assert list(enumerate_candidates(net, 0, reqs, 1, unpruned)) == [(0,), (0, 1)]
        assert list(enumerate_candidates(net, 0, reqs, 1, pruned)) == [(0,)]
        return

    def test_fresh_only(self):
        net = path_network()
        reqs = RequirementMultiset({"A": 1, "B": 1})
        cfg = SearchConfig(prune=False, max_coalition_size=3)
        assert list(enumerate_candidates(net, 0, reqs, 2, cfg)) == [(0,), (0, 1), (0, 2), (0, 1, 2)]
        assert list(enumerate_candidates(net, 0, reqs, 2, cfg, fresh_only=True)) == [(0, 2), (0, 1, 2)]
        assert list(enumerate_candidates(net, 0, reqs, 1, cfg, fresh_only=True)) == [(0,), (0, 1)]
        return

    def test_size_cap(self):
        task = chain_task(["A", "B", "C", "A"])
        assert effective_max_coalition_size(task, SearchConfig()) == 3
        assert effective_max_coalition_size(task, SearchConfig(max_coalition_size=5)) == 5
        return


class TestSolve:
    def test_star(self):
        net = star_network()
        result = solve(net, chain_task(["A", "B"]), SearchConfig())
        assert result.status == SearchStatus.FOUND
        assert result.coalition == (0, 1)
        assert result.radius == 1
        assert result.total_effort == 2.0
        assert result.assignment.to_dict() == {"t1": [0, 0], "t2": [1, 0]}
        assert result.reward >= result.total_cost
        assert result.surplus == result.reward - result.total_cost
        assert result.evaluations == 2
        check_trace(result)
        return

    def test_lexicographic_tie(self):
        net = star_network(effort_2=1.0)
        result = solve(net, chain_task(["A", "B"]), SearchConfig(asg_mode="one_to_one"))
        assert result.coalition == (0, 1)
        return

    def test_selection(self):
        net = star_network(effort_2=1.5, kappa_1=1.0, kappa_2=0.01)
        task = chain_task(["A", "B"])
        by_effort = solve(net, task, SearchConfig(selection="total_effort"))
        by_cost = solve(net, task, SearchConfig(selection="total_cost"))
        assert by_effort.coalition == (0, 1)
        assert by_cost.coalition == (0, 2)
        assert by_cost.total_cost < by_effort.total_cost
        assert by_effort.trace == by_cost.trace
        assert by_effort.trace[-1][1] == by_cost.total_cost
        return

    def test_radius_two(self):
        net = path_network()
        task = chain_task(["A", "B"])
        result = solve(net, task, SearchConfig())
        assert result.status == SearchStatus.FOUND
        assert result.radius == 2
        assert result.coalition == (0, 2)
        assert result.evaluations == 1
        assert solve(net, task, SearchConfig(k_max=1)).status == SearchStatus.INFEASIBLE
        oracle = brute_force_oracle(net, task, SearchConfig())
        assert (oracle.radius, oracle.coalition) == (2, (0, 2))
        assert oracle.evaluations == 3
        return

    def test_infeasible(self):
        net = star_network()
        task = chain_task(["A", "D"])
        result = solve(net, task, SearchConfig())
        assert result.status == SearchStatus.INFEASIBLE
        assert result.coalition == ()
        assert result.total_cost is None
        assert result.evaluations == 0
        result = solve(net, task, SearchConfig(prune=False))
        assert result.evaluations == 3
        assert all(cost is None for _, cost in result.trace)
        assert result.to_dict()["status"] == "INFEASIBLE"
        return

    def test_invalid_radius(self):
        with pytest.raises(ValueError, match="k_max"):
            solve(star_network(), chain_task(["A", "B"]), SearchConfig(k_max=0))
        oracle = brute_force_oracle(star_network(), chain_task(["A"]), SearchConfig(k_max=0))
        assert oracle.coalition == (0,)
        assert oracle.radius == 0
        return

    def test_trace_csv(self):
        net = star_network(effort_2=1.5, kappa_1=1.0, kappa_2=0.01)
        result = solve(net, chain_task(["A", "B"]), SearchConfig())
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "trace.csv")
            result.trace_to_csv(path)
            with open(path, "r", encoding="utf-8") as f:
                rows = list(csv.reader(f))
        assert rows[0] == ["iteration", "best_cost"]
        assert [int(r[0]) for r in rows[1:]] == [1, 2]
        assert float(rows[-1][1]) == result.trace[-1][1]
        return


SPACE = ["A", "B", "C", "D", "E"]


def random_instance(seed: int):
    """3 to 5 capabilities, 1 or 2 agents per node, requirement counts up to 2.

    Even seeds get a chain workflow, odd seeds a fan-out from the first stage.
    """
    rng = np.random.default_rng(seed)
    caps = SPACE[: 3 + seed % 3]
    cfg = CapabilityAssignmentConfig(capability_space=caps, max_caps=2, agents_per_node=1 + (seed // 3) % 2)
    net = generate_er_network(int(rng.integers(8, 13)), 0.3, cfg, EconRanges(), seed=seed)
    requirements = RequirementMultiset({c: int(rng.integers(1, 3)) for c in caps})
    if seed % 2 == 0:
        workflow = chain_task(caps).workflow
    else:
        workflow = WorkflowDag(
            subtasks=tuple(SubTask(f"t{i + 1}", c) for i, c in enumerate(caps)),
            deps=frozenset(("t1", f"t{i + 1}") for i in range(1, len(caps))),
        )
    return net, TaskSpec(initiator=0, requirements=requirements, workflow=workflow)


class TestOracle:
    @pytest.mark.parametrize("seed", range(100))
    def test_matches_oracle(self, seed):
        net, task = random_instance(seed)
        expected = brute_force_oracle(net, task, SearchConfig(k_max=3))
        for prune in [True, False]:
            result = solve(net, task, SearchConfig(k_max=3, prune=prune))
            assert result.status == expected.status
            assert result.radius == expected.radius
            assert result.coalition == expected.coalition
            assert result.total_effort == expected.total_effort
            check_trace(result)
        if expected.found and expected.radius > 1:
            # nothing feasible one hop closer
            closer = brute_force_oracle(net, task, SearchConfig(k_max=expected.radius - 1))
            assert closer.status == SearchStatus.INFEASIBLE
        return

    def test_some_instances_are_feasible(self):
        found = [brute_force_oracle(*random_instance(seed), SearchConfig(k_max=3)).found for seed in range(30)]
        assert any(found)
        return

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_oracle_variants(self, seed):
        net, task = random_instance(1000 + seed)
        distance = CommModelConfig(comm_model_type="distance_proportional")
        for cfg in [
            SearchConfig(asg_mode="one_to_one"),
            SearchConfig(selection="total_cost"),
            SearchConfig(**vars(distance)),
        ]:
            expected = brute_force_oracle(net, task, cfg)
            result = solve(net, task, cfg)
            assert (result.status, result.radius, result.coalition) == (
                expected.status,
                expected.radius,
                expected.coalition,
            )
        return
