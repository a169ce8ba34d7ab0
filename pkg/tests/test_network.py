import os
import sys

import pytest

sys.path.append(os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src"))

from coalflow.network import (
    UNREACHABLE,
    Agent,
    CapabilityAssignmentConfig,
    EconRanges,
    InvalidConfig,
    InvalidNode,
    Network,
    NodeProfile,
    ValidationError,
    agents_with_capability,
    build_network,
    generate_er_network,
    k_hop_neighborhood,
    shortest_path_distances,
)


def make_node(i: int, *caps: tuple[str, ...], effort: float = 1.0, **econ) -> NodeProfile:
    params = dict(rho=2.0, alpha=1.0, kappa_cpu=0.1, kappa_lat=0.01, comm_fixed=0.1)
    params.update(econ)
    agents = tuple(Agent(id=a, capabilities=tuple(c), baseline_effort=effort) for a, c in enumerate(caps))
    return NodeProfile(id=i, agents=agents, **params)


def path_network() -> Network:
    # 0 - 1 - 2, node 3 isolated
    nodes = [make_node(0, ("A",)), make_node(1, ("B",)), make_node(2, ("A", "B")), make_node(3, ("C",))]
    return build_network(nodes, [(1, 0), (1, 2)], ["A", "B", "C"])


class TestNetwork:
    def test_build_network(self):
        net = path_network()
        assert len(net) == 4
        assert net.edges == frozenset({(0, 1), (1, 2)})
        assert net.neighbors(1) == [0, 2]
        assert net.node(2).capabilities == {"A", "B"}
        assert 3 in net and 4 not in net
        with pytest.raises(InvalidNode):
            net.node(4)
        return

    @pytest.mark.parametrize(
        "nodes,edges,space,message",
        [
            ([make_node(0, ("A",))], [(0, 1)], ["A"], "dangling"),
            ([make_node(0, ("A",))], [(0, 0)], ["A"], "self-loop"),
            ([make_node(0, ("A",), rho=0.0)], [], ["A"], "rho"),
            ([make_node(0, ("A",), alpha=1.5)], [], ["A"], "alpha"),
            ([make_node(0, ("A",), kappa_cpu=-1.0)], [], ["A"], "kappa_cpu"),
            ([make_node(0, ("Z",))], [], ["A"], "unknown capability"),
            ([make_node(0, ("A", "A"))], [], ["A"], "repeats"),
            ([make_node(0, ("A",), effort=-1.0)], [], ["A"], "negative"),
            ([make_node(0, ("A",))], [], ["A", "A"], "Duplicate capability"),
            ([make_node(0, ("A",)), make_node(2, ("A",))], [], ["A"], "dense"),
            ([make_node(0)], [], ["A"], "no agent"),
            ([], [], ["A"], "at least one node"),
        ],
    )
    def test_build_network_rejects(self, nodes, edges, space, message):
        with pytest.raises(ValidationError, match=message):
            build_network(nodes, edges, space)
        return

    def test_distances(self):
        net = path_network()
        dist = shortest_path_distances(net, 0)
        assert dist.dist == {0: 0, 1: 1, 2: 2, 3: UNREACHABLE}
        assert dist.reachable() == {0, 1, 2}
        assert k_hop_neighborhood(net, 0, 0) == {0}
        assert k_hop_neighborhood(net, 0, 1) == {0, 1}
        assert k_hop_neighborhood(net, 0, 5) == {0, 1, 2}
        assert k_hop_neighborhood(net, 3, 2) == {3}
        assert net.connected_component(2) == {0, 1, 2}
        assert net.diameter_from(0) == 2
        assert net.diameter_from(1) == 1
        return

    @pytest.mark.parametrize("seed", range(20))
    def test_distance_properties(self, seed):
        net = generate_er_network(25, 0.08, CapabilityAssignmentConfig(), EconRanges(), seed=seed)
        for origin in [0, 7, 24]:
            dist = shortest_path_distances(net, origin).dist
            assert dist[origin] == 0
            for u, v in net.edges:
                for a, b in [(u, v), (v, u)]:
                    if dist[a] is not UNREACHABLE:
                        assert dist[b] is not UNREACHABLE and dist[b] <= dist[a] + 1
            for v, d in dist.items():
                if d is UNREACHABLE or v == origin:
                    continue
                assert any(dist[w] == d - 1 for w in net.neighbors(v))

            hoods = [k_hop_neighborhood(net, origin, k) for k in range(8)]
            assert all(a <= b for a, b in zip(hoods, hoods[1:]))
            assert hoods[-1] == {v for v, d in dist.items() if d is not UNREACHABLE and d <= 7}
        return

    def test_agents_with_capability(self):
        net = path_network()
        assert agents_with_capability(net, [2, 0, 1], "A") == [(0, 0), (2, 0)]
        assert agents_with_capability(net, [0, 1], "C") == []
        return

    def test_serialization(self):
        net = path_network()
        data = net.to_dict()
        assert data["edges"] == [[0, 1], [1, 2]]
        assert Network.from_dict(data) == net

        data["nodes"][0]["gpu"] = 1
        with pytest.raises(ValidationError, match="gpu"):
            Network.from_dict(data)
        return


class TestGenerator:
    def test_determinism(self):
        cfg = CapabilityAssignmentConfig(capability_space=["A", "B", "C"], max_caps=2)
        net_a = generate_er_network(20, 0.2, cfg, EconRanges(), seed=7)
        net_b = generate_er_network(20, 0.2, cfg, EconRanges(), seed=7)
        net_c = generate_er_network(20, 0.2, cfg, EconRanges(), seed=8)
        assert net_a.to_dict() == net_b.to_dict()
        assert net_a.to_dict() != net_c.to_dict()
        return

    def test_ranges_and_breadth(self):
        space = ["OCR", "RAD", "DX", "VAL", "CONS"]
        econ = EconRanges()
        for max_caps in range(1, 6):
            cfg = CapabilityAssignmentConfig(capability_space=space, max_caps=max_caps, agents_per_node=2)
            net = generate_er_network(15, 0.3, cfg, econ, seed=max_caps)
            for node in net.nodes:
                assert len(node.agents) == 2
                assert econ.rho[0] <= node.rho <= econ.rho[1]
                assert econ.alpha[0] <= node.alpha <= econ.alpha[1]
                assert econ.comm_fixed[0] <= node.comm_fixed <= econ.comm_fixed[1]
                for agent in node.agents:
                    assert 1 <= len(agent.capabilities) <= max_caps
                    assert set(agent.capabilities) <= set(space)
                    assert econ.baseline_effort[0] <= agent.baseline_effort <= econ.baseline_effort[1]
        return

    def test_sub_streams(self):
        cfg = CapabilityAssignmentConfig(capability_space=["A", "B", "C"], max_caps=2)
        cheap = EconRanges(kappa_cpu=[0.0, 0.01])
        net_a = generate_er_network(25, 0.15, cfg, EconRanges(), seed=3)
        net_b = generate_er_network(25, 0.15, cfg, cheap, seed=3)
        assert net_a.edges == net_b.edges
        for a, b in zip(net_a.nodes, net_b.nodes):
            assert [x.capabilities for x in a.agents] == [x.capabilities for x in b.agents]
        return

    def test_edge_probability_extremes(self):
        cfg = CapabilityAssignmentConfig(capability_space=["A"], max_caps=1)
        assert len(generate_er_network(10, 0.0, cfg, EconRanges(), seed=0).edges) == 0
        assert len(generate_er_network(10, 1.0, cfg, EconRanges(), seed=0).edges) == 45
        return

    def test_specialization(self):
        cfg = CapabilityAssignmentConfig(
            capability_space=["A", "B", "C", "D"], max_caps=2, agents_per_node=3, specialization=True
        )
        net = generate_er_network(10, 0.2, cfg, EconRanges(), seed=1)
        for node in net.nodes:
            domain = net.domain_capabilities(node.id)
            assert len(domain) == 2
            assert node.capabilities <= domain
        return

    def test_invalid_config(self):
        with pytest.raises(InvalidConfig, match="max_caps"):
            cfg = CapabilityAssignmentConfig(capability_space=["A", "B"], max_caps=3)
            generate_er_network(5, 0.5, cfg, EconRanges(), seed=0)
        with pytest.raises(InvalidConfig, match="rho"):
            EconRanges(rho=[2.0, 1.0])
        with pytest.raises(InvalidConfig, match="edge_prob"):
            generate_er_network(5, 1.5, CapabilityAssignmentConfig(), EconRanges(), seed=0)
        return
