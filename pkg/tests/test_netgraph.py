import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qnetlim import netgraph as ng
from qnetlim.netgraph import (
    CellKind,
    Circulant,
    FullMesh,
    Grid,
    Network,
    PathStatus,
    ProcessorCell,
    Square1024,
    Star,
    StrategyKind,
    Undefined,
    average_effective_weight,
    build_topology,
    centrality,
    centrality_all,
    centrality_all_fast,
    clustering_coefficient,
    connection_strength,
    construct_network,
    critical_parameters,
    critically_large_check,
    effective_weight,
    evolve,
    link_sparsity,
    load_edge_list,
    matrices,
    save_edge_list,
    shortest_path,
    sparsity_index,
    task_reachability,
    total_connection_strength,
)

NC = StrategyKind.NON_COOPERATIVE
CO = StrategyKind.COOPERATIVE


def square_plus_diagonal():
    return Network(
        [1, 2, 3, 4],
        [(1, 2, 0.5), (2, 3, 0.5), (3, 4, 0.5), (4, 1, 0.5), (1, 3, 0.5)],
    )


def random_graph(rng, n_max=8, p_edge=0.5):
    n = rng.randint(3, n_max)
    nodes = list(range(n))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p_edge:
                edges.append((i, j, round(rng.uniform(0.3, 1.0), 4)))
    return Network(nodes, edges)


def enumerate_best_path(net, source, target, p_star):
    """All-simple-paths oracle with the same lexicographic tie-break."""
    best = None
    def dfs(path, weight):
        nonlocal best
        v = path[-1]
        if v == target:
            key = (weight, tuple(path))
            if best is None or key < best:
                best = key
            return
        for u in sorted(net.neighbors(v)):
            if u not in path:
                dfs(path + [u], weight - math.log2(net.edge_p(v, u)))
    dfs([source], 0.0)
    if best is None or best[0] > -math.log2(p_star) + 1e-12:
        return None
    return best


class TestWeights:
    def test_effective_weight(self):
        assert effective_weight(0.5, 0.25) == 1.0
        assert effective_weight(0.2, 0.25) == math.inf
        assert effective_weight(0.54173, 0.5) == pytest.approx(-math.log2(0.54173), abs=1e-12)

    def test_matrices_examples(self):
        net = Network([1, 2, 3], [(1, 2, 0.8), (2, 3, 0.8)])
        assert matrices(net, 0.5).f_star[0, 2] == pytest.approx(0.64, abs=1e-12)
        assert matrices(net, 0.7).f_star[0, 2] == 0.0

    def test_indirect_beats_direct(self):
        net = Network([1, 2, 3], [(1, 2, 0.198), (1, 3, 0.79), (3, 2, 0.6857)])
        m = matrices(net, 0.5)
        assert m.f_star[0, 1] == pytest.approx(0.541703, abs=1e-6)
        assert 2.0 ** -m.A[0, 1] == pytest.approx(0.198, abs=1e-12)
        assert m.f_star[0, 1] > 2.0 ** -m.A[0, 1]

    def test_matrix_invariants(self):
        rng = random.Random(5)
        for _ in range(10):
            net = random_graph(rng)
            m = matrices(net, 0.4)
            assert np.allclose(m.A, m.A.T)
            assert np.allclose(m.f_star, m.f_star.T)
            finite = np.isfinite(m.A_star)
            np.fill_diagonal(finite, False)
            # direct reachability never beats the best path
            assert (m.f_star[finite] >= 2.0 ** -m.A_star[finite] - 1e-12).all()


class TestShortestPath:
    def test_examples(self):
        net = Network([1, 2], [(1, 2, 0.9)])
        res = shortest_path(net, 1, 2, 0.5)
        assert res.status is PathStatus.FOUND
        assert res.probability == pytest.approx(0.9)
        net = Network([1, 2, 3], [(1, 2, 0.9), (2, 3, 0.9), (1, 3, 0.7)])
        res = shortest_path(net, 1, 3, 0.5)
        assert res.nodes == (1, 2, 3)
        assert res.probability == pytest.approx(0.81)
        weak = Network([1, 2], [(1, 2, 0.3)])
        assert shortest_path(weak, 1, 2, 0.5).status is PathStatus.DISCONNECTED

    def test_weight_additivity(self):
        rng = random.Random(11)
        for _ in range(20):
            net = random_graph(rng)
            res = shortest_path(net, 0, net.n_nodes - 1, 0.05)
            if res.status is PathStatus.FOUND and len(res.nodes) > 1:
                total = sum(
                    -math.log2(net.edge_p(a, b))
                    for a, b in zip(res.nodes, res.nodes[1:])
                )
                assert res.total_weight == pytest.approx(total, abs=1e-12)
                prod = math.prod(
                    net.edge_p(a, b) for a, b in zip(res.nodes, res.nodes[1:])
                )
                assert res.probability == pytest.approx(prod, abs=1e-12)

    def test_matches_enumeration(self):
        rng = random.Random(42)
        checked = 0
        for _ in range(100):
            net = random_graph(rng)
            s, t = 0, net.n_nodes - 1
            want = enumerate_best_path(net, s, t, 0.3)
            got = shortest_path(net, s, t, 0.3)
            if want is None:
                assert got.status is PathStatus.DISCONNECTED
            else:
                checked += 1
                assert got.nodes == want[1]
                assert got.total_weight == pytest.approx(want[0], abs=1e-12)
        assert checked > 30


class TestSparsityAndStrength:
    def test_full_mesh(self):
        net = build_topology(FullMesh(6, 0.9))
        assert link_sparsity(net, 0.5, NC) == pytest.approx(1 / 6)

    def test_square1024(self):
        net = build_topology(Square1024(0.9))
        assert net.n_nodes == 1024
        assert net.n_edges == 1984
        assert link_sparsity(net, 0.5, NC) == pytest.approx(1 - 3968 / 1024**2)

    @pytest.mark.parametrize(
        "kind,want",
        [(CellKind.SQUARE, 0.5), (CellKind.OCTAGONAL, 0.75), (CellKind.HEAVY_HEXAGONAL, 5 / 6)],
    )
    def test_unit_cells(self, kind, want):
        net = build_topology(ProcessorCell(kind, 0.9))
        assert link_sparsity(net, 0.5, NC) == pytest.approx(want, abs=1e-12)

    @pytest.mark.parametrize("p", [0.3, 0.7])
    def test_cell_strengths(self, p):
        for kind, denom in [(CellKind.SQUARE, 2), (CellKind.OCTAGONAL, 4), (CellKind.HEAVY_HEXAGONAL, 6)]:
            net = build_topology(ProcessorCell(kind, p))
            assert connection_strength(net, 0, NC, 0.1) == pytest.approx(p / denom, abs=1e-12)

    @pytest.mark.parametrize("p", [0.3, 0.7])
    def test_grid_strengths(self, p):
        net = build_topology(Square1024(p))
        assert connection_strength(net, 33, NC, 0.1) == pytest.approx(p / 256, abs=1e-12)
        assert connection_strength(net, 1, NC, 0.1) == pytest.approx(3 * p / 1024, abs=1e-12)
        assert connection_strength(net, 0, NC, 0.1) == pytest.approx(p / 512, abs=1e-12)

    def test_star_closed_form(self):
        net = build_topology(Star(8, 0.5))
        got = connection_strength(net, 0, NC, 0.25, include_self=True)
        assert got == pytest.approx((1 + 7 * 0.5) / 8)

    def test_total_strength_uniform_mesh(self):
        net = build_topology(FullMesh(5, 0.6))
        per_node = connection_strength(net, 0, NC, 0.1)
        assert total_connection_strength(net, NC, 0.1) == pytest.approx(5 * per_node)

    def test_total_strength_empty(self):
        net = Network([1, 2, 3], [])
        assert total_connection_strength(net, NC, 0.5) == 0.0

    def test_circulant_closed_forms(self):
        # even degree: 1/N (1 + 2 p (p^{d/2} - 1)/(p - 1)) with the self term
        for n, d, p in [(10, 4, 0.7), (12, 6, 0.5), (9, 2, 0.8)]:
            net = build_topology(Circulant(n, d, p))
            assert all(len(net.neighbors(v)) == d for v in net.nodes)
            want = (1 + 2 * p * (p ** (d // 2) - 1) / (p - 1)) / n
            got = connection_strength(net, 0, NC, 1e-9, include_self=True)
            assert got == pytest.approx(want, abs=1e-12)
        # odd degree adds the antipodal edge
        for n, d, p in [(10, 3, 0.7), (12, 5, 0.6)]:
            net = build_topology(Circulant(n, d, p))
            assert all(len(net.neighbors(v)) == d for v in net.nodes)
            want = (1 + p) * (p ** ((d + 1) // 2) - 1) / (n * (p - 1))
            got = connection_strength(net, 0, NC, 1e-9, include_self=True)
            assert got == pytest.approx(want, abs=1e-12)

    def test_coop_at_most_noncoop_sparsity(self):
        rng = random.Random(3)
        for _ in range(15):
            net = random_graph(rng)
            assert link_sparsity(net, 0.4, CO) <= link_sparsity(net, 0.4, NC) + 1e-12


class TestSparsityIndex:
    def test_uniform_is_one(self):
        net = build_topology(FullMesh(6, 0.9))
        assert sparsity_index(net, NC, 0.5) == pytest.approx(1.0)

    def test_point_mass(self):
        # 8 nodes, all strength on a single pair
        net = Network(list(range(8)), [(0, 1, 0.9)])
        z = ng._all_strengths(net, NC, 0.5)
        assert np.count_nonzero(z) == 2
        # analytic two-equal-holders value
        got = sparsity_index(net, NC, 0.5)
        y = np.concatenate([[0.0], np.cumsum(np.sort(z)) / z.sum()])
        want = np.trapezoid(y, dx=1 / 8) / 0.5
        assert got == pytest.approx(want)

    def test_point_mass_analytic(self):
        # a pure one-node point mass comes out at 1/N under this convention
        z = np.array([0.0] * 7 + [1.0])
        y = np.concatenate([[0.0], np.cumsum(z) / 1.0])
        assert np.trapezoid(y, dx=1 / 8) / 0.5 == pytest.approx(1 / 8)


class TestClusteringAndWeights:
    def test_triangle(self):
        net = build_topology(FullMesh(3, 0.9))
        assert clustering_coefficient(net, 0, 0.5) == 1.0

    def test_partial_neighborhood(self):
        net = Network([0, 1, 2, 3], [(0, 1, 0.9), (0, 2, 0.9), (0, 3, 0.9), (1, 2, 0.9)])
        assert clustering_coefficient(net, 0, 0.5) == pytest.approx(1 / 3)

    def test_leaf(self):
        net = build_topology(Star(5, 0.9))
        assert clustering_coefficient(net, 1, 0.5) == 0.0

    def test_threshold_filters_edges(self):
        net = Network([0, 1, 2, 3], [(0, 1, 0.9), (0, 2, 0.9), (0, 3, 0.9), (1, 2, 0.4)])
        assert clustering_coefficient(net, 0, 0.5) == 0.0
        assert clustering_coefficient(net, 0, 0.3) == pytest.approx(1 / 3)

    def test_average_effective_weight(self):
        net = Network([1, 2], [(1, 2, 0.5)])
        assert average_effective_weight(net, 0.25) == 1.0
        chain = Network([2, 3, 4], [(2, 3, 0.5), (3, 4, 0.5)])
        assert average_effective_weight(chain, 1e-9) == pytest.approx(4 / 3)
        disc = Network([1, 2, 3], [(1, 2, 0.9)])
        assert average_effective_weight(disc, 0.5) == math.inf


class TestCentrality:
    def test_path_graph(self):
        net = Network(["a", "b", "c"], [("a", "b", 0.9), ("b", "c", 0.9)])
        assert centrality(net, "b", 0.5) == 1

    def test_star_hub(self):
        net = build_topology(Star(8, 0.9))
        assert centrality(net, 0, 0.5) == 21

    def test_square_diag_tie_break(self):
        net = square_plus_diagonal()
        # pair {2, 4} has two weight-2 paths; [2,1,4] < [2,3,4]
        assert centrality(net, 1, 0.1) == 1
        assert centrality(net, 3, 0.1) == 0

    def test_fast_matches_exact(self):
        rng = random.Random(17)
        for _ in range(25):
            net = random_graph(rng, p_edge=0.45)
            assert centrality_all_fast(net, 0.25) == centrality_all(net, 0.25)


class TestCriticalParameters:
    def test_worked_example(self):
        reports = critical_parameters(square_plus_diagonal(), 0.1)
        by_node = {r.node: r for r in reports}
        assert by_node[1].critical_parameter == pytest.approx(1.125, abs=1e-9)
        assert reports[0].node == 1

    def test_perfect_neighbors_undefined(self):
        net = Network([0, 1, 2], [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)])
        reports = {r.node: r for r in critical_parameters(net, 0.5)}
        assert reports[0].critical_parameter == Undefined()

    def test_leaf_undefined(self):
        net = build_topology(Star(4, 0.9))
        reports = {r.node: r for r in critical_parameters(net, 0.5)}
        assert reports[1].critical_parameter == Undefined()

    def test_relabeling_invariance(self):
        # a graph with distinct edge weights, so no tie-break ambiguity
        net = Network(
            [1, 2, 3, 4],
            [(1, 2, 0.51), (2, 3, 0.52), (3, 4, 0.53), (4, 1, 0.54), (1, 3, 0.55)],
        )
        base = {r.node: r for r in critical_parameters(net, 0.01)}
        rng = random.Random(9)
        for _ in range(20):
            perm = [1, 2, 3, 4]
            rng.shuffle(perm)
            mapping = dict(zip([1, 2, 3, 4], perm))
            relabeled = net.relabeled(mapping)
            got = {r.node: r for r in critical_parameters(relabeled, 0.01)}
            for v, rep in base.items():
                other = got[mapping[v]]
                assert other.clustering == pytest.approx(rep.clustering)
                assert other.strength == pytest.approx(rep.strength)
                assert other.centrality == rep.centrality
                if isinstance(rep.critical_parameter, Undefined):
                    assert isinstance(other.critical_parameter, Undefined)
                else:
                    assert other.critical_parameter == pytest.approx(rep.critical_parameter)

    def test_tie_break_depends_on_labels(self):
        # equal-weight paths are broken lexicographically, so relabeling a
        # tied graph can shift centrality between the tied interior nodes
        net = square_plus_diagonal()
        base = centrality_all(net, 0.1)
        assert (base[1], base[3]) == (1, 0)
        swapped = net.relabeled({1: 3, 2: 2, 3: 1, 4: 4})
        got = centrality_all(swapped, 0.1)
        assert (got[3], got[1]) == (0, 1)

    def test_metric_relabeling_invariance(self):
        rng = random.Random(23)
        for _ in range(8):
            net = random_graph(rng)
            perm = list(net.nodes)
            rng.shuffle(perm)
            mapping = dict(zip(net.nodes, perm))
            other = net.relabeled(mapping)
            assert link_sparsity(net, 0.4, CO) == pytest.approx(link_sparsity(other, 0.4, CO))
            assert total_connection_strength(net, NC, 0.4) == pytest.approx(
                total_connection_strength(other, NC, 0.4)
            )
            assert sparsity_index(net, NC, 0.4) == pytest.approx(sparsity_index(other, NC, 0.4))


class TestTopologies:
    def test_star(self):
        net = build_topology(Star(8, 0.5))
        assert net.n_edges == 7
        assert len(net.neighbors(0)) == 7

    def test_cell_square(self):
        net = build_topology(ProcessorCell(CellKind.SQUARE, 0.9))
        assert (net.n_nodes, net.n_edges) == (4, 4)

    def test_circulant_validation(self):
        with pytest.raises(ValueError):
            build_topology(Circulant(9, 3, 0.5))  # odd degree, odd node count

    def test_construct_network(self):
        net, cert = construct_network(2, 2)
        assert net.n_nodes == 8
        assert cert.disjoint_paths >= 2
        assert cert.disjoint_ok and cert.all_pairs_connected
        _, cert1 = construct_network(1, 1)
        assert cert1.disjoint_paths == 1
        _, cert32 = construct_network(3, 2)
        assert cert32.disjoint_paths >= 2


class TestPercolation:
    def test_critically_large(self):
        grid = build_topology(Grid(10, 10, 0.9))
        res = critically_large_check(grid, 0.5, 0.9)
        assert res.n0 == 7
        assert res.required_distance == 8
        assert res.is_critically_large
        assert res.witness_pair is not None

    def test_low_c(self):
        tri = build_topology(FullMesh(3, 0.4))
        res = critically_large_check(tri, 0.5, 0.45)
        assert res.n0 == 1
        assert not res.is_critically_large

    def test_validation(self):
        net = build_topology(FullMesh(3, 0.95))
        with pytest.raises(ValueError):
            critically_large_check(net, 0.5, 0.9)

    def test_chain_reachability(self):
        chain = Network(list(range(100)), [(i, i + 1, 0.8) for i in range(99)])
        rep = task_reachability(chain, 0.5)
        assert rep.counts[50] == 7
        assert rep.max_fraction == pytest.approx(0.07)

    def test_everything_reachable(self):
        net = build_topology(FullMesh(5, 0.9))
        assert task_reachability(net, 0.5).max_fraction == 1.0

    def test_grid_fraction_decreases(self):
        fracs = [
            task_reachability(build_topology(Grid(n, n, 0.9)), 0.5).max_fraction
            for n in (10, 20, 40)
        ]
        assert fracs[0] > fracs[1] > fracs[2]


class TestEvolve:
    def test_single_step_value(self):
        net = Network([1, 2], [(1, 2, 0.8)])
        seq = evolve(net, 0.9, 0.3, 0.1, 2)
        assert seq[1][0].edge_p(1, 2) == pytest.approx(0.9 * math.exp(-0.3) * 0.8, abs=1e-12)
        assert seq[1][0].edge_p(1, 2) == pytest.approx(0.533389, abs=1e-6)

    def test_strict_decrease_and_closure(self):
        net = build_topology(FullMesh(4, 0.9))
        seq = evolve(net, 0.95, 0.2, 0.3, 12)
        for (g1, _), (g2, _) in zip(seq, seq[1:]):
            for key, p in g2.edges.items():
                assert p < g1.edges[key]
            # closed edges never reopen
            assert set(g2.edges) <= set(g1.edges)

    def test_sparsity_nondecreasing(self):
        rng = random.Random(31)
        for _ in range(10):
            net = random_graph(rng)
            seq = evolve(net, 0.9, 0.25, 0.35, 15)
            ups = [u for _, u in seq]
            assert all(a <= b + 1e-12 for a, b in zip(ups, ups[1:]))


class TestIO:
    def test_roundtrip(self, tmp_path):
        net = Network(["x", "y", "z"], [("x", "y", 0.5), ("y", "z", 0.7125)])
        path = tmp_path / "g.edges"
        save_edge_list(net, path)
        back = load_edge_list(path)
        assert back.edges == net.edges

    def test_comments_ignored(self, tmp_path):
        path = tmp_path / "g.edges"
        path.write_text("# a comment\na,b,0.5\n\nb,c,0.25\n")
        net = load_edge_list(path)
        assert net.n_edges == 2

    def test_matrix_export_inf(self, tmp_path):
        net = Network([1, 2, 3], [(1, 2, 0.5)])
        m = matrices(net, 0.25)
        out = tmp_path / "a.csv"
        ng.export_matrix_csv(m.A_star, net.nodes, out)
        text = out.read_text()
        assert "inf" in text
        assert text.splitlines()[0] == "1,2,3"
