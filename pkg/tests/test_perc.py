"""Unit tests for lattice construction and percolation estimation."""

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from iqconc import perc
from iqconc.swap import yield_gw_closed


def node_degrees(lattice):
    deg = np.zeros(lattice.num_nodes, dtype=int)
    for a, b in lattice.bonds:
        deg[a] += 1
        deg[b] += 1
    return deg


def site_degrees(graph):
    deg = np.zeros(graph.num_sites, dtype=int)
    for u, v in graph.adjacency:
        deg[u] += 1
        deg[v] += 1
    return deg


def bfs_site_spanning(graph, occupied):
    """Breadth-first spanning oracle over occupied triangular sites."""
    nbrs = defaultdict(list)
    for u, v in graph.adjacency:
        nbrs[int(u)].append(int(v))
        nbrs[int(v)].append(int(u))
    source, sink = perc._site_terminals(graph)
    targets = set(int(s) for s in sink)
    frontier = [int(s) for s in source if occupied[s]]
    seen = set(frontier)
    while frontier:
        u = frontier.pop()
        if u in targets:
            return True
        for v in nbrs[u]:
            if occupied[v] and v not in seen:
                seen.add(v)
                frontier.append(v)
    return any(occupied[t] and t in seen for t in targets)


def bfs_bond_spanning(lattice, occupied_bonds):
    nbrs = defaultdict(list)
    for k, (a, b) in enumerate(lattice.bonds):
        if occupied_bonds[k]:
            nbrs[int(a)].append(int(b))
            nbrs[int(b)].append(int(a))
    source, sink = perc._node_terminals(lattice)
    targets = set(int(s) for s in sink)
    frontier = list(int(s) for s in source)
    seen = set(frontier)
    while frontier:
        u = frontier.pop()
        if u in targets:
            return True
        for v in nbrs[u]:
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return False


class TestHoneycomb:
    def test_two_by_two_shape(self):
        h = perc.build_honeycomb(2, 2)
        assert h.num_nodes == 8

    @pytest.mark.parametrize("boundary", perc.BOUNDARIES)
    def test_bipartite(self, boundary):
        h = perc.build_honeycomb(4, 5, boundary)
        for a, b in h.bonds:
            assert a % 2 == 0 and b % 2 == 1

    def test_interior_measured_degree_three(self):
        h = perc.build_honeycomb(5, 5, "open")
        deg = node_degrees(h)
        for r in range(1, 5):
            for c in range(1, 5):
                assert deg[(r * 5 + c) * 2] == 3

    def test_wrap_degree_constant_along_rows(self):
        h = perc.build_honeycomb(4, 6, "wrap-horizontal")
        deg = node_degrees(h)
        for r in range(4):
            row = [deg[(r * 6 + c) * 2] for c in range(6)]
            assert len(set(row)) == 1

    def test_rejects_degenerate_sizes(self):
        with pytest.raises(ValueError):
            perc.build_honeycomb(1, 5)
        with pytest.raises(ValueError):
            perc.build_honeycomb(5, 1)

    def test_rejects_unknown_boundary(self):
        with pytest.raises(ValueError):
            perc.build_honeycomb(4, 4, "periodic-both")


class TestTriangularContraction:
    def test_one_site_per_measured_node(self):
        g = perc.contract_to_triangular(perc.build_honeycomb(16, 16))
        assert g.num_sites == 256

    def test_interior_coordination_six(self):
        g = perc.contract_to_triangular(perc.build_honeycomb(6, 6, "open"))
        deg = site_degrees(g)
        for r in range(1, 5):
            for c in range(1, 5):
                assert deg[r * 6 + c] == 6

    def test_interior_neighbour_pattern(self):
        g = perc.contract_to_triangular(perc.build_honeycomb(6, 6, "open"))
        pairs = {tuple(e) for e in g.adjacency.tolist()}
        r, c = 2, 2
        me = r * 6 + c
        want = [
            (r, c - 1), (r, c + 1), (r - 1, c), (r + 1, c),
            (r + 1, c - 1), (r - 1, c + 1),
        ]
        for rr, cc in want:
            other = rr * 6 + cc
            assert (min(me, other), max(me, other)) in pairs

    def test_wrap_makes_degree_uniform_per_row(self):
        g = perc.contract_to_triangular(perc.build_honeycomb(5, 7))
        deg = site_degrees(g)
        for r in range(5):
            row = [deg[r * 7 + c] for c in range(7)]
            assert len(set(row)) == 1


class TestSpanningTrials:
    def test_empty_never_spans(self):
        g = perc.contract_to_triangular(perc.build_honeycomb(8, 8))
        rng = np.random.default_rng(1)
        assert not perc.site_percolation_trial(g, 0.0, rng)

    def test_full_always_spans(self):
        g = perc.contract_to_triangular(perc.build_honeycomb(8, 8))
        h = perc.build_honeycomb(8, 8)
        rng = np.random.default_rng(1)
        assert perc.site_percolation_trial(g, 1.0, rng)
        assert perc.bond_percolation_trial(h, 1.0, rng)

    def test_rejects_bad_probability(self):
        g = perc.contract_to_triangular(perc.build_honeycomb(8, 8))
        with pytest.raises(ValueError):
            perc.site_percolation_trial(g, 1.2, np.random.default_rng(0))

    def test_rejects_wrong_occupancy_shape(self):
        g = perc.contract_to_triangular(perc.build_honeycomb(8, 8))
        with pytest.raises(ValueError):
            perc.site_spanning(g, np.ones(3, dtype=bool))

    def test_above_threshold_fraction(self):
        cfg = perc.PercolationTrialConfig(0.6, 64, 200, 11)
        frac, err = perc.spanning_fraction_batch("triangular-site", cfg)
        assert frac > 0.9
        assert 0.0 <= err < 0.05


class TestUnionFindMatchesBfs:
    @pytest.mark.parametrize("boundary", perc.BOUNDARIES)
    @pytest.mark.parametrize("size", [8, 16])
    def test_site_spanning_equivalence(self, boundary, size):
        g = perc.contract_to_triangular(perc.build_honeycomb(size, size, boundary))
        rng = np.random.default_rng(97)
        for p in (0.3, 0.5, 0.7):
            for _ in range(25):
                occ = rng.random(g.num_sites) < p
                assert perc.site_spanning(g, occ) == bfs_site_spanning(g, occ)

    @pytest.mark.parametrize("boundary", perc.BOUNDARIES)
    @pytest.mark.parametrize("size", [8, 16])
    def test_bond_spanning_equivalence(self, boundary, size):
        h = perc.build_honeycomb(size, size, boundary)
        rng = np.random.default_rng(53)
        for p in (0.4, 0.65, 0.8):
            for _ in range(25):
                occ = rng.random(len(h.bonds)) < p
                assert perc.bond_spanning(h, occ) == bfs_bond_spanning(h, occ)


class TestConfigValidation:
    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            perc.PercolationTrialConfig(1.5, 16, 10, 0)
        with pytest.raises(ValueError):
            perc.PercolationTrialConfig(0.5, 3, 10, 0)
        with pytest.raises(ValueError):
            perc.PercolationTrialConfig(0.5, 16, 0, 0)
        with pytest.raises(ValueError):
            perc.PercolationTrialConfig(0.5, 16, 10, -1)
        with pytest.raises(ValueError):
            perc.PercolationTrialConfig(0.5, 16, 10, 0, "twisted")

    def test_unknown_lattice_kind(self):
        cfg = perc.PercolationTrialConfig(0.5, 16, 100, 0)
        with pytest.raises(ValueError):
            perc.spanning_fraction_batch("kagome-site", cfg)


class TestEstimators:
    def test_site_threshold_modest_size(self):
        est = perc.estimate_site_threshold(32, 120, 5)
        assert len(est.p_values) == 12
        assert est.p_c_estimate == pytest.approx(0.5, abs=0.05)

    def test_determinism(self):
        a = perc.estimate_site_threshold(16, 100, 9)
        b = perc.estimate_site_threshold(16, 100, 9)
        assert a == b

    def test_rejects_small_runs(self):
        with pytest.raises(ValueError):
            perc.estimate_site_threshold(8, 100, 0)
        with pytest.raises(ValueError):
            perc.estimate_site_threshold(16, 50, 0)

    def test_worker_pool_does_not_change_results(self):
        cfg = perc.PercolationTrialConfig(0.5, 24, 150, 21)
        serial = perc.spanning_fraction_batch("triangular-site", cfg)
        with ThreadPoolExecutor(max_workers=4) as pool:
            pooled = perc.spanning_fraction_batch(
                "triangular-site", cfg, map_fn=pool.map
            )
        assert serial == pooled

    def test_curve_statistically_monotone(self):
        ps = (0.3, 0.45, 0.6, 0.75)
        est = perc.spanning_curve("triangular-site", ps, 32, 150, 17)
        assert est.p_c_estimate is None
        for i in range(len(ps) - 1):
            slack = 3 * (est.standard_error[i] + est.standard_error[i + 1])
            assert est.spanning_fraction[i + 1] >= est.spanning_fraction[i] - slack

    def test_curve_fractions_in_range(self):
        est = perc.spanning_curve("honeycomb-bond", (0.5, 0.8), 16, 100, 3)
        for f in est.spanning_fraction:
            assert 0.0 <= f <= 1.0


class TestOccupationFormula:
    def test_matches_swap_yield(self):
        for phi1 in np.linspace(0.0, 0.5, 51):
            assert perc.p0_of_phi1(phi1) == pytest.approx(
                yield_gw_closed(phi1), abs=1e-14
            )

    def test_examples(self):
        assert perc.p0_of_phi1(0.252136) == pytest.approx(0.5, abs=1e-5)
        assert perc.p0_of_phi1(0.5) == pytest.approx(0.59549, abs=1e-5)
        assert perc.p0_of_phi1(0.0) == 0.0

    def test_range_guard(self):
        with pytest.raises(ValueError):
            perc.p0_of_phi1(0.6)


class TestPhi1Threshold:
    def test_value(self):
        assert perc.phi1_percolation_threshold() == pytest.approx(
            0.252136, abs=1e-5
        )

    def test_interval_membership(self):
        assert perc.p0_of_phi1(0.3) > 0.5
        assert perc.p0_of_phi1(0.2) < 0.5


class TestStrategyReport:
    def test_headline_numbers(self):
        r = perc.strategy_report()
        assert r.p_ghz == pytest.approx(0.6527, abs=5e-5)
        assert r.p_gw == pytest.approx(0.5043, abs=5e-4)
        assert r.s_ghz == pytest.approx(0.9112, abs=5e-4)
        assert r.s_gw == pytest.approx(0.8146, abs=5e-4)
        assert r.bond_reduction_pct == pytest.approx(22.7, abs=0.2)
        assert r.ebit_reduction_pct == pytest.approx(10.6, abs=0.2)

    def test_basis_averages(self):
        r = perc.strategy_report()
        assert r.ghz_avg_scp == pytest.approx(1.0, abs=1e-12)
        assert r.ghz_avg_roi == pytest.approx(0.0, abs=1e-12)
        assert r.gw_avg_scp == pytest.approx((7 - np.sqrt(5)) / 8, abs=1e-12)
        assert r.gw_avg_roi == pytest.approx(0.75, abs=1e-9)

    def test_joint_strategy_percolates_where_bond_strategy_fails(self):
        # Schmidt weight 0.3: the joint measurement delivers p0 above
        # the triangular site threshold, while per-bond conversion
        # cannot reach the honeycomb bond threshold.
        p0 = perc.p0_of_phi1(0.3)
        assert p0 > 0.5
        cfg = perc.PercolationTrialConfig(p0, 64, 100, 13)
        frac, _ = perc.spanning_fraction_batch("triangular-site", cfg)
        assert frac > 0.5
        r = perc.strategy_report()
        assert 2 * 0.3 < r.p_ghz
