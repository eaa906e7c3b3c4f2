"""Entanglement percolation on a honeycomb network.

A honeycomb lattice of partially entangled two-qubit links is reduced
to a site-percolation problem: joint measurements at the alternating
(measured-class) nodes convert each node into a triangular-lattice
site that is "occupied" with the probability that the measurement
localizes a Bell pair, so long-range entanglement appears exactly when
the triangular site problem percolates (threshold 1/2).  The competing
strategy converts each bond independently, which must beat the
honeycomb bond threshold 1 - 2 sin(pi/18) ~ 0.6527.  This module
builds both lattices, runs seeded union-find Monte Carlo spanning
trials for either problem, locates the thresholds, and assembles the
strategy comparison report.

Two modelling notes.  Adjacent occupied triangles are treated as
connected through their shared passive node as the reduction
prescribes; the two-qubit bookkeeping at that shared node is
abstracted away.  Boundary handling: "wrap-horizontal" wraps the
column index and spans top row to bottom row; "open" leaves all edges
open and spans left column to right column.
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from numba import njit

from .bases import basis_average_roi, basis_average_scp, ghz_basis, gw_basis

BOUNDARIES = ("wrap-horizontal", "open")
THRESHOLD_BRACKET = (0.3, 0.7)
THRESHOLD_ITERATIONS = 12
PHI1_BRACKET = (0.1, 0.4)
PHI1_WIDTH = 1e-8
RADICAND_FLOOR = -1e-14


@dataclass(frozen=True)
class HoneycombLattice:
    """Brick-wall indexed honeycomb; node (r, c, s) has id
    (r*cols + c)*2 + s with s=0 the measured class, s=1 the passive
    class.  Bonds always join a measured node to a passive node."""

    rows: int
    cols: int
    boundary: str
    bonds: np.ndarray

    @property
    def num_nodes(self) -> int:
        return 2 * self.rows * self.cols


@dataclass(frozen=True)
class TriangularSiteGraph:
    """One site per measured-class honeycomb node, id r*cols + c."""

    rows: int
    cols: int
    boundary: str
    adjacency: np.ndarray

    @property
    def num_sites(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class PercolationTrialConfig:
    occupation_p: float
    linear_size: int
    trials: int
    seed: int
    boundary: str = "wrap-horizontal"

    def __post_init__(self):
        if not 0.0 <= self.occupation_p <= 1.0:
            raise ValueError(f"occupation_p must be in [0,1], got {self.occupation_p}")
        if self.linear_size < 4:
            raise ValueError(f"linear_size must be >= 4, got {self.linear_size}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"unknown boundary {self.boundary!r}")


@dataclass(frozen=True)
class PercolationEstimate:
    """Trace of evaluated occupation probabilities with spanning
    fractions and their binomial standard errors; p_c_estimate is None
    for plain curves."""

    p_values: Tuple[float, ...]
    spanning_fraction: Tuple[float, ...]
    standard_error: Tuple[float, ...]
    p_c_estimate: Optional[float]


def build_honeycomb(rows: int, cols: int, boundary: str = "wrap-horizontal") -> HoneycombLattice:
    """Bipartite honeycomb with measured node (r,c) bonded to passive
    nodes (r,c), (r,c-1) and (r-1,c)."""
    if rows < 2 or cols < 2:
        raise ValueError(f"need rows, cols >= 2, got {rows}x{cols}")
    if boundary not in BOUNDARIES:
        raise ValueError(f"unknown boundary {boundary!r}")
    wrap = boundary == "wrap-horizontal"
    bonds = []
    for r in range(rows):
        for c in range(cols):
            a = (r * cols + c) * 2
            bonds.append((a, a + 1))
            if c > 0:
                bonds.append((a, (r * cols + c - 1) * 2 + 1))
            elif wrap:
                bonds.append((a, (r * cols + cols - 1) * 2 + 1))
            if r > 0:
                bonds.append((a, ((r - 1) * cols + c) * 2 + 1))
    return HoneycombLattice(rows, cols, boundary, np.array(bonds, dtype=np.int64))


def contract_to_triangular(lattice: HoneycombLattice) -> TriangularSiteGraph:
    """Merge each passive node into a clique over the measured nodes it
    touches; measured nodes become triangular sites."""
    cols = lattice.cols
    touching = {}
    for a, b in lattice.bonds:
        touching.setdefault(int(b), []).append(int(a) // 2)
    pairs = set()
    for sites in touching.values():
        for i, u in enumerate(sites):
            for v in sites[i + 1:]:
                pairs.add((min(u, v), max(u, v)))
    adjacency = np.array(sorted(pairs), dtype=np.int64)
    return TriangularSiteGraph(lattice.rows, cols, lattice.boundary, adjacency)


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


@njit(cache=True)
def _union(parent, size, a, b):
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra == rb:
        return
    if size[ra] < size[rb]:
        ra, rb = rb, ra
    parent[rb] = ra
    size[ra] += size[rb]


@njit(cache=True)
def _site_spanning_kernel(edges, occupied, source_ids, sink_ids):
    n = occupied.shape[0]
    parent = np.arange(n + 2)
    size = np.ones(n + 2, dtype=np.int64)
    src, snk = n, n + 1
    for i in source_ids:
        if occupied[i]:
            _union(parent, size, src, i)
    for i in sink_ids:
        if occupied[i]:
            _union(parent, size, snk, i)
    for k in range(edges.shape[0]):
        u, v = edges[k, 0], edges[k, 1]
        if occupied[u] and occupied[v]:
            _union(parent, size, u, v)
    return _find(parent, src) == _find(parent, snk)


@njit(cache=True)
def _bond_spanning_kernel(bonds, occupied, source_ids, sink_ids, n_nodes):
    parent = np.arange(n_nodes + 2)
    size = np.ones(n_nodes + 2, dtype=np.int64)
    src, snk = n_nodes, n_nodes + 1
    for i in source_ids:
        _union(parent, size, src, i)
    for i in sink_ids:
        _union(parent, size, snk, i)
    for k in range(bonds.shape[0]):
        if occupied[k]:
            _union(parent, size, bonds[k, 0], bonds[k, 1])
    return _find(parent, src) == _find(parent, snk)


def _site_terminals(graph: TriangularSiteGraph) -> Tuple[np.ndarray, np.ndarray]:
    cols, rows = graph.cols, graph.rows
    if graph.boundary == "wrap-horizontal":
        source = np.arange(cols, dtype=np.int64)
        sink = np.arange((rows - 1) * cols, rows * cols, dtype=np.int64)
    else:
        source = np.arange(0, rows * cols, cols, dtype=np.int64)
        sink = np.arange(cols - 1, rows * cols, cols, dtype=np.int64)
    return source, sink


def _node_terminals(lattice: HoneycombLattice) -> Tuple[np.ndarray, np.ndarray]:
    cols, rows = lattice.cols, lattice.rows
    ids = np.arange(lattice.num_nodes, dtype=np.int64)
    if lattice.boundary == "wrap-horizontal":
        r = ids // (2 * cols)
        return ids[r == 0], ids[r == rows - 1]
    c = (ids // 2) % cols
    return ids[c == 0], ids[c == cols - 1]


def site_spanning(graph: TriangularSiteGraph, occupied: np.ndarray) -> bool:
    """Whether the occupied sites contain a boundary-to-boundary cluster."""
    if occupied.shape != (graph.num_sites,):
        raise ValueError("occupancy array does not match the site count")
    source, sink = _site_terminals(graph)
    return bool(_site_spanning_kernel(graph.adjacency, occupied, source, sink))


def bond_spanning(lattice: HoneycombLattice, occupied_bonds: np.ndarray) -> bool:
    """Whether the occupied bonds connect the two spanning boundaries."""
    if occupied_bonds.shape != (len(lattice.bonds),):
        raise ValueError("occupancy array does not match the bond count")
    source, sink = _node_terminals(lattice)
    return bool(
        _bond_spanning_kernel(
            lattice.bonds, occupied_bonds, source, sink, lattice.num_nodes
        )
    )


def site_percolation_trial(graph: TriangularSiteGraph, p: float, rng) -> bool:
    """One Monte Carlo trial: occupy sites independently with
    probability p and test spanning."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0,1], got {p}")
    return site_spanning(graph, rng.random(graph.num_sites) < p)


def bond_percolation_trial(lattice: HoneycombLattice, p: float, rng) -> bool:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0,1], got {p}")
    return bond_spanning(lattice, rng.random(len(lattice.bonds)) < p)


def _trial_rng(seed: int, p_index: int, trial: int):
    # counter-style stream: every (seed, p_index, trial) triple is an
    # independent generator, so results cannot depend on scheduling
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence([seed, p_index, trial]))
    )


def _batch_fraction(
    spanning_of_occupancy: Callable[[np.ndarray], bool],
    n_random: int,
    config: PercolationTrialConfig,
    p_index: int,
    map_fn,
) -> Tuple[float, float]:
    def one(trial: int) -> bool:
        occ = _trial_rng(config.seed, p_index, trial).random(n_random) < config.occupation_p
        return spanning_of_occupancy(occ)

    hits = sum(map_fn(one, range(config.trials)))
    frac = hits / config.trials
    return frac, math.sqrt(frac * (1.0 - frac) / config.trials)


def _occupancy_tester(lattice_kind: str, linear_size: int, boundary: str):
    if lattice_kind == "triangular-site":
        graph = contract_to_triangular(build_honeycomb(linear_size, linear_size, boundary))
        return (lambda occ: site_spanning(graph, occ)), graph.num_sites
    if lattice_kind == "honeycomb-bond":
        lattice = build_honeycomb(linear_size, linear_size, boundary)
        return (lambda occ: bond_spanning(lattice, occ)), len(lattice.bonds)
    raise ValueError(f"unknown lattice kind {lattice_kind!r}")


def spanning_fraction_batch(
    lattice_kind: str,
    config: PercolationTrialConfig,
    p_index: int = 0,
    map_fn=map,
) -> Tuple[float, float]:
    """Spanning fraction and its standard error for one occupation
    probability; `lattice_kind` is triangular-site or honeycomb-bond."""
    tester, n_random = _occupancy_tester(lattice_kind, config.linear_size, config.boundary)
    return _batch_fraction(tester, n_random, config, p_index, map_fn)


def spanning_curve(
    lattice_kind: str,
    p_values: Sequence[float],
    linear_size: int,
    trials: int,
    seed: int,
    boundary: str = "wrap-horizontal",
    map_fn=map,
) -> PercolationEstimate:
    """Spanning fraction at each requested occupation probability."""
    tester, n_random = _occupancy_tester(lattice_kind, linear_size, boundary)
    fracs: List[float] = []
    errs: List[float] = []
    for p_index, p in enumerate(p_values):
        config = PercolationTrialConfig(p, linear_size, trials, seed, boundary)
        frac, err = _batch_fraction(tester, n_random, config, p_index, map_fn)
        fracs.append(frac)
        errs.append(err)
    return PercolationEstimate(tuple(p_values), tuple(fracs), tuple(errs), None)


def _estimate_threshold(
    lattice_kind: str,
    linear_size: int,
    trials: int,
    seed: int,
    boundary: str,
    map_fn,
) -> PercolationEstimate:
    if linear_size < 16:
        raise ValueError(f"linear_size must be >= 16, got {linear_size}")
    if trials < 100:
        raise ValueError(f"trials must be >= 100, got {trials}")
    tester, n_random = _occupancy_tester(lattice_kind, linear_size, boundary)
    lo, hi = THRESHOLD_BRACKET
    ps: List[float] = []
    fracs: List[float] = []
    errs: List[float] = []
    for p_index in range(THRESHOLD_ITERATIONS):
        mid = 0.5 * (lo + hi)
        config = PercolationTrialConfig(mid, linear_size, trials, seed, boundary)
        frac, err = _batch_fraction(tester, n_random, config, p_index, map_fn)
        ps.append(mid)
        fracs.append(frac)
        errs.append(err)
        if frac >= 0.5:
            hi = mid
        else:
            lo = mid
    return PercolationEstimate(tuple(ps), tuple(fracs), tuple(errs), 0.5 * (lo + hi))


def estimate_site_threshold(
    linear_size: int,
    trials: int,
    seed: int,
    boundary: str = "wrap-horizontal",
    map_fn=map,
) -> PercolationEstimate:
    """Bisect the triangular-lattice site occupation probability to the
    point where half the trials span."""
    return _estimate_threshold(
        "triangular-site", linear_size, trials, seed, boundary, map_fn
    )


def estimate_bond_threshold_honeycomb(
    linear_size: int,
    trials: int,
    seed: int,
    boundary: str = "wrap-horizontal",
    map_fn=map,
) -> PercolationEstimate:
    """Same harness with honeycomb bonds occupied instead of sites."""
    return _estimate_threshold(
        "honeycomb-bond", linear_size, trials, seed, boundary, map_fn
    )


def p0_of_phi1(phi1: float) -> float:
    """Occupation probability delivered to a triangular site by the
    three-link joint measurement on a hub with Schmidt weight phi1."""
    if not 0.0 <= phi1 <= 0.5:
        raise ValueError(f"phi1 must lie in [0, 1/2], got {phi1}")
    phi0 = 1.0 - phi1
    k = phi0**3 + phi1**3 + 3.0 * phi0 * phi1**2
    radicand = k * k - 4.0 * phi0**2 * phi1**2 * (2.0 - 3.0 * phi0 * phi1)
    if radicand < 0.0:
        if radicand < RADICAND_FLOOR:
            raise ValueError(f"radicand {radicand} below clamping floor")
        radicand = 0.0
    return 1.0 - phi0**2 * phi1 - math.sqrt(radicand)


def phi1_percolation_threshold() -> float:
    """Least Schmidt weight whose site occupation reaches the
    triangular threshold 1/2; bisection on (0.1, 0.4)."""
    lo, hi = PHI1_BRACKET
    f_lo = p0_of_phi1(lo) - 0.5
    if f_lo * (p0_of_phi1(hi) - 0.5) >= 0.0:
        raise RuntimeError("occupation curve does not cross 1/2 inside the bracket")
    while hi - lo >= PHI1_WIDTH:
        mid = 0.5 * (lo + hi)
        f_mid = p0_of_phi1(mid) - 0.5
        if f_lo * f_mid <= 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class StrategyReport:
    """Network-strategy comparison: minimal bond quality and per-bond
    ebits for the bond-conversion strategy (p_ghz, s_ghz) vs the joint
    measurement strategy (p_gw, s_gw), plus the measurement-basis
    averages behind them."""

    p_ghz: float
    p_gw: float
    s_ghz: float
    s_gw: float
    bond_reduction_pct: float
    ebit_reduction_pct: float
    gw_avg_scp: float
    gw_avg_roi: float
    ghz_avg_scp: float
    ghz_avg_roi: float


def _binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -(x * math.log2(x) + (1.0 - x) * math.log2(1.0 - x))


def strategy_report() -> StrategyReport:
    """Assemble the headline comparison; the bond-strategy threshold is
    the analytic honeycomb value 1 - 2 sin(pi/18), not a Monte Carlo
    estimate."""
    p_ghz = 1.0 - 2.0 * math.sin(math.pi / 18.0)
    phi_star = phi1_percolation_threshold()
    p_gw = 2.0 * phi_star
    s_ghz = _binary_entropy(0.5 * p_ghz)
    s_gw = _binary_entropy(phi_star)
    ghz = ghz_basis()
    gw = gw_basis()
    return StrategyReport(
        p_ghz=p_ghz,
        p_gw=p_gw,
        s_ghz=s_ghz,
        s_gw=s_gw,
        bond_reduction_pct=100.0 * (p_ghz - p_gw) / p_ghz,
        ebit_reduction_pct=100.0 * (s_ghz - s_gw) / s_ghz,
        gw_avg_scp=basis_average_scp(gw),
        gw_avg_roi=basis_average_roi(gw),
        ghz_avg_scp=basis_average_scp(ghz),
        ghz_avg_roi=basis_average_roi(ghz),
    )
