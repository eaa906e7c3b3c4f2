"""
Entanglement percolation on a honeycomb network
===============================================

Every bond of a honeycomb lattice is a partially entangled pair.  Two
ways to wire up long-distance entanglement are compared: convert each
bond to a singlet and hope the surviving bonds percolate, or let every
other node measure its three qubits jointly in the GW basis, which
turns the lattice into triangular *site* percolation.
"""

from concurrent.futures import ThreadPoolExecutor

from iqconc import perc, swap

# The joint measurement contracts each passive honeycomb node into a
# clique of its three measured neighbours: a triangular lattice.
lattice = perc.build_honeycomb(6, 6)
graph = perc.contract_to_triangular(lattice)
print(f"6x6 honeycomb: {lattice.num_nodes} nodes, {len(lattice.bonds)} bonds")
print(f"contracted:    {graph.num_sites} triangular sites")

# Monte Carlo spanning fractions around the triangular-site threshold.
print()
print("triangular-site spanning fraction, L = 48, 200 trials per point")
with ThreadPoolExecutor(max_workers=4) as pool:
    est = perc.spanning_curve(
        "triangular-site",
        p_values=[0.40, 0.45, 0.50, 0.55, 0.60],
        linear_size=48,
        trials=200,
        seed=7,
        map_fn=pool.map,
    )
print(f"{'p':>6s} {'fraction':>9s} {'std err':>8s}")
for p, frac, err in zip(est.p_values, est.spanning_fraction, est.standard_error):
    print(f"{p:6.2f} {frac:9.3f} {err:8.3f}")

# Bisection against the 50% spanning line recovers both thresholds.
site = perc.estimate_site_threshold(64, 200, 11)
bond = perc.estimate_bond_threshold_honeycomb(64, 200, 11)
print()
print(f"site threshold estimate (L = 64):  {site.p_c_estimate:.4f}  (exact 1/2)")
print(f"bond threshold estimate (L = 64):  {bond.p_c_estimate:.4f}  "
      f"(exact 1 - 2 sin(pi/18) = 0.6527)")

# The GW strategy occupies a site with probability p0 = E2_GW(phi1), so
# weaker links suffice: the joint strategy percolates down to
# phi1 = 0.2521 while bond conversion needs 2 phi1 > 0.6527.
print()
print(f"weakest usable link, GW strategy: phi1 = "
      f"{perc.phi1_percolation_threshold():.6f}")
report = perc.strategy_report()
print()
print("strategy comparison")
print(f"{'':24s} {'bond conversion':>16s} {'joint GW':>10s}")
print(f"{'minimal bond quality':24s} {report.p_ghz:16.4f} {report.p_gw:10.4f}")
print(f"{'ebits per bond':24s} {report.s_ghz:16.4f} {report.s_gw:10.4f}")
print(f"bond-quality reduction: {report.bond_reduction_pct:.1f}%")
print(f"ebit-cost reduction:    {report.ebit_reduction_pct:.1f}%")

# Concrete instance: phi1 = 0.3 links fail the bond route outright but
# the contracted lattice still percolates comfortably.
phi1 = 0.3
p0 = perc.p0_of_phi1(phi1)
frac, err = perc.spanning_fraction_batch(
    "triangular-site",
    perc.PercolationTrialConfig(p0, 64, 100, 3),
)
print()
print(f"phi1 = {phi1}: 2 phi1 = {2 * phi1:.3f} < {report.p_ghz:.4f} "
      f"(bond conversion fails)")
print(f"but p0 = E2_GW = {p0:.4f} > 1/2, "
      f"spanning fraction {frac:.2f} +- {err:.2f}")
assert abs(p0 - swap.yield_gw_closed(phi1)) < 1e-14
