"""
Three-qubit entanglement swapping at a hub
==========================================

A hub holds one qubit of each of three partially entangled pairs with
Schmidt weights (phi0, phi1).  Measuring the three hub qubits jointly
leaves the outer parties in a three-qubit state.  Two joint bases are
compared: the standard GHZ basis and the GHZ-W mixture ("GW").
"""

import numpy as np

from iqconc import bases, swap

phi = swap.TwoQubitPhi.from_phi1(0.3)
print(f"link weights: phi0 = {phi.phi0}, phi1 = {phi.phi1}")

# The GW measurement has only two distinct outcome classes: five G-type
# branches with a common yield, and three W-type branches that always
# carry e2 = 2/3.
print()
print("GW measurement outcomes")
print(f"{'outcome':>7s} {'probability':>12s} {'pair e2':>10s}")
for out in swap.swap_measure(phi, bases.gw_basis()):
    print(f"{out.index:7d} {out.probability:12.8f} {out.e2:10.6f}")

print()
print("GHZ measurement outcomes")
print(f"{'outcome':>7s} {'probability':>12s} {'pair e2':>10s}")
for out in swap.swap_measure(phi, bases.ghz_basis()):
    print(f"{out.index:7d} {out.probability:12.8f} {out.e2:10.6f}")

# Averaging probability x e2 over outcomes reproduces the closed forms.
print()
print("average concentrated entanglement E2 against phi1")
print(f"{'phi1':>6s} {'GHZ':>10s} {'GW':>10s} {'advantage':>10s}")
for point in swap.sweep_yields(0.05, 0.5, 0.05):
    print(f"{point.phi1:6.2f} {point.yield_ghz:10.6f} "
          f"{point.yield_gw:10.6f} {point.advantage:10.6f}")

# The GW basis wins for weakly entangled links and loses near the
# maximally entangled point.  The crossover and the largest advantage:
cross = swap.crossover_phi1()
star, adv = swap.max_advantage()
print()
print(f"crossover at phi1 = {cross:.6f}")
print(f"largest GW advantage {adv:.6f} at phi1 = {star:.6f}")

# Sanity anchor: at phi1 = 1/2 the links are Bell pairs, the GHZ yield
# is 1, and the GW yield drops to (7 - sqrt(5)) / 8.
print()
print(f"GHZ yield at phi1 = 1/2: {swap.yield_ghz_closed(0.5):.6f}")
print(f"GW  yield at phi1 = 1/2: {swap.yield_gw_closed(0.5):.6f} "
      f"= (7 - sqrt(5))/8 = {(7 - np.sqrt(5)) / 8:.6f}")
