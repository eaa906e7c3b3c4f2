"""
Assisted concentration on a single qubit pair
=============================================

One party of a three-qubit state measures its qubit so that the other
two end up sharing as much bipartite entanglement as possible.  This
walk-through compares real measurement directions against complex
("imaginary") ones and shows where the phase actually pays off.
"""

import numpy as np

from iqconc import assist, bases, qcore

# A state from the slice family l0|000> + l1|100> + l4|111>.  Only the
# (B, C) pair is concurrent, so party A is the natural helper.
s = assist.SliceState(np.sqrt(3 / 8), np.sqrt(3 / 8), 0.5)
state = assist.canonical_to_state(s.to_canonical())

bound = assist.eoa_bound(state, 1, 2)
print("state: l0 = l1 = sqrt(3/8), l4 = 1/2")
print(f"entanglement-of-assistance bound for (B, C): {bound:.6f}")

# The hat basis {|+^>, |-^>} is maximally imaginary and saturates the
# bound; the Pauli-X basis is real and generally does not.
for label in ("hat", "pauli-x"):
    y = assist.assisted_yield(state, 0, bases.basis_from_label(label))
    print(f"average yield, helper A, {label:8s}: {y:.6f}")

# The best real direction has a closed form.  Here it lands on 3 pi / 8.
alpha_star = assist.optimal_real_alpha(s)
y_star = assist.assisted_yield(state, 0, bases.real_qubit_basis(alpha_star))
print(f"optimal real angle: {alpha_star:.6f} rad  (3 pi / 8 = {3 * np.pi / 8:.6f})")
print(f"average yield at the optimal real angle: {y_star:.6f}")

# At a fixed measurement angle the story is different: adding the phase
# beta = pi/2 never hurts and usually helps.  Closed forms for the
# one-parameter family b|000> + b|100> + a|111>:
print()
print("fixed-angle comparison on the a = 0.7 family member")
p = assist.SliceFamilyParam.from_a(0.7)
print(f"{'alpha':>8s} {'real':>10s} {'imaginary':>10s}")
for alpha in np.linspace(0.0, np.pi / 4, 6):
    re = assist.e2_re_closed(p, alpha)
    im = assist.e2_im_closed(p, alpha, np.pi / 2)
    print(f"{alpha:8.4f} {re:10.6f} {im:10.6f}")

# The advantage is captured by the resource of imaginarity of the
# measurement projectors: zero for any real direction, one for the hat
# basis.
hat_plus = np.asarray(bases.hat_basis().vectors[0])
x_plus = np.asarray(bases.pauli_x_basis().vectors[0])
print()
print(f"RoI of |+^><+^|: {qcore.roi(qcore.projector(hat_plus)):.6f}")
print(f"RoI of |+><+|  : {qcore.roi(qcore.projector(x_plus)):.6f}")

# A numerical search over all single-qubit bases agrees with the bound.
alpha, beta, value = assist.optimize_qubit_basis(state, 0)
print()
print(f"numerically optimized basis: alpha = {alpha:.6f}, "
      f"beta = {beta:.6f}, yield = {value:.9f}")
