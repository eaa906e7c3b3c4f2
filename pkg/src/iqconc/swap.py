"""Three-qubit entanglement swapping on a star of two-qubit links.

Three copies of a two-qubit state sqrt(phi0)|00> + sqrt(phi1)|11> are
shared between a hub (qubits A1, A2, A3) and three leaves (B, C, D).
Measuring the hub in an eight-element projective basis leaves the
leaves in one of eight three-qubit residual states; the quality of a
branch is its pairwise E2 and the figure of merit is the average yield
sum_i p_i * e2_i.  Closed forms for the GHZ-basis and GW-basis yields
are provided along with locators for the curve crossing and the point
of maximal GW advantage.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .assist import PROB_CUTOFF
from .bases import ProjectiveBasis, verify_basis
from .qcore import PureState, e2_pair

PHI_SUM_TOL = 1e-12
ADVANTAGE_TOL = 1e-14
RADICAND_FLOOR = -1e-14
CROSSOVER_BRACKET = (0.3, 0.45)
CROSSOVER_WIDTH = 1e-8
SEARCH_UPPER = 0.39493
SEARCH_STEP = 1e-7
_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class TwoQubitPhi:
    """Schmidt weights of one network link, heavier weight first."""

    phi0: float
    phi1: float

    def __post_init__(self):
        if self.phi1 < 0.0 or self.phi0 < self.phi1:
            raise ValueError(
                f"need phi0 >= phi1 >= 0, got ({self.phi0}, {self.phi1})"
            )
        if abs(self.phi0 + self.phi1 - 1.0) > PHI_SUM_TOL:
            raise ValueError(
                f"weights must sum to 1, got {self.phi0 + self.phi1!r}"
            )

    @classmethod
    def from_phi1(cls, phi1: float) -> "TwoQubitPhi":
        return cls(1.0 - phi1, phi1)


@dataclass(frozen=True)
class SwapOutcome:
    """One measurement branch: probability, residual state on the
    leaves (None when the branch has no weight) and its pairwise E2."""

    index: int
    probability: float
    post_state: Optional[PureState]
    e2: float


@dataclass(frozen=True)
class YieldCurvePoint:
    phi1: float
    yield_ghz: float
    yield_gw: float
    advantage: float

    def __post_init__(self):
        if abs(self.advantage - (self.yield_gw - self.yield_ghz)) > ADVANTAGE_TOL:
            raise ValueError("advantage must equal yield_gw - yield_ghz")


def network_state(phi: TwoQubitPhi) -> PureState:
    """Six-qubit product of the three links, ordered (A1, A2, A3, B, C, D)."""
    link = np.array(
        [math.sqrt(phi.phi0), 0.0, 0.0, math.sqrt(phi.phi1)], dtype=complex
    )
    full = np.kron(np.kron(link, link), link)
    # kron order is (A1, B, A2, C, A3, D); pull the hub qubits to the front
    tensor = full.reshape((2,) * 6).transpose(0, 2, 4, 1, 3, 5)
    return PureState(6, np.ascontiguousarray(tensor).reshape(64))


def swap_measure(phi: TwoQubitPhi, basis: ProjectiveBasis) -> List[SwapOutcome]:
    """Project the hub onto each basis element and report all branches.

    Branch probability is the squared norm of the residual; the
    residual is renormalized into a three-qubit state on (B, C, D) and
    scored with the E2 of its first leaf pair.  Branches below the
    probability cutoff carry no state and e2 = 0.
    """
    if basis.dim != 8:
        raise ValueError(f"swap basis must have dimension 8, got {basis.dim}")
    check = verify_basis(basis)
    if not check.passed:
        raise ValueError(
            f"basis {basis.label!r} failed verification "
            f"(orthonormality {check.orthonormality_residual:.3e}, "
            f"completeness {check.completeness_residual:.3e})"
        )
    tensor = network_state(phi).amplitudes.reshape((2,) * 6)
    outcomes = []
    for index, element in enumerate(basis.vectors):
        probe = np.conj(np.asarray(element, dtype=complex)).reshape(2, 2, 2)
        branch = np.tensordot(probe, tensor, axes=([0, 1, 2], [0, 1, 2]))
        p = float(np.sum(np.abs(branch) ** 2))
        if p < PROB_CUTOFF:
            outcomes.append(SwapOutcome(index, p, None, 0.0))
            continue
        post = PureState(3, branch.reshape(8) / math.sqrt(p))
        outcomes.append(SwapOutcome(index, p, post, e2_pair(post, 0, 1)))
    return outcomes


def _check_phi1_range(phi1: float):
    if not 0.0 <= phi1 <= 0.5:
        raise ValueError(f"phi1 must lie in [0, 1/2], got {phi1}")


def yield_ghz_closed(phi1: float) -> float:
    """Average yield of the GHZ-basis swap: 2*phi1^2*(phi1 + 3*phi0)."""
    _check_phi1_range(phi1)
    phi0 = 1.0 - phi1
    return 2.0 * phi1**2 * (phi1 + 3.0 * phi0)


def yield_gw_closed(phi1: float) -> float:
    """Average yield of the GW-basis swap:

        1 - phi0^2 phi1 - sqrt(k^2 - 4 phi0^2 phi1^2 (2 - 3 phi0 phi1))

    with k = phi0^3 + phi1^3 + 3 phi0 phi1^2.  The radicand is clamped
    at zero when it underflows by no more than 1e-14 (phi1 -> 0 corner).
    """
    _check_phi1_range(phi1)
    phi0 = 1.0 - phi1
    k = phi0**3 + phi1**3 + 3.0 * phi0 * phi1**2
    radicand = k**2 - 4.0 * phi0**2 * phi1**2 * (2.0 - 3.0 * phi0 * phi1)
    if radicand < 0.0:
        if radicand < RADICAND_FLOOR:
            raise ValueError(f"radicand {radicand} below clamping floor")
        radicand = 0.0
    return 1.0 - phi0**2 * phi1 - math.sqrt(radicand)


def _advantage(phi1: float) -> float:
    return yield_gw_closed(phi1) - yield_ghz_closed(phi1)


def crossover_phi1() -> float:
    """Bisect the yield difference to the point where the GW advantage
    vanishes; the bracket is fixed at (0.3, 0.45)."""
    lo, hi = CROSSOVER_BRACKET
    f_lo = _advantage(lo)
    if f_lo * _advantage(hi) >= 0.0:
        raise RuntimeError("yield curves do not cross inside the bracket")
    while hi - lo >= CROSSOVER_WIDTH:
        mid = 0.5 * (lo + hi)
        f_mid = _advantage(mid)
        if f_lo * f_mid <= 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def max_advantage() -> Tuple[float, float]:
    """Golden-section maximum of the GW advantage on [0, 0.39493];
    returns (phi1_star, advantage)."""
    a, b = 0.0, SEARCH_UPPER
    c = b - _INV_GOLDEN * (b - a)
    d = a + _INV_GOLDEN * (b - a)
    f_c, f_d = _advantage(c), _advantage(d)
    while b - a >= SEARCH_STEP:
        if f_c > f_d:
            b, d, f_d = d, c, f_c
            c = b - _INV_GOLDEN * (b - a)
            f_c = _advantage(c)
        else:
            a, c, f_c = c, d, f_d
            d = a + _INV_GOLDEN * (b - a)
            f_d = _advantage(d)
    star = 0.5 * (a + b)
    return star, _advantage(star)


def sweep_yields(start: float, stop: float, step: float) -> List[YieldCurvePoint]:
    """Evaluate both closed-form yields on the inclusive grid
    start, start+step, ..., stop."""
    if not 0.0 <= start < stop <= 0.5:
        raise ValueError(f"need 0 <= start < stop <= 1/2, got [{start}, {stop}]")
    if step <= 0.0:
        raise ValueError(f"step must be positive, got {step}")
    count = int(math.floor((stop - start) / step + 1e-9))
    points = []
    for i in range(count + 1):
        x = min(start + i * step, stop)
        g = yield_ghz_closed(x)
        w = yield_gw_closed(x)
        points.append(YieldCurvePoint(x, g, w, w - g))
    return points
