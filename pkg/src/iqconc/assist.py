"""Assisted entanglement concentration on three-qubit pure states.

One party measures its qubit in a single-qubit projective basis; the
average singlet conversion probability concentrated between the other
two is compared against the assistance bound (the pairwise E2 measure).
Includes the closed forms for slice states and the one-parameter family
b|000> + b|100> + a|111>, plus a deterministic grid optimizer over
measurement bases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bases import ProjectiveBasis, verify_basis
from .qcore import EPS_NORM, PureState, e2_pair, hermitian_eigenvalues

# Measurement branches below this probability are dropped unrenormalized.
PROB_CUTOFF = 1e-14

GRID_POINTS = 64
REFINE_STEP = 1e-6


@dataclass(frozen=True)
class CanonicalThreeQubit:
    """Coefficients of the canonical three-qubit form
    l0|000> + l1 e^(i phi)|100> + l2|101> + l3|110> + l4|111>."""

    lambda0: float
    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float
    phi: float = 0.0

    def __post_init__(self):
        lams = self.lambdas()
        if any(l < 0 for l in lams):
            raise ValueError(f"lambda coefficients must be non-negative: {lams}")
        total = sum(l * l for l in lams)
        if abs(total - 1.0) > EPS_NORM:
            raise ValueError(f"sum of squared lambdas must be 1, got {total!r}")
        if not 0.0 <= self.phi <= np.pi:
            raise ValueError(f"phi must lie in [0, pi], got {self.phi}")

    def lambdas(self) -> tuple:
        return (self.lambda0, self.lambda1, self.lambda2, self.lambda3, self.lambda4)


@dataclass(frozen=True)
class SliceState:
    """Slice state l0|000> + l1|100> + l4|111> (only the BC concurrence
    is nonzero); l0 and l4 must be strictly positive."""

    lambda0: float
    lambda1: float
    lambda4: float

    def __post_init__(self):
        if self.lambda0 <= 0 or self.lambda4 <= 0:
            raise ValueError("lambda0 and lambda4 must be strictly positive")
        if self.lambda1 < 0:
            raise ValueError("lambda1 must be non-negative")
        total = self.lambda0**2 + self.lambda1**2 + self.lambda4**2
        if abs(total - 1.0) > EPS_NORM:
            raise ValueError(f"squared coefficients must sum to 1, got {total!r}")

    def to_canonical(self) -> CanonicalThreeQubit:
        return CanonicalThreeQubit(
            self.lambda0, self.lambda1, 0.0, 0.0, self.lambda4, 0.0
        )


@dataclass(frozen=True)
class SliceFamilyParam:
    """The one-parameter family b|000> + b|100> + a|111>, a^2 + 2b^2 = 1."""

    a: float
    b: float

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("a and b must be non-negative")
        total = self.a**2 + 2 * self.b**2
        if abs(total - 1.0) > EPS_NORM:
            raise ValueError(f"a^2 + 2 b^2 must equal 1, got {total!r}")

    @classmethod
    def from_a(cls, a: float) -> "SliceFamilyParam":
        if not 0.0 <= a <= 1.0:
            raise ValueError(f"a must lie in [0, 1], got {a}")
        return cls(a, math.sqrt((1.0 - a * a) / 2.0))

    def to_slice(self) -> SliceState:
        return SliceState(self.b, self.b, self.a)


@dataclass(frozen=True)
class GeneralizedW:
    """Weights of sqrt(x1)|100> + sqrt(x2)|010> + sqrt(x3)|001>."""

    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        if self.x1 < 0 or self.x2 < 0 or self.x3 < 0:
            raise ValueError("weights must be non-negative")
        total = self.x1 + self.x2 + self.x3
        if abs(total - 1.0) > EPS_NORM:
            raise ValueError(f"weights must sum to 1, got {total!r}")

    def to_state(self) -> PureState:
        amps = np.zeros(8, dtype=complex)
        amps[4] = math.sqrt(self.x1)
        amps[2] = math.sqrt(self.x2)
        amps[1] = math.sqrt(self.x3)
        return PureState(3, amps)


def canonical_to_state(c: CanonicalThreeQubit) -> PureState:
    """Amplitude vector of the canonical form."""
    amps = np.zeros(8, dtype=complex)
    amps[0] = c.lambda0
    amps[4] = c.lambda1 * np.exp(1j * c.phi)
    amps[5] = c.lambda2
    amps[6] = c.lambda3
    amps[7] = c.lambda4
    return PureState(3, amps)


def eoa_bound(state: PureState, i: int, j: int) -> float:
    """Upper bound on the average entanglement concentratable between
    parties i and j: the pairwise E2 measure of the pure state."""
    return e2_pair(state, i, j)


def _branch_yield(amps: np.ndarray, helper: int, vectors) -> float:
    """Sum of p_k * SCP(branch_k) over the basis vectors, computed on the
    raw amplitude tensor; branches below PROB_CUTOFF contribute zero."""
    tensor = amps.reshape(2, 2, 2)
    total = 0.0
    for v in vectors:
        branch = np.tensordot(np.conj(v), tensor, axes=([0], [helper]))
        p = float(np.sum(np.abs(branch) ** 2).real)
        if p < PROB_CUTOFF:
            continue
        mat = branch.reshape(2, 2)
        evals = hermitian_eigenvalues(mat @ mat.conj().T)
        # p * scp(branch / sqrt(p)) = 2 * (smallest eigenvalue before
        # renormalization), so the division never happens explicitly
        total += 2.0 * max(0.0, float(evals[0]))
    return total


def assisted_yield(state: PureState, helper: int, basis: ProjectiveBasis) -> float:
    """Average SCP concentrated between the two non-measured parties when
    ``helper`` measures its qubit in the given two-element basis."""
    if state.num_qubits != 3:
        raise ValueError("assisted_yield expects a three-qubit state")
    if helper not in (0, 1, 2):
        raise ValueError(f"helper must be 0, 1 or 2, got {helper}")
    if basis.dim != 2:
        raise ValueError("assisted_yield expects a single-qubit basis")
    if not verify_basis(basis, EPS_NORM).passed:
        raise ValueError(f"basis {basis.label!r} is not orthonormal")
    return _branch_yield(state.amplitudes, helper, basis.vectors)


def optimal_real_alpha(s: SliceState) -> float:
    """The angle arctan((sqrt(1 - l4^2) + l1) / l0) of the best real
    measurement basis for a slice state."""
    return math.atan(
        (math.sqrt(1.0 - s.lambda4**2) + s.lambda1) / s.lambda0
    )


def e2_im_closed(p: SliceFamilyParam, alpha: float, beta: float) -> float:
    """Average yield of the generic basis on the one-parameter family:
    2 min{a^2 sin^2(al), b^2 (1 + sin 2al cos be)}
    + 2 min{a^2 cos^2(al), b^2 (1 - sin 2al cos be)}."""
    if not 0.0 <= alpha <= np.pi / 4:
        raise ValueError(f"alpha must lie in [0, pi/4], got {alpha}")
    if not 0.0 <= beta < np.pi:
        raise ValueError(f"beta must lie in [0, pi), got {beta}")
    a_sq, b_sq = p.a**2, p.b**2
    s2 = math.sin(2 * alpha)
    cb = math.cos(beta)
    return 2.0 * min(a_sq * math.sin(alpha) ** 2, b_sq * (1 + s2 * cb)) + 2.0 * min(
        a_sq * math.cos(alpha) ** 2, b_sq * (1 - s2 * cb)
    )


def e2_re_closed(p: SliceFamilyParam, alpha: float) -> float:
    """Real-basis special case (beta = 0) of e2_im_closed."""
    return e2_im_closed(p, alpha, 0.0)


def _generic_vectors(alpha: float, beta: float):
    """Basis vectors of the generic single-qubit measurement without the
    [0, pi/4] restriction; (alpha, beta) in [0, pi/2) x [0, pi) reaches
    every unordered qubit basis."""
    c, s = math.cos(alpha), math.sin(alpha)
    phase = np.exp(1j * beta)
    return (
        np.array([c, phase * s], dtype=complex),
        np.array([np.conj(phase) * s, -c], dtype=complex),
    )


def optimize_qubit_basis(state: PureState, helper: int):
    """Best (alpha, beta, yield) over single-qubit measurement bases.

    Deterministic coarse 64x64 grid over [0, pi/2) x [0, pi) followed by
    grid shrinking around the best point until the step is below 1e-6.
    Ties go to the lexicographically smallest (alpha, beta).
    """
    if state.num_qubits != 3:
        raise ValueError("optimize_qubit_basis expects a three-qubit state")
    if helper not in (0, 1, 2):
        raise ValueError(f"helper must be 0, 1 or 2, got {helper}")
    amps = state.amplitudes

    def objective(alpha, beta):
        return _branch_yield(amps, helper, _generic_vectors(alpha, beta))

    step_a = (np.pi / 2) / GRID_POINTS
    step_b = np.pi / GRID_POINTS
    best_a, best_b, best_val = 0.0, 0.0, -1.0
    for ia in range(GRID_POINTS):
        for ib in range(GRID_POINTS):
            val = objective(ia * step_a, ib * step_b)
            if val > best_val:
                best_a, best_b, best_val = ia * step_a, ib * step_b, val

    while max(step_a, step_b) >= REFINE_STEP:
        alphas = best_a + step_a * np.linspace(-1, 1, 9)
        betas = best_b + step_b * np.linspace(-1, 1, 9)
        for a in alphas:
            if not 0.0 <= a < np.pi / 2:
                continue
            for b in betas:
                if not 0.0 <= b < np.pi:
                    continue
                val = objective(a, b)
                # strict > plus lexicographic scan order keeps ties on the
                # smallest (alpha, beta) and the reduction deterministic
                if val > best_val:
                    best_a, best_b, best_val = a, b, val
        step_a /= 4.0
        step_b /= 4.0

    return best_a, best_b, best_val
