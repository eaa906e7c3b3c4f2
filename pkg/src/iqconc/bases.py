"""Measurement bases: parametric single-qubit families, the eight-element
GHZ basis, the GHZ-W (GW) basis, verification reports, basis-level
entanglement/imaginarity averages, and the G1 SLOCC construction check.

Element ordering is part of the public contract; swap outcome indices
refer to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qcore import EPS_NORM, PureState, e2_pair, projector, roi

# Principal primitive roots; any primitive root yields an orthonormal
# set, so the branch is fixed here and documented.
FIFTH_ROOT = np.exp(2j * np.pi / 5)
CUBE_ROOT = np.exp(2j * np.pi / 3)


@dataclass(frozen=True)
class QubitBasisParams:
    """Angles (alpha, beta) of the generic single-qubit basis."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not 0.0 <= self.alpha < np.pi / 2:
            raise ValueError(f"alpha must lie in [0, pi/2), got {self.alpha}")
        if not 0.0 <= self.beta < np.pi:
            raise ValueError(f"beta must lie in [0, pi), got {self.beta}")


@dataclass(frozen=True)
class ProjectiveBasis:
    """Ordered set of ``dim`` vectors of dimension ``dim``.

    Vectors are stored exactly as constructed (no phase canonicalization)
    and are not forced to be orthonormal here: ``verify_basis`` is the
    checking mechanism, and it must be able to inspect defective sets.
    """

    dim: int
    vectors: tuple
    label: str

    def __post_init__(self):
        vecs = tuple(np.asarray(v, dtype=complex) for v in self.vectors)
        if len(vecs) != self.dim:
            raise ValueError(f"expected {self.dim} vectors, got {len(vecs)}")
        for v in vecs:
            if v.shape != (self.dim,):
                raise ValueError(f"expected vectors of length {self.dim}")
            v.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)


@dataclass(frozen=True)
class SloccGhzParams:
    """Five-parameter form of a GHZ-class state with normalization K."""

    delta: float
    theta1: float
    theta2: float
    theta3: float
    varphi: float
    K: float

    def __post_init__(self):
        if not 0.0 < self.delta <= np.pi / 4:
            raise ValueError(f"delta must lie in (0, pi/4], got {self.delta}")
        for name in ("theta1", "theta2", "theta3"):
            val = getattr(self, name)
            if not 0.0 < val <= np.pi / 2:
                raise ValueError(f"{name} must lie in (0, pi/2], got {val}")
        if not 0.0 <= self.varphi < 2 * np.pi:
            raise ValueError(f"varphi must lie in [0, 2pi), got {self.varphi}")
        expected = 1.0 / (
            1.0
            + 2.0
            * math.cos(self.delta)
            * math.sin(self.delta)
            * math.cos(self.theta1)
            * math.cos(self.theta2)
            * math.cos(self.theta3)
            * math.cos(self.varphi)
        )
        if abs(self.K - expected) > EPS_NORM:
            raise ValueError(f"K = {self.K} inconsistent with the angles")


def real_qubit_basis(alpha: float) -> ProjectiveBasis:
    """{cos(a)|0> + sin(a)|1>, sin(a)|0> - cos(a)|1>} for a in [0, pi/2)."""
    if not 0.0 <= alpha < np.pi / 2:
        raise ValueError(f"alpha must lie in [0, pi/2), got {alpha}")
    c, s = math.cos(alpha), math.sin(alpha)
    return ProjectiveBasis(
        2,
        (np.array([c, s], dtype=complex), np.array([s, -c], dtype=complex)),
        f"real:{alpha:.12g}",
    )


def complex_qubit_basis(alpha: float, beta: float) -> ProjectiveBasis:
    """{|+k>, |-k>} with |+k> = cos(a)|0> + e^(ib) sin(a)|1> and
    |-k> = e^(-ib) sin(a)|0> - cos(a)|1>; a in [0, pi/4], b in [0, pi)."""
    if not 0.0 <= alpha <= np.pi / 4:
        raise ValueError(f"alpha must lie in [0, pi/4], got {alpha}")
    if not 0.0 <= beta < np.pi:
        raise ValueError(f"beta must lie in [0, pi), got {beta}")
    c, s = math.cos(alpha), math.sin(alpha)
    phase = np.exp(1j * beta)
    return ProjectiveBasis(
        2,
        (
            np.array([c, phase * s], dtype=complex),
            np.array([np.conj(phase) * s, -c], dtype=complex),
        ),
        f"complex:{alpha:.12g},{beta:.12g}",
    )


def pauli_x_basis() -> ProjectiveBasis:
    basis = real_qubit_basis(np.pi / 4)
    return ProjectiveBasis(2, basis.vectors, "pauli-x")


def hat_basis() -> ProjectiveBasis:
    """The maximally imaginary single-qubit basis (alpha=pi/4, beta=pi/2)."""
    basis = complex_qubit_basis(np.pi / 4, np.pi / 2)
    return ProjectiveBasis(2, basis.vectors, "hat")


def ghz_basis() -> ProjectiveBasis:
    """The eight states (|000> +/- |111>)/sqrt2, (|001> +/- |110>)/sqrt2,
    (|010> +/- |101>)/sqrt2, (|100> +/- |011>)/sqrt2, in that order."""
    pairs = ((0, 7), (1, 6), (2, 5), (4, 3))
    vecs = []
    for hi, lo in pairs:
        for sign in (1.0, -1.0):
            v = np.zeros(8, dtype=complex)
            v[hi] = 1 / np.sqrt(2)
            v[lo] = sign / np.sqrt(2)
            vecs.append(v)
    return ProjectiveBasis(8, tuple(vecs), "ghz")


def gw_basis() -> ProjectiveBasis:
    """The GHZ-W basis: five GHZ-class states G1..G5 (coefficients 1/sqrt5
    with fifth-root-of-unity phases on |110>, |101>, |011>, |111>) followed
    by three W states W1..W3 (coefficients 1/sqrt3 with cube-root phases
    on |010> and |001>)."""
    vecs = []
    for j in range(5):
        v = np.zeros(8, dtype=complex)
        v[0b000] = 1.0
        v[0b110] = FIFTH_ROOT ** j
        v[0b101] = FIFTH_ROOT ** (2 * j % 5)
        v[0b011] = FIFTH_ROOT ** (3 * j % 5)
        v[0b111] = FIFTH_ROOT ** (4 * j % 5)
        vecs.append(v / np.sqrt(5))
    for j in range(3):
        v = np.zeros(8, dtype=complex)
        v[0b100] = 1.0
        v[0b010] = CUBE_ROOT ** j
        v[0b001] = CUBE_ROOT ** (2 * j % 3)
        vecs.append(v / np.sqrt(3))
    return ProjectiveBasis(8, tuple(vecs), "gw")


@dataclass(frozen=True)
class BasisVerification:
    label: str
    tol: float
    orthonormality_residual: float
    completeness_residual: float
    passed: bool


def verify_basis(basis: ProjectiveBasis, tol: float = EPS_NORM) -> BasisVerification:
    """Report max |<v_i|v_j> - delta_ij| and the completeness residual
    max |sum_i |v_i><v_i| - identity|; passes iff both are below tol."""
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    gram = np.array(
        [[np.vdot(a, b) for b in basis.vectors] for a in basis.vectors]
    )
    ortho = float(np.max(np.abs(gram - np.eye(basis.dim))))
    total = sum(np.outer(v, v.conj()) for v in basis.vectors)
    complete = float(np.max(np.abs(total - np.eye(basis.dim))))
    return BasisVerification(
        label=basis.label,
        tol=tol,
        orthonormality_residual=ortho,
        completeness_residual=complete,
        passed=ortho < tol and complete < tol,
    )


def basis_average_scp(basis: ProjectiveBasis) -> float:
    """Mean pairwise E2 over the elements of a three-qubit basis.

    Both built-in bases are party-permutation invariant, so the (0, 1)
    pair is representative.
    """
    if basis.dim != 8:
        raise ValueError("basis_average_scp expects a three-qubit basis")
    return float(
        np.mean([e2_pair(PureState(3, v), 0, 1) for v in basis.vectors])
    )


def basis_average_roi(basis: ProjectiveBasis) -> float:
    """Mean robustness of imaginarity over the element projectors."""
    return float(np.mean([roi(projector(v)) for v in basis.vectors]))


def _perp(v: np.ndarray) -> np.ndarray:
    """Orthogonal complement of a single-qubit vector, fixed convention."""
    return np.array([np.conj(v[1]), -np.conj(v[0])], dtype=complex)


@dataclass(frozen=True)
class SloccG1Report:
    params: SloccGhzParams
    amplitude_residual: float
    term_norm_residual: float
    povm_residual: float
    e2_value: float
    passed: bool


def verify_g1_slocc_decomposition(tol: float = EPS_NORM) -> SloccG1Report:
    """Check the two-product-term form of |G1> and the local filter route.

    |G1> = cos(d)|a1 b1 c1> + sin(d)|a2 b2 c2> with cos(d) = sqrt((5+sqrt5)/10)
    and a2, b2, c2 the orthogonal complements of a1, b1, c1.  Note the sign:
    a2 = (a1[1], -a1[0]); writing its second component positive breaks the
    identity (it would add a |a1 b2 c2> cross term, and <a1 b2 c2|G1> = 0
    because b2 is orthogonal to b1).  Equivalently, |G1> is reached from
    |GHZ> by the diagonal filter cos(d)|a1><a1| + sin(d)|a1p><a1p| after
    rotating each party into its primed frame; that filter is the POVM
    check below (theta1 = pi/2 in the five-angle parameterization).
    """
    cos_d = math.sqrt((5 + math.sqrt(5)) / 10)
    sin_d = math.sqrt((5 - math.sqrt(5)) / 10)
    delta = math.atan2(sin_d, cos_d)
    csc_d, sec_d = 1 / sin_d, 1 / cos_d

    a1 = csc_d * np.array([0.5 * (1 - 1 / math.sqrt(5)), 1 / math.sqrt(5)])
    a2 = sec_d * np.array([0.5 * (1 + 1 / math.sqrt(5)), -1 / math.sqrt(5)])
    b1 = sec_d / math.sqrt(5) * np.array([1.0, (1 + math.sqrt(5)) / 2])
    b2 = csc_d / math.sqrt(5) * np.array([1.0, (1 - math.sqrt(5)) / 2])
    c1, c2 = b1, b2

    term1 = np.kron(np.kron(a1, b1), c1)
    term2 = np.kron(np.kron(a2, b2), c2)
    recon = cos_d * term1 + sin_d * term2
    g1 = gw_basis().vectors[0]
    amplitude_residual = float(np.max(np.abs(recon - g1)))
    term_norm_residual = float(
        max(abs(np.linalg.norm(term1) - 1), abs(np.linalg.norm(term2) - 1))
    )

    # Filter route: rotate |GHZ> into the {a1, a1p} (x) {b1, b1p} (x)
    # {c1, c1p} frames, then apply A (x) I (x) I with A diagonal there.
    a1p, b1p, c1p = _perp(a1), _perp(b1), _perp(c1)
    u_a = np.outer(a1, [1, 0]) + np.outer(a1p, [0, 1])
    u_b = np.outer(b1, [1, 0]) + np.outer(b1p, [0, 1])
    u_c = np.outer(c1, [1, 0]) + np.outer(c1p, [0, 1])
    ghz = np.zeros(8, dtype=complex)
    ghz[0] = ghz[7] = 1 / np.sqrt(2)
    rotated = np.kron(np.kron(u_a, u_b), u_c) @ ghz
    povm_a = cos_d * np.outer(a1, a1.conj()) + sin_d * np.outer(a1p, a1p.conj())
    mapped = np.kron(np.kron(povm_a, np.eye(2)), np.eye(2)) @ rotated
    mapped = mapped / np.linalg.norm(mapped)
    povm_residual = float(np.max(np.abs(mapped - g1)))

    params = SloccGhzParams(
        delta=delta,
        theta1=np.pi / 2,
        theta2=np.pi / 2,
        theta3=np.pi / 2,
        varphi=0.0,
        K=1.0,
    )
    return SloccG1Report(
        params=params,
        amplitude_residual=amplitude_residual,
        term_norm_residual=term_norm_residual,
        povm_residual=povm_residual,
        e2_value=e2_pair(PureState(3, recon / np.linalg.norm(recon)), 0, 1),
        passed=max(amplitude_residual, term_norm_residual, povm_residual) < tol,
    )


def basis_from_label(label: str) -> ProjectiveBasis:
    """Resolve a CLI basis label: ghz, gw, pauli-x, hat, real:<alpha>,
    complex:<alpha>,<beta> (angles in radians)."""
    if label == "ghz":
        return ghz_basis()
    if label == "gw":
        return gw_basis()
    if label == "pauli-x":
        return pauli_x_basis()
    if label == "hat":
        return hat_basis()
    if label.startswith("real:"):
        return real_qubit_basis(_parse_angle(label[5:], label))
    if label.startswith("complex:"):
        parts = label[8:].split(",")
        if len(parts) != 2:
            raise ValueError(f"expected complex:<alpha>,<beta>, got {label!r}")
        return complex_qubit_basis(
            _parse_angle(parts[0], label), _parse_angle(parts[1], label)
        )
    raise ValueError(f"unknown basis label {label!r}")


def _parse_angle(text: str, label: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"unparsable angle in basis label {label!r}") from None
