"""Dense linear algebra for few-qubit pure states and the scalar measures
built on top of it.

Everything here works on explicit amplitude vectors (up to 6 qubits) and
small hermitian matrices (up to 8x8).  Provided measures: singlet
conversion probability (SCP), the pairwise E2 measure on three-qubit
states, Wootters concurrence, the three-tangle, von Neumann entropy and
the robustness of imaginarity (RoI).

Index convention: qubit 0 is the leftmost ket label and the most
significant bit of the amplitude index, i.e. |abc> sits at index
4a + 2b + c.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

MAX_QUBITS = 6

# Tolerances referenced throughout the package and its test suite.
EPS_NORM = 1e-12   # state normalisation, hermiticity and trace checks
EPS_EIG = 1e-10    # how negative a density-matrix eigenvalue may be
EPS_HERM = 1e-10   # hermiticity gate of the eigensolver

JACOBI_OFFDIAG_CUTOFF = 1e-13
JACOBI_MAX_SWEEPS = 100

ENTROPY_EIG_FLOOR = 1e-14

_PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])


@dataclass(frozen=True)
class PureState:
    """Normalised amplitude vector over ``num_qubits`` qubits."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.num_qubits <= MAX_QUBITS:
            raise ValueError(
                f"num_qubits must be in 1..{MAX_QUBITS}, got {self.num_qubits}"
            )
        amps = np.asarray(self.amplitudes, dtype=complex)
        dim = 2 ** self.num_qubits
        if amps.shape != (dim,):
            raise ValueError(f"expected {dim} amplitudes, got shape {amps.shape}")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > EPS_NORM:
            raise ValueError(f"state is not normalised: sum |a|^2 = {norm_sq!r}")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex]) -> "PureState":
        amps = np.asarray(amplitudes, dtype=complex)
        n = int(amps.size).bit_length() - 1
        if 2 ** n != amps.size:
            raise ValueError(f"amplitude count {amps.size} is not a power of two")
        return cls(n, amps)


@dataclass(frozen=True)
class QubitSubset:
    """Strictly increasing, nonempty tuple of qubit positions."""

    indices: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if not idx:
            raise ValueError("qubit subset must be nonempty")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"qubit indices must be strictly increasing: {idx}")
        if idx[0] < 0:
            raise ValueError(f"negative qubit index: {idx}")
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


SubsetLike = Union[QubitSubset, Sequence[int], int]


def _as_subset(keep: SubsetLike) -> QubitSubset:
    if isinstance(keep, QubitSubset):
        return keep
    if isinstance(keep, (int, np.integer)):
        return QubitSubset((int(keep),))
    return QubitSubset(tuple(keep))


def hermitian_eigenvalues(m) -> np.ndarray:
    """Eigenvalues of a small hermitian matrix, ascending.

    Uses the closed quadratic form for 2x2 inputs and a cyclic Jacobi
    iteration (off-diagonal Frobenius norm below
    ``JACOBI_OFFDIAG_CUTOFF``) for larger ones.  The input may be a
    :class:`DensityMatrix` or a plain array.
    """
    a = np.asarray(m.entries if isinstance(m, DensityMatrix) else m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if np.max(np.abs(a - a.conj().T)) > EPS_HERM:
        raise ValueError("matrix is not hermitian within tolerance")
    a = (a + a.conj().T) / 2.0
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])
    if n == 2:
        mean = (a[0, 0].real + a[1, 1].real) / 2.0
        r = np.hypot((a[0, 0].real - a[1, 1].real) / 2.0, abs(a[0, 1]))
        return np.array([mean - r, mean + r])
    return _jacobi_eigenvalues(a)


def _jacobi_eigenvalues(a: np.ndarray) -> np.ndarray:
    """Cyclic Jacobi sweeps with complex plane rotations."""
    a = a.copy()
    n = a.shape[0]
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < JACOBI_OFFDIAG_CUTOFF:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = abs(a[p, q])
                if r == 0.0:
                    continue
                phase = a[p, q] / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # Unitary plane rotation: a phase that makes a[p, q] real
                # followed by the real Givens rotation zeroing it.
                jrot = np.eye(n, dtype=complex)
                jrot[p, p] = c
                jrot[p, q] = s
                jrot[q, p] = -s * np.conj(phase)
                jrot[q, q] = c * np.conj(phase)
                a = jrot.conj().T @ a @ jrot
    else:
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off >= JACOBI_OFFDIAG_CUTOFF:
            raise RuntimeError("Jacobi iteration did not converge")
    return np.sort(np.diag(a).real)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix of dim 2, 4 or 8."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        if self.dim not in (2, 4, 8):
            raise ValueError(f"dim must be 2, 4 or 8, got {self.dim}")
        ent = np.asarray(self.entries, dtype=complex)
        if ent.shape != (self.dim, self.dim):
            raise ValueError(f"expected {self.dim}x{self.dim} entries")
        if np.max(np.abs(ent - ent.conj().T)) > EPS_NORM:
            raise ValueError("density matrix is not hermitian within tolerance")
        if abs(np.trace(ent).real - 1.0) > EPS_NORM:
            raise ValueError(f"trace must be 1, got {np.trace(ent).real!r}")
        if hermitian_eigenvalues(ent)[0] < -EPS_EIG:
            raise ValueError("density matrix has a negative eigenvalue")
        ent = ent.copy()
        ent.setflags(write=False)
        object.__setattr__(self, "entries", ent)


def _matrix_of(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.entries
    return np.asarray(rho, dtype=complex)


def projector(vec) -> DensityMatrix:
    """Rank-one density matrix |v><v| of a normalised vector."""
    v = vec.amplitudes if isinstance(vec, PureState) else np.asarray(vec, dtype=complex)
    return DensityMatrix(v.size, np.outer(v, v.conj()))


def tensor_product(a: PureState, b: PureState) -> PureState:
    """Kronecker product of two states; ``a``'s qubits come first."""
    n = a.num_qubits + b.num_qubits
    if n > MAX_QUBITS:
        raise ValueError(f"combined state would have {n} > {MAX_QUBITS} qubits")
    return PureState(n, np.kron(a.amplitudes, b.amplitudes))


def partial_trace(state: PureState, keep: SubsetLike) -> DensityMatrix:
    """Reduced density matrix of ``state`` on the ``keep`` qubits."""
    sub = _as_subset(keep)
    n = state.num_qubits
    if any(i >= n for i in sub):
        raise ValueError(f"qubit index out of range for {n}-qubit state: {sub.indices}")
    if len(sub) == n:
        raise ValueError("keep must be a proper subset of the qubits")
    drop = tuple(i for i in range(n) if i not in sub.indices)
    tensor = state.amplitudes.reshape((2,) * n)
    mat = tensor.transpose(sub.indices + drop).reshape(2 ** len(sub), -1)
    return DensityMatrix(2 ** len(sub), mat @ mat.conj().T)


def scp(state: PureState, side: SubsetLike) -> float:
    """Singlet conversion probability across the ``side | rest`` cut.

    Equals twice the smallest eigenvalue of the single-qubit marginal.
    Only single-qubit sides are supported.
    """
    sub = _as_subset(side)
    if len(sub) != 1:
        raise ValueError("scp supports single-qubit sides only")
    evals = hermitian_eigenvalues(partial_trace(state, sub))
    return float(min(1.0, max(0.0, 2.0 * evals[0])))


def e2_pair(state: PureState, i: int, j: int) -> float:
    """Pairwise E2 of a three-qubit pure state: the smaller of the two
    single-qubit-marginal SCPs of parties ``i`` and ``j``."""
    if state.num_qubits != 3:
        raise ValueError("e2_pair is defined for three-qubit states")
    if i == j:
        raise ValueError("parties i and j must differ")
    if not (0 <= i < 3 and 0 <= j < 3):
        raise ValueError(f"party indices must be in 0..2, got ({i}, {j})")
    return min(scp(state, (i,)), scp(state, (j,)))


def wootters_concurrence(rho) -> float:
    """Two-qubit concurrence via the spin-flip spectrum.

    max(0, r1 - r2 - r3 - r4) with r_i the descending square roots of
    the eigenvalues of rho (Y x Y) rho* (Y x Y).  Computed as the
    singular values of B = sqrt(rho) (Y x Y) sqrt(rho)*, which satisfy
    B B^dag = sqrt(rho) rho~ sqrt(rho); a general eigensolver on the
    product itself loses half the digits when it is defective (any
    rank-deficient rho).
    """
    dm = rho if isinstance(rho, DensityMatrix) else DensityMatrix(4, rho)
    if dm.dim != 4:
        raise ValueError("wootters_concurrence expects a two-qubit density matrix")
    yy = np.kron(_PAULI_Y, _PAULI_Y).real
    evals, vecs = np.linalg.eigh(dm.entries)
    root = (vecs * np.sqrt(np.clip(evals, 0.0, None))) @ vecs.conj().T
    flipped = root @ yy @ root.conj()
    sv = np.linalg.svd(flipped, compute_uv=False)
    return float(max(0.0, sv[0] - sv[1] - sv[2] - sv[3]))


def three_tangle(c) -> float:
    """Three-tangle of a canonical three-qubit parameter set, as the
    product form 4*lambda0*lambda4.

    Note the normalisation: this form gives 2 on the GHZ state
    (lambda0 = lambda4 = 1/sqrt(2)), whereas the also-common squared
    form 4*lambda0^2*lambda4^2 would give 1.  The product form is kept
    as the library's convention; it still vanishes exactly on the W
    class (lambda4 = 0).
    """
    return 4.0 * float(c.lambda0) * float(c.lambda4)


def von_neumann_entropy(rho) -> float:
    """Entropy in bits; eigenvalues at or below 1e-14 contribute zero."""
    evals = hermitian_eigenvalues(_matrix_of(rho))
    evals = evals[evals > ENTROPY_EIG_FLOOR]
    return float(-np.sum(evals * np.log2(evals)))


def roi(rho) -> float:
    """Robustness of imaginarity: half the trace norm of rho - rho^T,
    with the transpose taken in the computational basis."""
    mat = _matrix_of(rho)
    evals = hermitian_eigenvalues(mat - mat.T)
    return float(0.5 * np.sum(np.abs(evals)))
