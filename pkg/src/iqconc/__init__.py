"""iqconc: entanglement concentration with real and imaginary
measurement bases, three-qubit swapping, and network percolation."""

from . import assist, bases, perc, qcore, swap
from .assist import (
    CanonicalThreeQubit,
    GeneralizedW,
    SliceFamilyParam,
    SliceState,
    assisted_yield,
    canonical_to_state,
    eoa_bound,
    optimal_real_alpha,
    optimize_qubit_basis,
)
from .bases import (
    ProjectiveBasis,
    basis_average_roi,
    basis_average_scp,
    basis_from_label,
    complex_qubit_basis,
    ghz_basis,
    gw_basis,
    hat_basis,
    pauli_x_basis,
    real_qubit_basis,
    verify_basis,
    verify_g1_slocc_decomposition,
)
from .perc import (
    build_honeycomb,
    contract_to_triangular,
    estimate_bond_threshold_honeycomb,
    estimate_site_threshold,
    phi1_percolation_threshold,
    spanning_curve,
    strategy_report,
)
from .qcore import (
    EPS_EIG,
    EPS_HERM,
    EPS_NORM,
    MAX_QUBITS,
    DensityMatrix,
    PureState,
    QubitSubset,
    e2_pair,
    hermitian_eigenvalues,
    partial_trace,
    projector,
    roi,
    scp,
    tensor_product,
    three_tangle,
    von_neumann_entropy,
    wootters_concurrence,
)
from .swap import (
    TwoQubitPhi,
    crossover_phi1,
    max_advantage,
    network_state,
    swap_measure,
    sweep_yields,
    yield_ghz_closed,
    yield_gw_closed,
)

__version__ = "0.1.0"

__all__ = [
    "EPS_EIG",
    "EPS_HERM",
    "EPS_NORM",
    "MAX_QUBITS",
    "CanonicalThreeQubit",
    "DensityMatrix",
    "GeneralizedW",
    "ProjectiveBasis",
    "PureState",
    "QubitSubset",
    "SliceFamilyParam",
    "SliceState",
    "TwoQubitPhi",
    "assist",
    "assisted_yield",
    "bases",
    "basis_average_roi",
    "basis_average_scp",
    "basis_from_label",
    "build_honeycomb",
    "canonical_to_state",
    "complex_qubit_basis",
    "contract_to_triangular",
    "crossover_phi1",
    "e2_pair",
    "eoa_bound",
    "estimate_bond_threshold_honeycomb",
    "estimate_site_threshold",
    "ghz_basis",
    "gw_basis",
    "hat_basis",
    "hermitian_eigenvalues",
    "max_advantage",
    "network_state",
    "optimal_real_alpha",
    "optimize_qubit_basis",
    "partial_trace",
    "pauli_x_basis",
    "perc",
    "phi1_percolation_threshold",
    "projector",
    "qcore",
    "real_qubit_basis",
    "roi",
    "scp",
    "spanning_curve",
    "strategy_report",
    "swap",
    "swap_measure",
    "sweep_yields",
    "tensor_product",
    "three_tangle",
    "verify_basis",
    "verify_g1_slocc_decomposition",
    "von_neumann_entropy",
    "wootters_concurrence",
    "yield_ghz_closed",
    "yield_gw_closed",
    "__version__",
]
