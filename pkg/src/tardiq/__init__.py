"""Numerics for a superconducting qubit coupled to a tardigrade: dressed
states, synthetic two-qubit tomography with maximum-likelihood
reconstruction, tripartite expansion, negativity/pi-tangle entanglement
measures, and the transmon dielectric-shift model."""

from .dielectric import (
    PermittivityScan,
    TransmonParams,
    fit_participation,
    qubit_frequency,
    shifted_frequency,
    transmon_levels,
)
from .dressed import (
    DressedModel,
    DressedState,
    build_single_excitation_hamiltonian,
    dressed_excited_state,
    exact_gap,
    perturbative_gap,
    theta_from_shift,
)
from .entanglement import (
    EntanglementReport,
    entanglement_report,
    negativity,
    pi_tangle,
    theta_sweep,
)
from .hilbert import (
    DensityMatrix,
    eigh,
    matrix_sqrt_psd,
    partial_trace,
    partial_transpose,
    tensor,
    trace_norm,
)
from .tomography import (
    MeasurementSetting,
    MleResult,
    TomographyRecord,
    fidelity,
    ideal_state,
    mle_reconstruct,
    simulate_counts,
)
from .tripartite import TripartiteState, expand, verify_zero_pattern

__version__ = "0.1.0"

__all__ = [
    "DensityMatrix",
    "DressedModel",
    "DressedState",
    "EntanglementReport",
    "MeasurementSetting",
    "MleResult",
    "PermittivityScan",
    "TomographyRecord",
    "TransmonParams",
    "TripartiteState",
    "build_single_excitation_hamiltonian",
    "dressed_excited_state",
    "eigh",
    "entanglement_report",
    "exact_gap",
    "expand",
    "fidelity",
    "fit_participation",
    "ideal_state",
    "matrix_sqrt_psd",
    "mle_reconstruct",
    "negativity",
    "partial_trace",
    "partial_transpose",
    "perturbative_gap",
    "pi_tangle",
    "qubit_frequency",
    "shifted_frequency",
    "simulate_counts",
    "tensor",
    "theta_from_shift",
    "theta_sweep",
    "trace_norm",
    "transmon_levels",
    "verify_zero_pattern",
]
