"""Synthetic two-qubit state tomography and maximum-likelihood reconstruction.

The two "qubits" are qubit A and the dressed qubit-B/tardigrade pair, whose
joint ground/excited states g,e act as computational basis states. Basis
ordering for all 4x4 objects is {|0g>, |0e>, |1g>, |1e>}.

A tomography experiment applies one of four local gates to each qubit and
then measures both in the computational basis; the 16 gate combinations are
informationally complete. Reconstruction maximizes a Poissonian likelihood
over a Cholesky-style parameterization, which keeps the estimate physical
(Hermitian, PSD, unit trace) no matter how noisy the counts are.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.optimize import minimize

from .hilbert import DensityMatrix, as_ket, matrix_sqrt_psd, tensor

PROBABILITY_FLOOR = 1e-12

GATE_NAMES = ("I", "X90", "Y90", "X180")

_SQ2 = np.sqrt(2.0)
GATES: dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    # rotations exp(-i*angle/2 * axis)
    "X90": np.array([[1, -1j], [-1j, 1]], dtype=complex) / _SQ2,
    "Y90": np.array([[1, -1], [1, 1]], dtype=complex) / _SQ2,
    "X180": np.array([[0, -1j], [-1j, 0]], dtype=complex),
}

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / _SQ2
# entangling gate of the preparation circuit: inverts the dressed B-T qubit
# when qubit A is in its ground state, producing the anti-correlated pair
CNOT_ON_ZERO = np.array(
    [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], dtype=complex
)


@dataclass(frozen=True)
class MeasurementSetting:
    """One local gate per qubit; measurement is computational after rotation."""

    gate_a: str
    gate_b: str

    def __post_init__(self):
        for name in (self.gate_a, self.gate_b):
            if name not in GATES:
                raise ValueError(f"unknown gate {name!r}; expected one of {GATE_NAMES}")

    def unitary(self) -> np.ndarray:
        return tensor(GATES[self.gate_a], GATES[self.gate_b])


def standard_settings() -> tuple[MeasurementSetting, ...]:
    """The 16 settings: full Cartesian product of the 4 gates per qubit."""
    return tuple(
        MeasurementSetting(a, b) for a, b in product(GATE_NAMES, GATE_NAMES)
    )


@dataclass(frozen=True)
class TomographyRecord:
    """Counts over outcomes {00,01,10,11} for each measurement setting.

    ``counts[v]`` sums to ``shots`` for every setting v. Entries are floats
    so that expected-value (infinite-statistics) records can be represented;
    sampled records carry whole numbers.
    """

    settings: tuple[MeasurementSetting, ...]
    counts: np.ndarray
    shots: int

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=float)
        if counts.shape != (len(self.settings), 4):
            raise ValueError(f"counts shape {counts.shape} does not match settings")
        if np.any(counts < 0):
            raise ValueError("counts must be nonnegative")
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        sums = counts.sum(axis=1)
        if np.any(np.abs(sums - self.shots) > 1e-6 * self.shots):
            raise ValueError("each setting's counts must sum to shots")
        counts = counts.copy()
        counts.flags.writeable = False
        object.__setattr__(self, "settings", tuple(self.settings))
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "shots", int(self.shots))


@dataclass(frozen=True)
class MleResult:
    rho: DensityMatrix
    log_likelihood: float
    iterations: int
    converged: bool
    objective_history: tuple[float, ...] = ()


def ideal_state() -> np.ndarray:
    """State prepared by the circuit: Hadamard on A, then the entangling gate.

    Returns (|0e> + |1g>)/sqrt(2), amplitudes (0, 1/sqrt(2), 1/sqrt(2), 0).
    """
    psi = np.zeros(4, dtype=complex)
    psi[0] = 1.0  # |0g>
    psi = CNOT_ON_ZERO @ (tensor(HADAMARD, np.eye(2, dtype=complex)) @ psi)
    return as_ket(psi)


def ideal_density_matrix() -> DensityMatrix:
    psi = ideal_state()
    return DensityMatrix((2, 2), np.outer(psi, psi.conj()))


def measurement_operators(
    settings: tuple[MeasurementSetting, ...] | None = None,
) -> np.ndarray:
    """POVM elements G^dag |k><k| G stacked as shape (4*n_settings, 4, 4)."""
    if settings is None:
        settings = standard_settings()
    ops = np.empty((4 * len(settings), 4, 4), dtype=complex)
    for v, setting in enumerate(settings):
        g = setting.unitary()
        for k in range(4):
            ops[4 * v + k] = np.outer(g[k, :].conj(), g[k, :])
    return ops


def setting_probabilities(rho: np.ndarray, setting: MeasurementSetting) -> np.ndarray:
    """Outcome probabilities p_k = <k| G rho G^dag |k> for one setting."""
    g = setting.unitary()
    p = np.real(np.diag(g @ rho @ g.conj().T))
    return np.clip(p, 0.0, None)


def _depolarize(rho: np.ndarray, noise: float) -> np.ndarray:
    if not 0.0 <= noise <= 1.0:
        raise ValueError("noise must lie in [0, 1]")
    return (1.0 - noise) * rho + noise * np.eye(4) / 4.0


def simulate_counts(
    rho: DensityMatrix, shots: int, seed: int, noise: float = 0.0
) -> TomographyRecord:
    """Sample multinomial counts for all 16 settings.

    Deterministic for a fixed (rho, shots, seed, noise): one Generator seeded
    once drives the per-setting draws in order.
    """
    if rho.dims != (2, 2):
        raise ValueError("simulate_counts expects a two-qubit state")
    if shots < 1:
        raise ValueError("shots must be >= 1")
    mixed = _depolarize(rho.matrix, noise)
    settings = standard_settings()
    rng = np.random.default_rng(seed)
    counts = np.empty((16, 4))
    for v, setting in enumerate(settings):
        p = setting_probabilities(mixed, setting)
        counts[v] = rng.multinomial(shots, p / p.sum())
    return TomographyRecord(settings=settings, counts=counts, shots=shots)


def expected_counts(
    rho: DensityMatrix, shots: int, noise: float = 0.0
) -> TomographyRecord:
    """Infinite-statistics record: counts are shots * exact probabilities."""
    if rho.dims != (2, 2):
        raise ValueError("expected_counts expects a two-qubit state")
    mixed = _depolarize(rho.matrix, noise)
    settings = standard_settings()
    counts = np.empty((16, 4))
    for v, setting in enumerate(settings):
        p = setting_probabilities(mixed, setting)
        counts[v] = shots * p / p.sum()
    return TomographyRecord(settings=settings, counts=counts, shots=shots)


# Cholesky-style parameterization: 16 real parameters for a 4x4 state.
# t[0:4] are the real diagonal of the lower-triangular T; the strictly lower
# entries follow row-major as (re, im) pairs.
_LOWER_INDICES = [(i, j) for i in range(4) for j in range(i)]


def _t_matrix(t: np.ndarray) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    m[np.arange(4), np.arange(4)] = t[:4]
    for k, (i, j) in enumerate(_LOWER_INDICES):
        m[i, j] = t[4 + 2 * k] + 1j * t[5 + 2 * k]
    return m


def _rho_from_params(t: np.ndarray) -> np.ndarray:
    m = _t_matrix(t)
    s = m.conj().T @ m
    return s / np.real(np.trace(s))


def _pack_objective(record: TomographyRecord):
    """Poissonian negative log-likelihood and its analytic gradient."""
    ops = measurement_operators(record.settings)
    # p = A @ vec(rho) with A rows the transposed POVM elements
    a_flat = ops.transpose(0, 2, 1).reshape(-1, 16)
    n = record.counts.reshape(-1)
    shots = float(record.shots)

    def fun_and_grad(t: np.ndarray) -> tuple[float, np.ndarray]:
        tm = _t_matrix(t)
        s = tm.conj().T @ tm
        tau = np.real(np.trace(s))
        rho = s / tau
        p = np.clip(np.real(a_flat @ rho.reshape(16)), PROBABILITY_FLOOR, None)
        nll = float(np.sum(shots * p - n * np.log(shots * p)))

        w = shots - n / p
        w_mat = (w[:, None, None] * ops).sum(axis=0)
        # K = (W - Tr(W rho) I)/tau; the gradient couples through D = T K
        trace_w_rho = np.real(np.trace(w_mat @ rho))
        k_mat = (w_mat - trace_w_rho * np.eye(4)) / tau
        d = tm @ k_mat
        grad = np.empty(16)
        grad[:4] = 2.0 * np.real(np.diag(d))
        for k, (i, j) in enumerate(_LOWER_INDICES):
            grad[4 + 2 * k] = 2.0 * np.real(d[i, j])
            grad[5 + 2 * k] = 2.0 * np.imag(d[i, j])
        return nll, grad

    return fun_and_grad


def mle_reconstruct(
    record: TomographyRecord,
    restarts: int = 3,
    max_iterations: int = 10000,
) -> MleResult:
    """Maximum-likelihood density matrix for a tomography record.

    Minimizes sum_vk [shots*p_vk - n_vk*log(shots*p_vk)] over the Cholesky
    parameters with L-BFGS-B, starting from the maximally mixed state
    (T = I/2) plus ``restarts`` perturbed starts to hedge against local
    minima; the best run wins. The returned state is physical by
    construction regardless of how inconsistent the counts are.
    """
    fun_and_grad = _pack_objective(record)
    t0 = np.zeros(16)
    t0[:4] = 0.5

    rng = np.random.default_rng(7)  # fixed: reconstruction is deterministic
    starts = [t0] + [t0 + rng.normal(scale=0.05, size=16) for _ in range(restarts)]

    best = None
    best_history: list[float] = []
    for start in starts:
        history: list[float] = [fun_and_grad(start)[0]]

        res = minimize(
            fun_and_grad,
            start,
            jac=True,
            method="L-BFGS-B",
            callback=lambda xk, h=history: h.append(fun_and_grad(xk)[0]),
            options={"maxiter": max_iterations, "ftol": 1e-15, "gtol": 1e-12},
        )
        if best is None or res.fun < best.fun:
            best = res
            best_history = history

    rho = _rho_from_params(best.x)
    rho = (rho + rho.conj().T) / 2
    return MleResult(
        rho=DensityMatrix((2, 2), rho),
        log_likelihood=-float(best.fun),
        iterations=int(best.nit),
        converged=bool(best.success),
        objective_history=tuple(best_history),
    )


def _as_matrix(state: DensityMatrix | np.ndarray) -> np.ndarray:
    if isinstance(state, DensityMatrix):
        return state.matrix
    return np.asarray(state, dtype=complex)


def fidelity(rho: DensityMatrix | np.ndarray, sigma: DensityMatrix | np.ndarray) -> float:
    """Jozsa fidelity F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, in [0, 1]."""
    r = _as_matrix(rho)
    s = _as_matrix(sigma)
    if r.shape != s.shape:
        raise ValueError(f"dimension mismatch: {r.shape} vs {s.shape}")
    root = matrix_sqrt_psd(r)
    inner = root @ s @ root
    inner = (inner + inner.conj().T) / 2
    val = float(np.real(np.trace(matrix_sqrt_psd(inner)))) ** 2
    return min(max(val, 0.0), 1.0)
