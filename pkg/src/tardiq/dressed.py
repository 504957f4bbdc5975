"""Qubit coupled to N harmonic oscillators: dressed states in the
single-excitation subspace.

The rotating-wave coupling conserves total excitation number, so the first
excited level lives in the (N+1)-dimensional block spanned by
{|1>|0...0>, |0>|1_j>}. All Hamiltonian entries are angular frequencies
(rad/s, hbar = 1) with the ground state |0>|0...0> shifted to energy zero;
gaps returned to callers are ordinary frequencies in Hz.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi


class ResonanceError(ValueError):
    """A zero qubit-oscillator detuning makes the perturbative series blow up."""


class DegenerateLevelError(ValueError):
    """The dressed excited level cannot be singled out unambiguously."""


@dataclass(frozen=True)
class DressedModel:
    """Qubit angular frequency, oscillator angular frequencies, shared coupling.

    All values in rad/s. The same coupling g applies to every oscillator.
    Resonant models (some omega_j == omega_q) are legal for exact
    diagonalization; the perturbative operations reject them.
    """

    omega_q: float
    omegas: tuple[float, ...]
    g: float

    def __post_init__(self):
        omegas = tuple(float(w) for w in np.atleast_1d(np.asarray(self.omegas, dtype=float)))
        if len(omegas) < 1:
            raise ValueError("need at least one oscillator")
        if self.omega_q <= 0 or any(w <= 0 for w in omegas):
            raise ValueError("all frequencies must be positive")
        if self.g < 0:
            raise ValueError("coupling must be nonnegative")
        object.__setattr__(self, "omega_q", float(self.omega_q))
        object.__setattr__(self, "omegas", omegas)
        object.__setattr__(self, "g", float(self.g))

    @property
    def n_oscillators(self) -> int:
        return len(self.omegas)

    def detunings(self) -> np.ndarray:
        """delta_j = omega_q - omega_j (rad/s)."""
        return self.omega_q - np.asarray(self.omegas)

    def _require_off_resonance(self) -> np.ndarray:
        deltas = self.detunings()
        if np.any(deltas == 0.0):
            j = int(np.argmin(np.abs(deltas)))
            raise ResonanceError(
                f"oscillator {j} is resonant with the qubit (zero detuning); "
                "the perturbative expressions are undefined there"
            )
        return deltas


@dataclass(frozen=True)
class DressedState:
    """Mixing angle, oscillator excitation amplitudes, and energy gap.

    The dressed excited state is cos(theta/2)|1>|0...0> plus
    sin(theta/2)|0>|psi1> with |psi1> = sum_j c_j |0..1_j..0>.
    """

    theta: float
    psi1_coeffs: np.ndarray
    energy_gap_hz: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError(f"theta {self.theta} outside [0, pi]")
        c = np.asarray(self.psi1_coeffs, dtype=complex).copy()
        if abs(np.linalg.norm(c) - 1.0) > 1e-10:
            raise ValueError("psi1 coefficients must be normalized")
        c.flags.writeable = False
        object.__setattr__(self, "psi1_coeffs", c)

    def reconstruct(self) -> np.ndarray:
        """Full (N+1)-vector in the single-excitation basis."""
        c = np.asarray(self.psi1_coeffs, dtype=complex)
        return np.concatenate(([np.cos(self.theta / 2)], np.sin(self.theta / 2) * c))


def build_single_excitation_hamiltonian(model: DressedModel) -> np.ndarray:
    """(N+1)x(N+1) real symmetric block in the basis {|1,0...0>, |0,1_j>}.

    Diagonal carries the bare frequencies [omega_q, omega_1, ...]; the
    rotating-wave coupling contributes g/2 between the qubit row and each
    oscillator row, and nothing between oscillators.
    """
    n = model.n_oscillators
    h = np.zeros((n + 1, n + 1))
    h[0, 0] = model.omega_q
    h[1:, 0] = h[0, 1:] = model.g / 2.0
    h[np.arange(1, n + 1), np.arange(1, n + 1)] = model.omegas
    return h


def perturbative_gap(model: DressedModel) -> float:
    """Second-order frequency gap to the ground state, in Hz:

        (1/2pi) * (omega_q + (g^2/4) * sum_j 1/(omega_q - omega_j))
    """
    deltas = model._require_off_resonance()
    return (model.omega_q + (model.g**2 / 4.0) * np.sum(1.0 / deltas)) / TWO_PI


def exact_gap(model: DressedModel) -> float:
    """First excited level from exact diagonalization, in Hz.

    The ground state |0>|0...0> sits at energy zero for any coupling, so the
    gap is the lowest eigenvalue of the single-excitation block.
    """
    h = build_single_excitation_hamiltonian(model)
    return float(np.linalg.eigvalsh(h)[0]) / TWO_PI


def dressed_excited_state(model: DressedModel, degeneracy_rtol: float = 1e-9) -> DressedState:
    """Extract theta and the oscillator amplitudes c_j from the exact
    eigenvector with the largest overlap with |1>|0...0>.

    The global phase is fixed so the qubit amplitude cos(theta/2) is real and
    nonnegative; the c_j are the remaining amplitudes renormalized. When two
    eigenvectors overlap the qubit state equally (symmetric resonance), the
    higher-energy branch is chosen: it continues the qubit branch from
    positive detuning. If the selected eigenvalue is degenerate with another
    level the eigenvector itself is arbitrary, so we refuse.
    """
    h = build_single_excitation_hamiltonian(model)
    vals, vecs = np.linalg.eigh(h)
    overlaps = np.abs(vecs[0, :])
    best = np.flatnonzero(overlaps >= overlaps.max() - 1e-12)
    idx = int(best[-1])  # eigh sorts ascending, so last = highest energy

    gap_tol = degeneracy_rtol * model.omega_q
    others = np.delete(vals, idx)
    if others.size and np.min(np.abs(others - vals[idx])) < gap_tol:
        raise DegenerateLevelError(
            "the selected single-excitation level is degenerate within "
            f"{degeneracy_rtol:g}*omega_q; the dressed state is not unique"
        )

    vec = vecs[:, idx].astype(complex)
    phase = vec[0] / abs(vec[0]) if abs(vec[0]) > 0 else 1.0
    vec = vec / phase
    cos_half = float(np.real(vec[0]))
    cos_half = min(max(cos_half, 0.0), 1.0)
    theta = 2.0 * np.arccos(cos_half)

    bath = vec[1:]
    bath_norm = np.linalg.norm(bath)
    if bath_norm > 1e-12:
        coeffs = bath / bath_norm
        # the split sin(theta/2)|psi1> leaves the overall phase of the c_j
        # conventional; make the first nonzero coefficient real positive
        lead = coeffs[np.flatnonzero(np.abs(coeffs) > 1e-12)[0]]
        coeffs = coeffs * (abs(lead) / lead)
    else:
        # g -> 0 limit direction: first-order theory gives c_j proportional
        # to 1/delta_j. Requires off-resonant detunings, which is automatic
        # here because on resonance the bath amplitude cannot vanish.
        inv = 1.0 / model._require_off_resonance()
        inv = inv * np.sign(inv[np.flatnonzero(inv)[0]])
        coeffs = (inv / np.linalg.norm(inv)).astype(complex)
        theta = 0.0

    return DressedState(theta=theta, psi1_coeffs=coeffs, energy_gap_hz=exact_gap(model))


def coupling_from_shift(observed_shift_hz: float, model_template: DressedModel) -> float:
    """Coupling g (rad/s) whose perturbative gap shift matches the observation.

    Solves perturbative_gap(g) - omega_q/2pi = observed_shift_hz for g by
    bisection on [0, 0.5 * min|delta_j|] to 1e-9 relative tolerance. The
    template's own g is ignored.
    """
    deltas = model_template._require_off_resonance()
    sum_inv = float(np.sum(1.0 / deltas))
    shift = float(observed_shift_hz)

    if shift == 0.0:
        return 0.0
    if sum_inv == 0.0 or np.sign(shift) != np.sign(sum_inv):
        raise ValueError(
            f"shift {shift:g} Hz has the wrong sign for detunings with "
            f"sum_j 1/delta_j = {sum_inv:g}; no real coupling reproduces it"
        )

    def shift_at(g: float) -> float:
        return (g**2 / 4.0) * sum_inv / TWO_PI

    g_max = 0.5 * float(np.min(np.abs(deltas)))
    if abs(shift_at(g_max)) < abs(shift):
        raise ValueError(
            f"shift {shift:g} Hz exceeds what coupling up to 0.5*min|delta| "
            f"can produce ({shift_at(g_max):g} Hz)"
        )

    lo, hi = 0.0, g_max
    target = abs(shift)
    while hi - lo > 1e-9 * g_max:
        mid = (lo + hi) / 2.0
        if abs(shift_at(mid)) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def theta_from_shift(observed_shift_hz: float, model_template: DressedModel) -> float:
    """Mixing angle implied by an observed gap shift relative to the bare qubit.

    Monotone in |shift|: larger shifts need larger couplings and therefore
    larger theta.
    """
    g_star = coupling_from_shift(observed_shift_hz, model_template)
    if g_star == 0.0:
        return 0.0
    fitted = DressedModel(model_template.omega_q, model_template.omegas, g_star)
    return dressed_excited_state(fitted).theta
