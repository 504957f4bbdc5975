import numpy as np
import pytest

from tardiq.dressed import (
    DegenerateLevelError,
    DressedModel,
    ResonanceError,
    build_single_excitation_hamiltonian,
    coupling_from_shift,
    dressed_excited_state,
    exact_gap,
    perturbative_gap,
    theta_from_shift,
)

TWO_PI = 2 * np.pi

F_Q = 3.271e9
F_OSC = 5.0e9
F_G = 1e8


def model(f_q=F_Q, oscs=(F_OSC,), g=F_G) -> DressedModel:
    return DressedModel(TWO_PI * f_q, tuple(TWO_PI * f for f in oscs), TWO_PI * g)


def random_weak_model(rng: np.random.Generator, n_max: int = 8) -> DressedModel:
    """Random model with g at most 5% of the smallest detuning.

    All oscillators sit above the qubit, the regime where the perturbed
    qubit level is the first excited state and the gap formulas compare
    like for like (fast charges shift the gap down).
    """
    n = int(rng.integers(1, n_max + 1))
    f_q = rng.uniform(2.5e9, 6e9)
    offsets = rng.uniform(0.3e9, 2.5e9, size=n)
    f_osc = f_q + offsets
    g = 0.05 * np.min(offsets) * rng.uniform(0.3, 1.0)
    return model(f_q, tuple(f_osc), g)


class TestHamiltonian:
    def test_resonant_jc_block(self):
        h = build_single_excitation_hamiltonian(model(5e9, (5e9,), 1e8))
        w = TWO_PI * 5e9
        g = TWO_PI * 1e8
        np.testing.assert_allclose(h, [[w, g / 2], [g / 2, w]])

    def test_decoupled_is_diagonal(self):
        h = build_single_excitation_hamiltonian(model(g=0.0, oscs=(4e9, 5e9)))
        np.testing.assert_allclose(h, np.diag(TWO_PI * np.array([F_Q, 4e9, 5e9])))

    def test_symmetric_with_bath_uncoupled(self):
        rng = np.random.default_rng(21)
        m = random_weak_model(rng)
        h = build_single_excitation_hamiltonian(m)
        assert np.array_equal(h, h.T)
        # no oscillator-oscillator coupling
        assert np.all(h[1:, 1:] == np.diag(np.diag(h[1:, 1:])))

    def test_against_full_space_construction(self):
        # oracle: assemble -w_q/2 sigma_z + sum_j w_j n_j plus the
        # rotating-wave coupling on the full qubit x oscillators space
        # (Fock levels {0,1} are exact in the single-excitation sector),
        # shift the ground state to zero, and read off the block
        m = model(oscs=(4.1e9, 5.7e9), g=2e8)
        n = m.n_oscillators
        dim = 2 ** (n + 1)

        sz = np.diag([1.0, -1.0])
        sp = np.array([[0.0, 0.0], [1.0, 0.0]])  # |1><0|
        lower = np.array([[0.0, 1.0], [0.0, 0.0]])  # two-level a_j
        eye = np.eye(2)

        def site(op, k):  # qubit is factor 0, oscillator j is factor j+1
            mats = [eye] * (n + 1)
            mats[k] = op
            out = mats[0]
            for mm in mats[1:]:
                out = np.kron(out, mm)
            return out

        h_full = -0.5 * m.omega_q * site(sz, 0)
        for j, w in enumerate(m.omegas):
            h_full += w * site(lower.T @ lower, j + 1)
            h_full += (m.g / 2) * (
                site(lower.T, j + 1) @ site(sp.T, 0) + site(lower, j + 1) @ site(sp, 0)
            )
        h_full += 0.5 * m.omega_q * np.eye(dim)

        # the ground state |0>|0...0> is untouched for any coupling
        ground = 0  # all factors in their ground state
        assert h_full[ground, ground] == 0.0
        assert np.all(h_full[ground, 1:] == 0.0)

        # single-excitation basis indices: qubit excited, or oscillator j excited
        qubit_excited = 2**n
        osc_excited = [2 ** (n - 1 - j) for j in range(n)]
        idx = [qubit_excited] + osc_excited
        block = h_full[np.ix_(idx, idx)]
        np.testing.assert_allclose(
            block, build_single_excitation_hamiltonian(m), rtol=1e-15, atol=1e-6
        )


class TestGaps:
    def test_zero_coupling(self):
        assert perturbative_gap(model(g=0.0)) == pytest.approx(F_Q, abs=1e-6)
        assert exact_gap(model(g=0.0, oscs=(4e9, 5e9))) == pytest.approx(F_Q, rel=1e-12)

    def test_single_oscillator_formula(self):
        # independent arithmetic: f_q + g^2 / (4 * (f_q - f_osc)) in Hz
        expected = F_Q + F_G**2 / (4 * (F_Q - F_OSC))
        got = perturbative_gap(model())
        assert got == pytest.approx(expected, rel=1e-12)
        # the shift is a negative ~1.4 MHz
        assert -1.5e6 < got - F_Q < -1.4e6
        assert got == pytest.approx(exact_gap(model()), rel=1e-4)

    def test_fast_oscillators_lower_the_gap(self):
        m = model(oscs=(4.5e9, 5e9, 6e9))
        assert perturbative_gap(m) < F_Q

    def test_resonance_rejected(self):
        with pytest.raises(ResonanceError):
            perturbative_gap(model(oscs=(F_Q,)))

    def test_exact_gap_resonant(self):
        assert exact_gap(model(5e9, (5e9,), 1e8)) == pytest.approx(5e9 - 1e8 / 2, rel=1e-12)

    def test_exact_gap_decoupled_is_minimum_level(self):
        assert exact_gap(model(5e9, (4e9, 6e9), 0.0)) == pytest.approx(4e9, rel=1e-12)

    def test_fourth_order_error_scaling(self):
        m_full = model()
        m_half = model(g=F_G / 2)
        err_full = abs(perturbative_gap(m_full) - exact_gap(m_full))
        err_half = abs(perturbative_gap(m_half) - exact_gap(m_half))
        assert err_full / err_half >= 15.0

    def test_weak_coupling_agreement(self):
        rng = np.random.default_rng(22)
        for _ in range(20):
            m = random_weak_model(rng)
            pg, eg = perturbative_gap(m), exact_gap(m)
            assert abs(pg - eg) / eg < 1e-4


class TestDressedState:
    def test_decoupled(self):
        st = dressed_excited_state(model(g=0.0))
        assert st.theta == 0.0
        assert st.energy_gap_hz == pytest.approx(F_Q, rel=1e-12)
        vec = st.reconstruct()
        np.testing.assert_allclose(vec, [1.0, 0.0], atol=1e-12)

    def test_resonant_equal_superposition(self):
        st = dressed_excited_state(model(5e9, (5e9,), 1e8))
        assert st.theta == pytest.approx(np.pi / 2, abs=1e-10)
        np.testing.assert_allclose(st.psi1_coeffs, [1.0], atol=1e-12)

    def test_identical_oscillators_bright_mode(self):
        # oracle: two identical oscillators reduce to one bright mode with
        # coupling g*sqrt(2), i.e. a 2x2 block diag(wq, w) with off-diag
        # sqrt(2)*g/2; the dark mode stays dark.
        m = model(oscs=(F_OSC, F_OSC))
        st = dressed_excited_state(m)
        np.testing.assert_allclose(st.psi1_coeffs, [1 / np.sqrt(2)] * 2, atol=1e-12)

        wq, w, g = TWO_PI * F_Q, TWO_PI * F_OSC, TWO_PI * F_G
        h2 = np.array([[wq, np.sqrt(2) * g / 2], [np.sqrt(2) * g / 2, w]])
        vals, vecs = np.linalg.eigh(h2)
        qubit_branch = int(np.argmax(np.abs(vecs[0, :])))
        cos_half_oracle = abs(vecs[0, qubit_branch])
        assert np.cos(st.theta / 2) == pytest.approx(cos_half_oracle, abs=1e-12)

    def test_reconstructed_state_normalized(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            st = dressed_excited_state(random_weak_model(rng))
            assert abs(np.linalg.norm(st.reconstruct()) - 1.0) < 1e-10
            assert abs(np.linalg.norm(st.psi1_coeffs) - 1.0) < 1e-10

    def test_small_g_perturbative_cos(self):
        # cos(theta/2) ~ 1 - (g^2/8) sum 1/delta^2, error O(g^4)
        m = model(oscs=(4.2e9, 5.1e9), g=1e7)
        st = dressed_excited_state(m)
        deltas = m.detunings()
        predicted = 1 - (m.g**2 / 8) * np.sum(1 / deltas**2)
        err = abs(np.cos(st.theta / 2) - predicted)
        m2 = model(oscs=(4.2e9, 5.1e9), g=5e6)
        st2 = dressed_excited_state(m2)
        predicted2 = 1 - (m2.g**2 / 8) * np.sum(1 / m2.detunings() ** 2)
        err2 = abs(np.cos(st2.theta / 2) - predicted2)
        assert err2 < err / 10  # at least 4th-order shrinkage

    def test_small_g_coefficients_track_inverse_detuning(self):
        m = model(oscs=(4.2e9, 5.1e9, 6.3e9), g=1e6)
        st = dressed_excited_state(m)
        direction = 1 / m.detunings()
        direction = direction * np.sign(direction[0])
        direction /= np.linalg.norm(direction)
        np.testing.assert_allclose(np.real(st.psi1_coeffs), direction, atol=1e-4)

    def test_degenerate_selection_refused(self):
        # decoupled resonant model: qubit level exactly degenerate with the
        # oscillator level, so the eigenvector choice is arbitrary
        with pytest.raises(DegenerateLevelError):
            dressed_excited_state(DressedModel(TWO_PI * 5e9, (TWO_PI * 5e9,), 0.0))


class TestThetaFromShift:
    def test_zero_shift(self):
        assert theta_from_shift(0.0, model()) == 0.0

    def test_round_trip_recovers_coupling(self):
        m = model(oscs=(5.0e9, 4.2e9), g=8e7)
        shift = perturbative_gap(m) - F_Q
        g_rec = coupling_from_shift(shift, model(oscs=(5.0e9, 4.2e9), g=0.0))
        assert g_rec == pytest.approx(m.g, rel=1e-6)

    def test_reference_shift_gives_positive_theta(self):
        theta = theta_from_shift(-8e6, model())
        assert 0 < theta < np.pi / 2

    def test_monotone_in_shift_magnitude(self):
        thetas = [theta_from_shift(s, model()) for s in (-1e6, -4e6, -8e6, -12e6)]
        assert all(b > a for a, b in zip(thetas, thetas[1:]))

    def test_sign_mismatch_rejected(self):
        # all oscillators above the qubit: only downward shifts are possible
        with pytest.raises(ValueError):
            theta_from_shift(+8e6, model())

    def test_unreachable_shift_rejected(self):
        with pytest.raises(ValueError):
            theta_from_shift(-1e9, model())


class TestModelValidation:
    def test_positive_frequencies_required(self):
        with pytest.raises(ValueError):
            DressedModel(-1.0, (TWO_PI * 5e9,), 0.0)
        with pytest.raises(ValueError):
            DressedModel(TWO_PI * 5e9, (), 0.0)
        with pytest.raises(ValueError):
            DressedModel(TWO_PI * 5e9, (TWO_PI * 4e9,), -1.0)
