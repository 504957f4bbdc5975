import numpy as np
import pytest

from tardiq.hilbert import DensityMatrix, random_density_matrix, random_unitary, trace_distance
from tardiq.tomography import (
    GATE_NAMES,
    MeasurementSetting,
    TomographyRecord,
    _pack_objective,
    expected_counts,
    fidelity,
    ideal_density_matrix,
    ideal_state,
    measurement_operators,
    mle_reconstruct,
    setting_probabilities,
    simulate_counts,
    standard_settings,
)

from oracles import bell_state, projector


def dm(mat) -> DensityMatrix:
    return DensityMatrix((2, 2), mat)


class TestIdealState:
    def test_amplitudes(self):
        psi = ideal_state()
        np.testing.assert_allclose(psi, [0, 1 / np.sqrt(2), 1 / np.sqrt(2), 0], atol=1e-15)

    def test_norm(self):
        assert np.linalg.norm(ideal_state()) == pytest.approx(1.0, abs=1e-15)

    def test_reduced_state_on_a_maximally_mixed(self):
        rho = ideal_density_matrix().matrix.reshape(2, 2, 2, 2)
        reduced = np.trace(rho, axis1=1, axis2=3)
        np.testing.assert_allclose(reduced, np.eye(2) / 2, atol=1e-15)


class TestSettings:
    def test_sixteen_settings_full_product(self):
        settings = standard_settings()
        assert len(settings) == 16
        assert len(set(settings)) == 16
        assert {(s.gate_a, s.gate_b) for s in settings} == {
            (a, b) for a in GATE_NAMES for b in GATE_NAMES
        }

    def test_gates_unitary(self):
        for s in standard_settings():
            u = s.unitary()
            np.testing.assert_allclose(u @ u.conj().T, np.eye(4), atol=1e-14)

    def test_unknown_gate_rejected(self):
        with pytest.raises(ValueError):
            MeasurementSetting("I", "Z45")

    def test_informationally_complete(self):
        # the 64 POVM elements must span the 16-dim two-qubit operator space
        ops = measurement_operators()
        assert np.linalg.matrix_rank(ops.reshape(64, 16)) == 16

    def test_povm_completeness_per_setting(self):
        ops = measurement_operators()
        for v in range(16):
            np.testing.assert_allclose(
                ops[4 * v : 4 * v + 4].sum(axis=0), np.eye(4), atol=1e-14
            )


class TestSimulateCounts:
    def test_computational_eigenstate(self):
        rho00 = np.zeros((4, 4), dtype=complex)
        rho00[0, 0] = 1.0
        rec = simulate_counts(dm(rho00), shots=500, seed=3)
        identity_row = rec.settings.index(MeasurementSetting("I", "I"))
        np.testing.assert_array_equal(rec.counts[identity_row], [500, 0, 0, 0])

    def test_maximally_mixed_within_5_sigma(self):
        shots = 40000
        rec = simulate_counts(dm(np.eye(4) / 4), shots=shots, seed=4)
        sigma = np.sqrt(shots * 0.25 * 0.75)
        assert np.all(np.abs(rec.counts - shots / 4) <= 5 * sigma)

    def test_bell_identity_setting_outcomes(self):
        # oracle: |Phi+> measured without rotations populates only 00 and 11
        rho = dm(projector(bell_state()))
        probs = setting_probabilities(rho.matrix, MeasurementSetting("I", "I"))
        np.testing.assert_allclose(probs, [0.5, 0, 0, 0.5], atol=1e-14)
        rec = simulate_counts(rho, shots=2000, seed=5)
        identity_row = rec.settings.index(MeasurementSetting("I", "I"))
        counts = rec.counts[identity_row]
        assert counts[1] == 0 and counts[2] == 0
        assert counts[0] + counts[3] == 2000

    def test_reproducible(self):
        rho = ideal_density_matrix()
        a = simulate_counts(rho, 1000, seed=42, noise=0.1)
        b = simulate_counts(rho, 1000, seed=42, noise=0.1)
        assert np.array_equal(a.counts, b.counts)
        c = simulate_counts(rho, 1000, seed=43, noise=0.1)
        assert not np.array_equal(a.counts, c.counts)

    def test_record_validation(self):
        settings = standard_settings()
        bad = np.full((16, 4), 25.0)
        bad[3, 0] += 1  # row no longer sums to shots
        with pytest.raises(ValueError):
            TomographyRecord(settings=settings, counts=bad, shots=100)
        with pytest.raises(ValueError):
            TomographyRecord(settings=settings, counts=-np.full((16, 4), 25.0), shots=100)


class TestMle:
    def test_gradient_matches_finite_differences(self):
        rec = expected_counts(ideal_density_matrix(), 1000)
        fun = _pack_objective(rec)
        rng = np.random.default_rng(6)
        t = np.concatenate([rng.uniform(0.3, 0.7, 4), rng.normal(0, 0.2, 12)])
        _, grad = fun(t)
        h = 1e-6
        for i in range(16):
            e = np.zeros(16)
            e[i] = h
            numeric = (fun(t + e)[0] - fun(t - e)[0]) / (2 * h)
            assert numeric == pytest.approx(grad[i], rel=1e-5, abs=1e-3)

    def test_exact_probabilities_recover_bell(self):
        rec = expected_counts(ideal_density_matrix(), 10000)
        res = mle_reconstruct(rec)
        assert res.converged
        assert fidelity(res.rho, ideal_density_matrix()) >= 1 - 1e-6

    def test_exact_probabilities_recover_random_states(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            true = random_density_matrix((2, 2), rng)
            res = mle_reconstruct(expected_counts(true, 10000))
            assert fidelity(res.rho, true) >= 1 - 1e-5

    def test_maximally_mixed_sampled(self):
        rec = simulate_counts(dm(np.eye(4) / 4), shots=100000, seed=8)
        res = mle_reconstruct(rec)
        assert trace_distance(res.rho.matrix, np.eye(4) / 4) < 0.02

    def test_inconsistent_counts_still_physical(self):
        # every setting claims all shots in outcome 00: no state does this,
        # yet the estimate must stay a valid density matrix
        counts = np.zeros((16, 4))
        counts[:, 0] = 100
        rec = TomographyRecord(settings=standard_settings(), counts=counts, shots=100)
        res = mle_reconstruct(rec)
        assert res.rho.dims == (2, 2)  # DensityMatrix construction validates

    def test_objective_monotone_over_accepted_iterates(self):
        rec = simulate_counts(ideal_density_matrix(), shots=5000, seed=9, noise=0.05)
        res = mle_reconstruct(rec)
        hist = np.asarray(res.objective_history)
        assert hist.size >= 2
        assert np.all(np.diff(hist) <= 1e-6 * (1 + np.abs(hist[:-1])))

    def test_iteration_cap_reported(self):
        rec = simulate_counts(ideal_density_matrix(), shots=5000, seed=10)
        res = mle_reconstruct(rec, restarts=0, max_iterations=2)
        assert not res.converged
        assert res.iterations <= 2


class TestFidelity:
    def test_self_fidelity_one(self):
        rng = np.random.default_rng(11)
        rho = random_density_matrix((2, 2), rng)
        assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-9)

    def test_orthogonal_pure_states(self):
        rho0 = np.diag([1.0, 0, 0, 0]).astype(complex)
        rho1 = np.diag([0, 1.0, 0, 0]).astype(complex)
        assert fidelity(dm(rho0), dm(rho1)) == pytest.approx(0.0, abs=1e-12)

    def test_pure_state_shortcut(self):
        rng = np.random.default_rng(12)
        for _ in range(25):
            psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            psi /= np.linalg.norm(psi)
            sigma = random_density_matrix((2, 2), rng)
            shortcut = float(np.real(psi.conj() @ sigma.matrix @ psi))
            general = fidelity(dm(projector(psi)), sigma)
            assert general == pytest.approx(shortcut, abs=1e-9)

    def test_symmetric(self):
        rng = np.random.default_rng(13)
        a = random_density_matrix((2, 2), rng)
        b = random_density_matrix((2, 2), rng)
        assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-9)

    def test_unitary_invariance(self):
        rng = np.random.default_rng(14)
        a = random_density_matrix((2, 2), rng)
        b = random_density_matrix((2, 2), rng)
        u = random_unitary(4, rng)
        f_rotated = fidelity(
            dm(u @ a.matrix @ u.conj().T), dm(u @ b.matrix @ u.conj().T)
        )
        assert f_rotated == pytest.approx(fidelity(a, b), abs=1e-9)

    def test_bounds(self):
        rng = np.random.default_rng(15)
        for _ in range(10):
            a = random_density_matrix((2, 2), rng, rank=int(rng.integers(1, 5)))
            b = random_density_matrix((2, 2), rng, rank=int(rng.integers(1, 5)))
            assert 0.0 <= fidelity(a, b) <= 1.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            fidelity(dm(np.eye(4) / 4), DensityMatrix((2,), np.eye(2) / 2))
