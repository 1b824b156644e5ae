import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import dense_hamiltonian, displaced_vector
from polarlambda import (InitialState, ModelParams, StateVector, collapse_time, inversion_coherent, inversion_fock,
                         lower_manifold, rabi_frequency, resonance_detuning, resonant_eigensystem,
                         resonant_evolution, transition_matrix_element)
from polarlambda.errors import DegenerateDerivative, DomainError
from polarlambda.resonant import resonance_spec

FIG2 = ModelParams.at_resonance(2, lam=0.02, mu=0.1)


def manifold_matrix(params, N, n, n_max=40):
    """Projection of the full Hamiltonian onto (|g1,N^->, |g2,N^+>, |e,N-n>)."""
    beta = params.mu / params.omega
    dim = 3 * (n_max + 1)
    P = np.zeros((dim, 3))
    P[0::3, 0] = displaced_vector(N, beta, n_max)
    P[1::3, 1] = displaced_vector(N, -beta, n_max)
    P[3 * (N - n) + 2, 2] = 1.0
    return P.T @ dense_hamiltonian(params, n_max) @ P


class TestTransitionElement:
    @pytest.mark.parametrize("N", [1, 2, 5, 17])
    def test_jc_limit(self, N):
        p = ModelParams.from_ratios(lam=0.03, mu=0.0, omega0=1.0)
        assert transition_matrix_element(p, N, 1) == pytest.approx(0.03 * math.sqrt(N), rel=1e-14)
        if N >= 2:
            assert transition_matrix_element(p, N, 2) == 0.0

    def test_frozen_two_photon_value(self):
        # closed form for N = n = 2: V = -lam sqrt(2) e^{-a/2} sqrt(a) (1 - a/2), a = mu^2
        a = 0.01
        exact = -0.02 * math.sqrt(2) * math.exp(-a / 2) * math.sqrt(a) * (1 - a / 2)
        v = transition_matrix_element(FIG2, 2, 2)
        assert v == pytest.approx(exact, rel=1e-13)
        assert v == pytest.approx(-0.00280025, abs=5e-9)
        # quoted six-digit reference values, good to their last digit
        assert v == pytest.approx(-0.00280027, rel=1e-5)
        assert v / 0.02 == pytest.approx(-0.140013, rel=1e-5)

    @pytest.mark.parametrize("N,n", [(2, 2), (3, 2), (6, 2), (3, 3), (5, 3)])
    def test_equals_projected_coupling(self, N, n):
        p = ModelParams.at_resonance(n, lam=0.02, mu=0.3)
        M = manifold_matrix(p, N, n)
        assert transition_matrix_element(p, N, n) == pytest.approx(M[0, 2], rel=1e-10)

    def test_rejects_low_manifold(self):
        with pytest.raises(DomainError):
            transition_matrix_element(FIG2, 1, 2)
        with pytest.raises(DomainError):
            transition_matrix_element(FIG2, 3, 0)

    def test_rabi_frequency(self):
        p = ModelParams.from_ratios(lam=0.02, mu=0.0, omega0=1.0)
        assert rabi_frequency(p, 1, 1) == pytest.approx(2 * math.sqrt(2) * 0.02, rel=1e-14)
        assert rabi_frequency(FIG2.replace(lam=0.0), 2, 2) == 0.0
        assert rabi_frequency(FIG2, 2, 2) == pytest.approx(0.00792030, abs=5e-9)
        assert rabi_frequency(FIG2, 2, 2) == pytest.approx(0.00792040, rel=2e-5)


class TestDetuning:
    @pytest.mark.parametrize("omega0,mu,n,expect", [(2.0, 0.0, 2, 0.0), (2.0, 0.1, 2, 0.01), (3.0, 0.2, 3, 0.04)])
    def test_examples(self, omega0, mu, n, expect):
        assert resonance_detuning(ModelParams.from_ratios(mu=mu, omega0=omega0), n) == pytest.approx(expect)

    def test_spec_warns_when_far(self):
        with pytest.warns(RuntimeWarning):
            resonance_spec(ModelParams.from_ratios(omega0=2.5), 2)


class TestEigensystem:
    def test_uncoupled_is_degenerate(self):
        es = resonant_eigensystem(FIG2.replace(lam=0.0), 4, 2)
        e1 = FIG2.eps_g + 4.5 - 0.01
        np.testing.assert_allclose(es.energies, [e1] * 3, atol=1e-15)

    def test_splitting_and_mirror_symmetry(self):
        es = resonant_eigensystem(FIG2, 3, 2)
        e1, e2, e3 = es.energies
        assert e2 - e3 == pytest.approx(2 * math.sqrt(2) * abs(es.v_n), rel=1e-14)
        assert (e2 - e1) - (e1 - e3) == pytest.approx(0.0, abs=1e-14)

    def test_even_n_first_state(self):
        np.testing.assert_allclose(resonant_eigensystem(FIG2, 2, 2).states[0], [2**-0.5, -(2**-0.5), 0.0])

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_orthonormal(self, n):
        p = ModelParams.at_resonance(n, lam=0.02, mu=0.2)
        S = resonant_eigensystem(p, n + 3, n).states
        np.testing.assert_allclose(S @ S.T, np.eye(3), atol=1e-12)

    @pytest.mark.parametrize("N,n", [(2, 2), (4, 2), (3, 3), (7, 3)])
    def test_diagonalizes_projected_block(self, N, n):
        p = ModelParams.at_resonance(n, lam=0.02, mu=0.3)
        M = manifold_matrix(p, N, n)
        es = resonant_eigensystem(p, N, n)
        w, v = np.linalg.eigh(M)
        np.testing.assert_allclose(np.sort(es.energies), w, atol=1e-12)
        for a in range(3):
            psi = es.states[a]
            np.testing.assert_allclose(M @ psi, es.energies[a] * psi, atol=1e-12)

    def test_phase_follows_sign(self):
        es = resonant_eigensystem(FIG2, 2, 2)
        assert es.v_n < 0 and es.phase == pytest.approx(math.pi)
        assert es.is_triplet

    def test_low_manifold(self):
        with pytest.raises(DomainError):
            resonant_eigensystem(FIG2, 1, 2)
        low = lower_manifold(FIG2, 1, 2)
        assert not low.is_triplet
        np.testing.assert_allclose(low.energies, [1.49] * 2)
        with pytest.raises(DomainError):
            lower_manifold(FIG2, 2, 2)

    def test_warns_outside_weak_coupling(self):
        with pytest.warns(RuntimeWarning):
            resonant_eigensystem(ModelParams.at_resonance(1, lam=0.2, mu=0.0), 4, 1)


class TestInversion:
    def test_fock_special_times(self):
        om = rabi_frequency(FIG2, 2, 2)
        w = inversion_fock(FIG2, 2, [0.0, math.pi / (2 * om), math.pi / om])
        np.testing.assert_allclose(w, [1.0, 0.0, -1.0], atol=1e-12)

    def test_coherent_at_zero(self):
        assert inversion_coherent(FIG2, 2, 20.0, [0.0])[0] == pytest.approx(1.0, abs=1e-11)

    def test_coherent_vacuum_is_fock(self):
        t = np.linspace(0, 3000, 50)
        np.testing.assert_allclose(inversion_coherent(FIG2, 2, 0.0, t), inversion_fock(FIG2, 2, t), atol=1e-15)

    def test_collapse_then_revival(self):
        tc = collapse_time(FIG2, 2, 20.0)
        t = np.linspace(0, 8 * math.sqrt(20) * tc, 30001)
        w = inversion_coherent(FIG2, 2, 20.0, t)
        mid = (t > tc) & (t < 2 * tc)
        assert np.abs(w[mid]).max() < 0.3
        assert np.abs(w[t > 4 * tc]).max() > 0.5


class TestCollapseTime:
    def test_scales_inversely_with_lambda(self):
        a = collapse_time(FIG2, 2, 20.0)
        b = collapse_time(FIG2.replace(lam=0.04), 2, 20.0)
        assert a / b == pytest.approx(2.0, rel=1e-12)

    def test_nbar_dependence(self):
        def slope(N):
            return (rabi_frequency(FIG2, N + 1, 2) - rabi_frequency(FIG2, N - 1, 2)) / 2

        a, b = collapse_time(FIG2, 2, 20.0), collapse_time(FIG2, 2, 40.0)
        expect = (math.sqrt(40) * slope(42)) / (math.sqrt(20) * slope(22))
        assert a / b == pytest.approx(expect, rel=1e-12)

    def test_envelope_consistency(self):
        # time where the |W| envelope first drops to 1/e of its start
        tc = collapse_time(FIG2, 2, 20.0)
        period = 2 * math.pi / rabi_frequency(FIG2, 22, 2)
        t = np.arange(0, 3 * tc, period / 40)
        w = np.abs(inversion_coherent(FIG2, 2, 20.0, t))
        k = int(round(period / (t[1] - t[0])))
        env = np.array([w[i:i + k].max() for i in range(t.size - k)])
        t_env = t[np.argmax(env < math.exp(-1))]
        assert 0.5 < t_env / tc < 2.0

    def test_degenerate(self):
        with pytest.raises(DegenerateDerivative):
            collapse_time(FIG2.replace(lam=0.0), 2, 20.0)

    def test_small_nbar_warns(self):
        with pytest.warns(RuntimeWarning):
            collapse_time(FIG2, 2, 4.0)


class TestResonantEvolution:
    def test_vacuum_start_reassembles(self):
        traj = resonant_evolution(FIG2, 2, InitialState.EXCITED_VACUUM, [0.0, 100.0])
        psi = traj.to_fock(0, 20)
        np.testing.assert_allclose(psi.amps, StateVector.basis("e", 0, 20).amps, atol=1e-14)

    def test_vacuum_matches_fock_inversion(self):
        t = np.linspace(0, 2000, 101)
        traj = resonant_evolution(FIG2, 2, "excited-vacuum", t)
        np.testing.assert_allclose(traj.inversion(), inversion_fock(FIG2, 2, t), atol=1e-13)
        np.testing.assert_allclose(traj.norm(), 1.0, atol=1e-13)

    def test_coherent_matches_series(self):
        t = np.linspace(0, 2000, 101)
        traj = resonant_evolution(FIG2, 2, InitialState.EXCITED_COHERENT, t, nbar=20.0)
        np.testing.assert_allclose(traj.inversion(), inversion_coherent(FIG2, 2, 20.0, t), atol=1e-10)

    def test_fock_state_is_normalized(self):
        traj = resonant_evolution(FIG2, 2, InitialState.EXCITED_COHERENT, [0.0, 500.0], nbar=5.0)
        assert traj.to_fock(1, 60).norm2() == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    @given(lam=st.floats(0.001, 0.05), mu=st.floats(0.0, 0.5), N=st.integers(2, 20))
    def test_triplet_is_orthonormal(self, lam, mu, N):
        S = resonant_eigensystem(ModelParams.at_resonance(2, lam=lam, mu=mu), N, 2).states
        np.testing.assert_allclose(S @ S.T, np.eye(3), atol=1e-12)
