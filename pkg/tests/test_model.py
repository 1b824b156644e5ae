import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import dense_hamiltonian
from polarlambda import (LConfigParams, ModelParams, StateVector, TruncationScheme, apply_hamiltonian,
                         build_hamiltonian, build_l_hamiltonian, map_l_to_polar_lambda)
from polarlambda.errors import DimensionError, DomainError
from polarlambda.model import check_regime, default_truncation

coupling = st.floats(-1.5, 1.5, allow_nan=False)


def sample_params(**kw):
    base = dict(omega=1.0, eps_g=0.3, eps_e=2.1, delta=0.07, mu=0.4, lam=-0.15)
    base.update(kw)
    return ModelParams(**base)


class TestParams:
    def test_from_ratios(self):
        p = ModelParams.from_ratios(lam=0.02, mu=0.1, omega0=2.0)
        assert (p.omega, p.eps_g, p.eps_e, p.lam, p.mu) == (1.0, 0.0, 2.0, 0.02, 0.1)
        assert p.omega_eg == pytest.approx(2.01)

    def test_at_resonance(self):
        p = ModelParams.at_resonance(2, lam=0.02, mu=0.1)
        assert p.omega_eg == pytest.approx(2.0, abs=1e-15)

    @pytest.mark.parametrize("bad", [dict(omega=0.0), dict(omega=-1.0), dict(eps_e=-1.0), dict(mu=math.nan),
                                     dict(lam=math.inf)])
    def test_rejects_bad_values(self, bad):
        with pytest.raises(DomainError):
            sample_params(**bad)

    def test_regime_warning(self):
        with pytest.warns(RuntimeWarning):
            check_regime(ModelParams.from_ratios(omega0=0.5))

    def test_truncation_scheme(self):
        assert TruncationScheme(4).dimension == 15
        assert TruncationScheme(4).doubled().n_max == 8
        with pytest.raises(DimensionError):
            TruncationScheme(0)

    def test_default_truncation_floor(self):
        assert default_truncation(ModelParams.from_ratios(mu=0.1)).n_max == 200
        assert default_truncation(ModelParams.from_ratios(mu=6.0)).n_max == 420


class TestHamiltonian:
    def test_six_by_six(self):
        p = sample_params()
        H = build_hamiltonian(p, 1).to_dense()
        g, e, d, m, l = p.eps_g, p.eps_e, p.delta, p.mu, p.lam
        expect = np.array([
            [g + 0.5, d, 0, -m, 0, l],
            [d, g + 0.5, 0, 0, m, -l],
            [0, 0, e + 0.5, l, -l, 0],
            [-m, 0, l, g + 1.5, d, 0],
            [0, m, -l, d, g + 1.5, 0],
            [l, -l, 0, 0, 0, e + 1.5],
        ])
        np.testing.assert_array_equal(H, expect)

    def test_free_system_is_diagonal(self):
        p = ModelParams.from_ratios(omega0=2.5)
        H = build_hamiltonian(p, 5).to_dense()
        N = np.repeat(np.arange(6), 3)
        eps = np.tile([0.0, 0.0, 2.5], 6)
        np.testing.assert_array_equal(H, np.diag(eps + N + 0.5))

    def test_matches_entrywise_oracle(self):
        p = sample_params(omega=1.3)
        np.testing.assert_allclose(build_hamiltonian(p, 12).to_dense(), dense_hamiltonian(p, 12), atol=1e-15)

    def test_symmetric_and_block_tridiagonal(self):
        H = build_hamiltonian(sample_params(), 10).to_dense()
        np.testing.assert_array_equal(H, H.T)
        rows, cols = np.nonzero(H)
        assert np.all(np.abs(rows // 3 - cols // 3) <= 1)

    def test_lowest_free_eigenvalue(self):
        h = build_hamiltonian(ModelParams.from_ratios(lam=0.02, mu=0.1, omega0=2.0), 30)
        assert np.linalg.eigvalsh(h.to_dense())[0] == pytest.approx(0.49, abs=1e-3)

    def test_gershgorin_encloses_spectrum(self):
        h = build_hamiltonian(sample_params(), 20)
        w = np.linalg.eigvalsh(h.to_dense())
        lo, hi = h.gershgorin()
        assert lo <= w[0] and w[-1] <= hi

    @pytest.mark.parametrize("n_max", [20, 40, 80])
    def test_low_levels_converge_from_above(self, n_max):
        p = sample_params(mu=1.0, lam=0.5)
        small = np.linalg.eigvalsh(build_hamiltonian(p, n_max).to_dense())[:5]
        large = np.linalg.eigvalsh(build_hamiltonian(p, 2 * n_max).to_dense())[:5]
        assert np.all(large <= small + 1e-12)


class TestApply:
    def test_basis_vector_on_diagonal_h(self):
        h = build_hamiltonian(ModelParams.from_ratios(omega0=2.0), 4)
        e = StateVector.basis("e", 2, 4)
        out = apply_hamiltonian(h, e)
        assert isinstance(out, StateVector)
        np.testing.assert_array_equal(out.amps, 4.5 * e.amps)

    def test_zero_vector(self):
        h = build_hamiltonian(sample_params(), 6)
        assert not np.any(apply_hamiltonian(h, np.zeros(h.dimension)))

    def test_dimension_mismatch(self):
        h = build_hamiltonian(sample_params(), 6)
        with pytest.raises(DimensionError):
            apply_hamiltonian(h, np.zeros(h.dimension + 3))

    @given(mu=coupling, lam=coupling, seed=st.integers(0, 2**31))
    def test_matches_dense_product(self, mu, lam, seed):
        h = build_hamiltonian(sample_params(mu=mu, lam=lam), 15)
        rng = np.random.default_rng(seed)
        v = rng.standard_normal(h.dimension) + 1j * rng.standard_normal(h.dimension)
        np.testing.assert_allclose(apply_hamiltonian(h, v), h.to_dense() @ v, rtol=0, atol=1e-14 * 20 * 8)


class TestLConfiguration:
    def test_mapping_examples(self):
        p = map_l_to_polar_lambda(LConfigParams(eps_g1=1.0, eps_g2=0.8, eps_e=3.0, g12=0.3, g2e=0.2))
        assert p.eps_g == pytest.approx(0.9)
        assert p.delta == pytest.approx(0.1)
        assert p.mu == 0.3
        assert p.lam == pytest.approx(-0.141421356, abs=1e-9)

    def test_free_l_hamiltonian(self):
        lp = LConfigParams(eps_g1=0.1, eps_g2=0.2, eps_e=2.0, g12=0.0, g2e=0.0)
        H = build_l_hamiltonian(lp, 3).to_dense()
        np.testing.assert_array_equal(H, np.diag(np.diag(H)))

    def test_six_by_six_l_form(self):
        lp = LConfigParams(eps_g1=0.1, eps_g2=0.2, eps_e=2.0, g12=0.3, g2e=0.4)
        H = build_l_hamiltonian(lp, 1).to_dense()
        a, b, c = 0.1, 0.2, 2.0
        expect = np.array([
            [a + 0.5, 0, 0, 0, 0.3, 0],
            [0, b + 0.5, 0, 0.3, 0, 0.4],
            [0, 0, c + 0.5, 0, 0.4, 0],
            [0, 0.3, 0, a + 1.5, 0, 0],
            [0.3, 0, 0.4, 0, b + 1.5, 0],
            [0, 0.4, 0, 0, 0, c + 1.5],
        ])
        np.testing.assert_allclose(H, expect, atol=1e-15)

    @given(eg1=st.floats(0, 0.5), eg2=st.floats(0, 0.5), ee=st.floats(1, 3), g12=st.floats(-0.5, 0.5),
           g2e=st.floats(-0.5, 0.5))
    def test_spectra_agree(self, eg1, eg2, ee, g12, g2e):
        lp = LConfigParams(eps_g1=eg1, eps_g2=eg2, eps_e=ee, g12=g12, g2e=g2e)
        a = np.linalg.eigvalsh(build_l_hamiltonian(lp, 25).to_dense())
        b = np.linalg.eigvalsh(build_hamiltonian(map_l_to_polar_lambda(lp), 25).to_dense())
        np.testing.assert_allclose(a, b, atol=1e-10)
