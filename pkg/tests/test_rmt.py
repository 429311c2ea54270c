import math

import numpy as np
import pytest

from freecycle import (
    IntPolynomial,
    SimConfig,
    diagonalization_from_samples,
    estimate_moment,
    fluctuation_covariance,
    fluctuation_poly,
    haar_unitary,
    kesten_moment,
    sample_traces,
)

from oracles import trace_by_matrix_powers


def _config(**overrides) -> SimConfig:
    base = dict(matrix_size=30, alphabet_size=2, trials=100, max_power=4, seed=99)
    base.update(overrides)
    return SimConfig(**base)


class TestHaarUnitary:
    @pytest.mark.parametrize("m", [1, 5, 64])
    def test_unitarity(self, m):
        rng = np.random.default_rng(1)
        u = haar_unitary(m, rng)
        assert np.max(np.abs(u.conj().T @ u - np.eye(m))) <= 1e-10

    def test_one_by_one_is_a_phase(self):
        rng = np.random.default_rng(2)
        u = haar_unitary(1, rng)
        assert abs(abs(u[0, 0]) - 1) <= 1e-12

    def test_first_entry_square_modulus_mean(self):
        # |U_11|^2 of a Haar 4x4 unitary has mean 1/4 and variance 3/80
        rng = np.random.default_rng(3)
        values = [abs(haar_unitary(4, rng)[0, 0]) ** 2 for _ in range(10_000)]
        se = math.sqrt(3 / 80 / 10_000)
        assert abs(np.mean(values) - 0.25) <= 3 * se


class TestSampleTraces:
    def test_config_validation(self):
        for bad in (
            dict(matrix_size=1),
            dict(trials=1),
            dict(max_power=0),
            dict(alphabet_size=0),
        ):
            with pytest.raises(ValueError):
                _config(**bad)

    def test_deterministic(self):
        cfg = _config(trials=8)
        a = sample_traces(cfg)
        b = sample_traces(cfg)
        assert np.array_equal(a.traces, b.traces)

    def test_thread_count_does_not_change_results(self):
        cfg = _config(trials=16)
        assert np.array_equal(sample_traces(cfg).traces, sample_traces(cfg, threads=2).traces)

    def test_x_is_hermitian_with_bounded_spectrum(self):
        rng = np.random.default_rng(4)
        m, n_gens = 40, 2
        x = np.zeros((m, m), dtype=complex)
        for _ in range(n_gens):
            u = haar_unitary(m, rng)
            x += u + u.conj().T
        assert np.max(np.abs(x - x.conj().T)) <= 1e-10
        eig = np.linalg.eigvalsh(x)
        assert eig.min() >= -2 * n_gens - 1e-9
        assert eig.max() <= 2 * n_gens + 1e-9

    def test_traces_match_matrix_powers(self):
        cfg = _config(matrix_size=25, trials=3, max_power=5, seed=11)
        samples = sample_traces(cfg)
        streams = np.random.SeedSequence(cfg.seed).spawn(cfg.trials)
        for t in range(cfg.trials):
            rng = np.random.default_rng(streams[t])
            x = np.zeros((25, 25), dtype=complex)
            for _ in range(cfg.alphabet_size):
                u = haar_unitary(25, rng)
                x += u + u.conj().T
            direct = trace_by_matrix_powers(x, cfg.max_power)
            for p in range(1, cfg.max_power + 1):
                assert abs(direct[p - 1].imag) <= 1e-8 * cfg.matrix_size
                assert samples.traces[t, p - 1] == pytest.approx(direct[p - 1].real, rel=1e-9, abs=1e-9)

    def test_power_bounds_checked(self):
        samples = sample_traces(_config(trials=4))
        with pytest.raises(ValueError):
            samples.power_traces(5)
        with pytest.raises(ValueError):
            samples.poly_traces(IntPolynomial.monomial(9))


class TestMomentEstimates:
    def test_first_moment_vanishes(self):
        samples = sample_traces(_config(matrix_size=50, trials=400, seed=21))
        est, se = estimate_moment(samples, 1)
        assert abs(est - 0) <= 3 * se

    def test_second_moment_matches_kesten(self):
        samples = sample_traces(_config(matrix_size=50, trials=400, seed=22))
        est, se = estimate_moment(samples, 2)
        assert abs(est - kesten_moment(2, 2)) <= 3 * se

    def test_fourth_moment_matches_kesten(self):
        samples = sample_traces(_config(matrix_size=80, trials=400, seed=23))
        est, se = estimate_moment(samples, 4)
        assert abs(est - kesten_moment(4, 2)) <= 3 * se + 10 * 16 / 80**2


class TestFluctuationCovariance:
    def test_constants_have_zero_fluctuation(self):
        samples = sample_traces(_config(trials=50))
        est, se = fluctuation_covariance(samples, IntPolynomial(3), IntPolynomial(5))
        assert est == 0.0 and se == 0.0

    def test_centering_invariance(self):
        samples = sample_traces(_config(trials=50))
        f = fluctuation_poly(2, 2)
        g = fluctuation_poly(3, 2)
        base, _ = fluctuation_covariance(samples, f, g)
        shifted, _ = fluctuation_covariance(samples, f, g + 1000)
        assert shifted == pytest.approx(base, rel=1e-9, abs=1e-6)

    def test_variance_positive_and_matches_numpy(self):
        samples = sample_traces(_config(trials=60))
        f = IntPolynomial.monomial(2)
        est, se = fluctuation_covariance(samples, f, f)
        values = samples.poly_traces(f)
        assert est == pytest.approx(float(np.cov(values, ddof=1)))
        assert est > 0 and se > 0

    def test_needs_three_trials(self):
        samples = sample_traces(_config(trials=2))
        with pytest.raises(ValueError):
            fluctuation_covariance(samples, IntPolynomial.x(), IntPolynomial.x())


class TestDiagonalizationReport:
    def test_structure(self):
        samples = sample_traces(_config(trials=120, seed=31))
        report = diagonalization_from_samples(samples, 3)
        assert report.k_max == 3
        assert len(report.polynomials) == 3
        for matrix in (report.basis_cov, report.monomial_cov, report.basis_z):
            assert len(matrix) == 3 and all(len(row) == 3 for row in matrix)
        for i in range(3):
            assert report.basis_cov[i][i] > 0
            assert report.monomial_cov[i][i] > 0
            for j in range(3):
                assert report.basis_cov[i][j] == report.basis_cov[j][i]

    def test_k_max_validation(self):
        samples = sample_traces(_config(trials=10))
        with pytest.raises(ValueError):
            diagonalization_from_samples(samples, 5)
        with pytest.raises(ValueError):
            diagonalization_from_samples(samples, 0)

    def test_json_round_trip_shape(self):
        samples = sample_traces(_config(trials=40, seed=41))
        data = diagonalization_from_samples(samples, 2).to_json()
        assert set(data) == {"k_max", "z_threshold", "polynomials", "basis", "monomial"}
        assert data["basis"]["offdiag_ok"] in (True, False)
