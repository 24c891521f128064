import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import naive_dft, spectral_hilbert
from splinewp.spectral import PSNR_CAP, analytic_pair, beta_alpha, dft, hilbert, idft, psnr, u4r

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


def real_signal(n_exp=st.integers(3, 8)):
    return n_exp.flatmap(lambda j: arrays(np.float64, 2**j, elements=finite))


class TestDft:
    def test_delta(self):
        x = np.zeros(16)
        x[0] = 1
        np.testing.assert_allclose(dft(x), np.ones(16))

    def test_constant(self):
        np.testing.assert_allclose(dft(np.ones(8)), [8, 0, 0, 0, 0, 0, 0, 0], atol=1e-12)

    def test_matches_naive_sum(self, rng):
        x = rng.standard_normal(32) + 1j * rng.standard_normal(32)
        np.testing.assert_allclose(dft(x), naive_dft(x), atol=1e-10)

    def test_round_trip(self, rng):
        x = rng.standard_normal(16)
        np.testing.assert_allclose(idft(dft(x)).real, x, atol=1e-12)

    @pytest.mark.parametrize("n", [6, 12, 0])
    def test_rejects_non_dyadic(self, n):
        with pytest.raises(ValueError):
            dft(np.ones(n))

    @settings(max_examples=40, deadline=None)
    @given(real_signal(st.integers(3, 12)))
    def test_round_trip_property(self, x):
        scale = max(1.0, np.abs(x).max())
        assert np.abs(idft(dft(x)) - x).max() <= 1e-12 * scale * np.sqrt(x.size)
        assert np.abs(dft(idft(x)) - x).max() <= 1e-12 * scale * np.sqrt(x.size)


class TestSplineSpectra:
    def test_u4r_values(self):
        assert u4r(0, 64, 3) == pytest.approx(0.5)
        assert u4r(32, 64, 3) == pytest.approx(0.5)
        assert u4r(16, 64, 1) == pytest.approx(0.25)

    @pytest.mark.parametrize("r", range(1, 13))
    def test_u4r_positive(self, r):
        assert np.all(u4r(np.arange(256), 256, r) > 0)

    @pytest.mark.parametrize("r", [1, 2, 5, 12])
    def test_endpoints(self, r):
        N = 64
        beta, alpha = beta_alpha(N, r)
        assert beta[0] == pytest.approx(np.sqrt(2))
        assert alpha[0] == 0
        assert beta[N // 2] == 0
        assert alpha[N // 2] == pytest.approx(-np.sqrt(2))

    @pytest.mark.parametrize("r", range(1, 7))
    def test_power_complementary(self, r):
        beta, alpha = beta_alpha(128, r)
        np.testing.assert_allclose(np.abs(beta) ** 2 + np.abs(alpha) ** 2, 2.0, atol=1e-12)

    def test_alpha_is_shifted_beta(self):
        N, r = 64, 3
        n = np.arange(N)
        beta, alpha = beta_alpha(N, r)
        shifted, _ = beta_alpha(N, r, n + N // 2)
        np.testing.assert_allclose(alpha, np.exp(2j * np.pi * n / N) * shifted, atol=1e-12)


class TestHilbert:
    N = 64

    def test_cos_to_sin(self):
        k = np.arange(self.N)
        np.testing.assert_allclose(hilbert(np.cos(2 * np.pi * k / self.N)), np.sin(2 * np.pi * k / self.N), atol=1e-12)

    def test_sin_to_minus_cos(self):
        k = np.arange(self.N)
        np.testing.assert_allclose(hilbert(np.sin(2 * np.pi * k / self.N)), -np.cos(2 * np.pi * k / self.N), atol=1e-12)

    def test_constant_vanishes(self):
        np.testing.assert_allclose(hilbert(np.full(self.N, 3.0)), 0, atol=1e-12)

    def test_matches_loop_oracle(self, rng):
        x = rng.standard_normal(self.N)
        np.testing.assert_allclose(hilbert(x), spectral_hilbert(x).real, atol=1e-10)

    def test_symmetric_to_antisymmetric(self, rng):
        N, K = 32, 5
        half = rng.standard_normal(N)
        x = np.array([half[(k - K) % N] + half[(K - k) % N] for k in range(N)])
        h = hilbert(x)
        for k in range(N):
            assert h[(K + k) % N] == pytest.approx(-h[(K - k) % N], abs=1e-12)
        assert h[K] == pytest.approx(0, abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(real_signal(), st.integers(0, 300))
    def test_shift_commutes(self, x, m):
        np.testing.assert_allclose(hilbert(np.roll(x, m)), np.roll(hilbert(x), m), atol=1e-9 * max(1, np.abs(x).max()))

    @settings(max_examples=40, deadline=None)
    @given(real_signal())
    def test_norm_preserved_without_endpoints(self, x):
        X = np.fft.fft(x)
        X[0] = X[len(x) // 2] = 0
        y = np.fft.ifft(X).real
        assert np.linalg.norm(hilbert(y)) == pytest.approx(np.linalg.norm(y), rel=1e-9, abs=1e-9)


class TestAnalyticPair:
    def test_cos_gives_exponential(self):
        N = 32
        k = np.arange(N)
        plus, _ = analytic_pair(np.cos(2 * np.pi * k / N))
        np.testing.assert_allclose(plus, np.exp(2j * np.pi * k / N), atol=1e-12)

    def test_constant(self):
        plus, minus = analytic_pair(np.ones(16))
        np.testing.assert_allclose(plus, 1)
        np.testing.assert_allclose(minus, 1)

    def test_real_part_and_support(self, rng):
        N = 128
        x = rng.standard_normal(N)
        plus, minus = analytic_pair(x)
        assert np.array_equal(plus.real, x) and np.array_equal(minus.real, x)
        P, M = np.fft.fft(plus), np.fft.fft(minus)
        tol = 1e-12 * np.linalg.norm(x) * np.sqrt(N)
        assert np.abs(P[N // 2 + 1 :]).max() < tol
        assert np.abs(M[1 : N // 2]).max() < tol
        X = np.fft.fft(x)
        np.testing.assert_allclose(P[[0, N // 2]], X[[0, N // 2]], atol=1e-10)

    def test_rejects_complex(self):
        with pytest.raises(TypeError):
            analytic_pair(np.ones(8, dtype=complex))


class TestPsnr:
    def test_identical_gives_cap(self):
        x = np.arange(64.0).reshape(8, 8)
        assert psnr(x, x) == PSNR_CAP >= 400

    def test_full_scale_error_is_zero_db(self):
        assert psnr(np.zeros((4, 4)), np.full((4, 4), 255.0)) == pytest.approx(0.0)

    def test_single_pixel(self):
        b = np.zeros((8, 8))
        b[3, 3] = 255
        # 10 log10(64)
        assert psnr(np.zeros((8, 8)), b) == pytest.approx(18.0618, abs=1e-4)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            psnr(np.zeros((4, 4)), np.zeros((4, 5)))
