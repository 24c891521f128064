import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from splinewp.analysis import denoise
from splinewp.estimators import DirectionalDenoiser, QWPTransformer, SBIRestorer, SplineWPTransformer
from splinewp.qwp1d import qwp_multi_level_forward
from splinewp.spectral import psnr
from splinewp.synthetic import piecewise_smooth, random_mask
from splinewp.wp1d import multi_level_forward


@pytest.fixture
def signals(rng):
    return rng.standard_normal((5, 64))


class TestSplineWP:
    def test_params(self):
        est = SplineWPTransformer(order=6, levels=2)
        assert est.get_params() == {"order": 6, "levels": 2}
        assert clone(est).set_params(levels=4).levels == 4

    def test_matches_functional_core(self, signals):
        Y = SplineWPTransformer(6, 3).fit_transform(signals)
        assert Y.shape == signals.shape
        for row, x in zip(Y, signals):
            np.testing.assert_allclose(row, np.concatenate(multi_level_forward(x, 3, 6).level(3)), atol=1e-12)

    @pytest.mark.parametrize("levels", [1, 2, 4])
    def test_round_trip(self, signals, levels):
        est = SplineWPTransformer(4, levels).fit(signals)
        np.testing.assert_allclose(est.inverse_transform(est.transform(signals)), signals, atol=1e-10)

    def test_not_fitted(self, signals):
        with pytest.raises(NotFittedError):
            SplineWPTransformer().transform(signals)

    def test_width_mismatch(self, signals):
        est = SplineWPTransformer().fit(signals)
        with pytest.raises(ValueError):
            est.transform(signals[:, :32])

    @pytest.mark.parametrize("kwargs", [{"order": 3}, {"levels": 7}])
    def test_bad_params(self, signals, kwargs):
        with pytest.raises(ValueError):
            SplineWPTransformer(**kwargs).fit(signals)

    def test_in_pipeline(self, signals):
        pipe = make_pipeline(SplineWPTransformer(4, 2))
        assert pipe.fit_transform(signals).shape == signals.shape


class TestQWP:
    def test_features(self, signals):
        Y = QWPTransformer(4, 2).fit_transform(signals)
        assert Y.shape == (5, 128)
        z = qwp_multi_level_forward(signals[0], 2, 4)
        zp = np.concatenate(z.level(2, "+"))
        np.testing.assert_allclose(Y[0, :64] - 1j * Y[0, 64:], zp, atol=1e-12)

    def test_real_part_is_wp(self, signals):
        Y = QWPTransformer(6, 3).fit_transform(signals)
        np.testing.assert_allclose(Y[:, :64], SplineWPTransformer(6, 3).fit_transform(signals), atol=1e-12)

    @pytest.mark.parametrize("levels", [1, 3])
    def test_round_trip(self, signals, levels):
        est = QWPTransformer(6, levels).fit(signals)
        np.testing.assert_allclose(est.inverse_transform(est.transform(signals)), signals, atol=1e-10)


class TestDenoiser:
    def test_matches_function(self, rng):
        X = rng.uniform(0, 255, (32, 32))
        est = DirectionalDenoiser(4, 2, 800, "l1")
        out = est.fit_transform(X)
        ref, _ = denoise(X, 4, 2, 800, "l1", True)
        np.testing.assert_array_equal(out, ref)
        assert est.report_.plan.L == 800

    def test_reference_gives_psnr(self, rng):
        X = rng.uniform(0, 255, (32, 32))
        est = DirectionalDenoiser(4, 2).fit(X)
        est.transform(X, reference=X)
        assert est.report_.psnr > 250

    @pytest.mark.parametrize("kwargs", [{"cost": "energy"}, {"levels": 6}])
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            DirectionalDenoiser(**kwargs).fit(np.zeros((32, 32)))


class TestRestorer:
    def test_inpaint(self):
        X = piecewise_smooth(32, seed=1)
        mask = random_mask(X.shape, 0.6, seed=2)
        est = SBIRestorer(lam=1.0, mu=0.05, outer_iters=20, cg_iters=20, order=4, level=2, mask=mask)
        out = est.fit_transform(X * mask)
        assert psnr(X, out) > psnr(X, X * mask) + 5
        assert len(est.trace_) == 20

    def test_invalid(self):
        with pytest.raises(ValueError):
            SBIRestorer(lam=-1).fit(np.zeros((16, 16)))
