"""scikit-learn style wrappers around the functional transforms."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .analysis import COSTS, denoise
from .forest import check_levels, check_order, level_nodes
from .qwp1d import SIGNS, qwp_merge, qwp_split
from .qwp2d import _check_image
from .restoration import SbiParams, sbi_restore
from .spectral import check_dyadic
from .wp1d import _collapse, _grow, split_real


def _check_signals(X, estimator, reset):
    X = check_array(X, dtype=np.float64)
    if reset:
        n = check_dyadic(X.shape[1], "signal length")
        check_levels(n, estimator.levels)
        check_order(estimator.order)
        estimator.n_features_in_ = n
    elif X.shape[1] != estimator.n_features_in_:
        raise ValueError(f"expected {estimator.n_features_in_} samples per signal, got {X.shape[1]}")
    return X


def _flatten(tree, levels):
    return np.concatenate([tree[node] for node in level_nodes(levels, 1)], axis=-1)


def _unflatten(Y, levels):
    side = Y.shape[-1] >> levels
    return {node: Y[..., i * side : (i + 1) * side] for i, node in enumerate(level_nodes(levels, 1))}


class SplineWPTransformer(TransformerMixin, BaseEstimator):
    """Level-``levels`` spline wavelet-packet coefficients of each row of ``X``.

    Output columns hold the bands in frequency order, each of length ``N / 2**levels``.
    """

    def __init__(self, order=4, levels=3):
        self.order = order
        self.levels = levels

    def fit(self, X, y=None):
        _check_signals(X, self, reset=True)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = _check_signals(X, self, reset=False)
        r = check_order(self.order)
        tree = dict(zip(level_nodes(1, 1), split_real(X, r)))
        _grow(tree, 1, self.levels, r, 1, (-1,))
        return _flatten(tree, self.levels)

    def inverse_transform(self, Y):
        check_is_fitted(self, "n_features_in_")
        Y = check_array(Y, dtype=np.float64)
        r = check_order(self.order)
        tree = _unflatten(Y, self.levels)
        return _collapse(tree, (0, 0), frozenset(tree), r, (-1,))


class QWPTransformer(TransformerMixin, BaseEstimator):
    """Quasi-analytic WP features ``[y, c]`` (WP and complementary WP coefficients) per row.

    For real rows ``z- = conj(z+)``, so the ``+`` tree carries all the information;
    the output has ``2N`` real columns.
    """

    def __init__(self, order=4, levels=3):
        self.order = order
        self.levels = levels

    def fit(self, X, y=None):
        _check_signals(X, self, reset=True)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = _check_signals(X, self, reset=False)
        r = check_order(self.order)
        tree = dict(zip(level_nodes(1, 1), qwp_split(X, r, "+")))
        _grow(tree, 1, self.levels, r, 1, (-1,))
        z = _flatten(tree, self.levels)
        return np.concatenate([z.real, -z.imag], axis=-1)

    def inverse_transform(self, Y):
        check_is_fitted(self, "n_features_in_")
        Y = check_array(Y, dtype=np.float64)
        n = self.n_features_in_
        y, c = Y[:, :n], Y[:, n:]
        r = check_order(self.order)
        out = 0.0
        for sign, z in zip(SIGNS, (y - 1j * c, y + 1j * c)):
            tree = _unflatten(z, self.levels)
            sel = frozenset(tree)
            z0 = _collapse(tree, (1, 0), sel, r, (-1,))
            z1 = _collapse(tree, (1, 1), sel, r, (-1,))
            out = out + qwp_merge(z0, z1, r, sign).real
        return out / 4


class DirectionalDenoiser(TransformerMixin, BaseEstimator):
    """Best-basis hard-threshold denoising of one square image.

    ``transform`` returns the denoised image; the last report is kept in ``report_``.
    """

    def __init__(self, order=4, levels=4, rank=0, cost="entropy", directional=True, extend=False):
        self.order = order
        self.levels = levels
        self.rank = rank
        self.cost = cost
        self.directional = directional
        self.extend = extend

    def fit(self, X, y=None):
        X = _check_image(check_array(X, dtype=np.float64))
        if self.cost not in COSTS:
            raise ValueError(f"cost must be one of {COSTS}")
        check_order(self.order)
        check_levels(X.shape[0] * (2 if self.extend else 1), self.levels)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X, reference=None):
        check_is_fitted(self, "n_features_in_")
        X = _check_image(check_array(X, dtype=np.float64))
        out, self.report_ = denoise(
            X, self.order, self.levels, self.rank, self.cost, self.directional, reference, self.extend
        )
        return out


class SBIRestorer(TransformerMixin, BaseEstimator):
    """Split Bregman restoration of one square image with a qWP prior at a fixed level."""

    def __init__(self, lam=1.0, mu=0.05, outer_iters=50, cg_iters=30, order=6, level=3, kernel=None, mask=None):
        self.lam = lam
        self.mu = mu
        self.outer_iters = outer_iters
        self.cg_iters = cg_iters
        self.order = order
        self.level = level
        self.kernel = kernel
        self.mask = mask

    def fit(self, X, y=None):
        X = _check_image(check_array(X, dtype=np.float64))
        check_order(self.order)
        check_levels(X.shape[0], self.level)
        self.params_ = SbiParams(self.lam, self.mu, self.outer_iters, self.cg_iters)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X, reference=None):
        check_is_fitted(self, "params_")
        X = _check_image(check_array(X, dtype=np.float64))
        result = sbi_restore(X, self.kernel, self.mask, self.params_, self.order, self.level, reference)
        self.trace_ = result.trace
        return result.u
