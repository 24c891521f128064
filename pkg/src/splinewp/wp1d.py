"""Orthonormal discrete-spline wavelet packets, 1D and tensor-product 2D.

Everything runs in the frequency domain: one FFT of the input, a 2x2
modulation matrix applied to each frequency pair ``(n, n + L/2)`` and a
half-length inverse FFT per output channel.
"""

from functools import lru_cache

import numpy as np

from .forest import CoeffForest, check_levels, check_order, children, filter_path, level_nodes
from .spectral import beta_alpha, check_dyadic


@lru_cache(maxsize=256)
def _filters(L, r):
    beta, alpha = beta_alpha(L, r)
    beta.setflags(write=False)
    alpha.setflags(write=False)
    return beta, alpha


def analysis_mod_matrix(n, N, r):
    """Analysis modulation matrix at frequency ``n``; ``M / sqrt(2)`` is unitary."""
    w = np.exp(2j * np.pi * n / N)
    b, a = beta_alpha(N, r, np.array([n]))
    b, a = b[0], a[0]
    return np.array([[b, a / w], [a, -w * b]], dtype=complex)


def synthesis_mod_matrix(n, N, r):
    return analysis_mod_matrix(n, N, r).T


# -- generic two-channel split / merge -------------------------------------


def split(x, g0, g1, axis=-1):
    """Project onto two-sample shifts of the filters with spectra ``g0``, ``g1``.

    Returns the two half-length coefficient arrays ``<x, g_mu[. - 2k]>``
    (complex inner product, conjugate on the filter).
    """
    L = x.shape[axis]
    h = L // 2
    X = np.fft.fft(x, axis=axis)
    X = np.moveaxis(X, axis, -1)
    lo, hi = X[..., :h], X[..., h:]
    out = []
    for g in (g0, g1):
        gc = np.conj(g)
        spec = 0.5 * (gc[:h] * lo + gc[h:] * hi)
        out.append(np.moveaxis(np.fft.ifft(spec, axis=-1), -1, axis))
    return out[0], out[1]


def merge(c0, c1, g0, g1, axis=-1):
    """Synthesis counterpart of :func:`split`: ``sum_mu sum_k c_mu[k] g_mu[. - 2k]``."""
    C0 = np.moveaxis(np.fft.fft(c0, axis=axis), axis, -1)
    C1 = np.moveaxis(np.fft.fft(c1, axis=axis), axis, -1)
    X = g0 * np.concatenate([C0, C0], axis=-1) + g1 * np.concatenate([C1, C1], axis=-1)
    return np.moveaxis(np.fft.ifft(X, axis=-1), -1, axis)


def _real_if(ref, *arrays):
    if np.isrealobj(ref):
        return tuple(a.real for a in arrays)
    return arrays


def split_real(x, r, axis=-1):
    """One-level spline WP split along ``axis`` (works on complex arrays too)."""
    L = x.shape[axis]
    if L % 2:
        raise ValueError("cannot split an odd-length axis")
    beta, alpha = _filters(L, r)
    return _real_if(x, *split(x, beta, alpha, axis))


def merge_real(c0, c1, r, axis=-1):
    L = 2 * c0.shape[axis]
    beta, alpha = _filters(L, r)
    return _real_if(c0 if np.isrealobj(c1) else c1, merge(c0, c1, beta, alpha, axis))[0]


def one_level_forward(x, order=4):
    """One-level WP transform of a real periodic signal: returns ``(y0, y1)``."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] % 2:
        raise ValueError("signal length must be even")
    return split_real(x, check_order(order))


def one_level_inverse(y0, y1, order=4):
    return merge_real(np.asarray(y0), np.asarray(y1), check_order(order))


# -- multi-level 1D --------------------------------------------------------


def _grow(tree, m_from, m_to, r, ndim, axes):
    """Fill levels ``m_from+1..m_to`` of ``tree`` by real splits of level ``m_from``."""
    for m in range(m_from, m_to):
        for node in level_nodes(m, ndim):
            parts = [tree[node]]
            for axis in axes:
                parts = [p for a in parts for p in split_real(a, r, axis)]
            for kid, arr in zip(children(node), parts):
                tree[kid] = arr


def multi_level_forward(x, levels, order=4):
    """WP transform down to ``levels``; every level is kept (the forest is redundant)."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("expected a 1D signal")
    N = check_dyadic(x.size)
    check_levels(N, levels)
    r = check_order(order)
    tree = {}
    tree[(1, 0)], tree[(1, 1)] = split_real(x, r)
    _grow(tree, 1, levels, r, 1, (-1,))
    return CoeffForest("wp1d", N, levels, order, {"": tree})


def _collapse(tree, node, selection, r, axes):
    """Rebuild the array at ``node`` from the selected descendants."""
    if node in selection:
        return tree[node]
    if node[0] >= max(s[0] for s in selection):
        raise ValueError(f"selection does not cover node {node}")
    arrays = [_collapse(tree, k, selection, r, axes) for k in children(node)]
    # merge in reverse order of the split axes
    for axis in reversed(axes):
        arrays = [merge_real(arrays[i], arrays[i + 1], r, axis) for i in range(0, len(arrays), 2)]
    return arrays[0]


def selection_nodes(forest, basis):
    """Normalise a basis argument: an int level, or an iterable of nodes."""
    if basis is None:
        basis = forest.levels
    if isinstance(basis, (int, np.integer)):
        if not 1 <= basis <= forest.levels:
            raise ValueError(f"level {basis} not in forest (1..{forest.levels})")
        return frozenset(level_nodes(int(basis), forest.ndim))
    return frozenset(tuple(int(v) for v in node) for node in basis)


def multi_level_inverse(forest, basis=None):
    """Reconstruct the signal from one full level (``basis`` int) or a node selection."""
    r = check_order(forest.order)
    sel = selection_nodes(forest, basis)
    return _collapse(forest.trees[""], (0, 0), sel, r, (-1,))


# -- waveforms -------------------------------------------------------------


def wp_spectrum(m, l, N, order=4):
    """DFT of the level-``m`` band-``l`` wavelet packet, built as a product of filter responses."""
    r = check_order(order)
    n = np.arange(N)
    spec = np.ones(N, dtype=complex)
    for k, mu in enumerate(filter_path(m, l)):
        beta, alpha = beta_alpha(N, r, (2**k) * n)
        spec *= beta if mu == 0 else alpha
    return spec


def waveform(m, l, N, order=4):
    """Time-domain wavelet packet (real, unit norm)."""
    return np.fft.ifft(wp_spectrum(m, l, N, order)).real


# -- tensor-product 2D -----------------------------------------------------


def wp2d_forward(X, levels, order=4):
    """Separable 2D WP transform: columns (axis 0) then rows (axis 1) at every level."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError("expected a square 2D array")
    N = check_dyadic(X.shape[0])
    check_levels(N, levels)
    r = check_order(order)
    tree = {}
    parts = [X]
    for axis in (0, 1):
        parts = [p for a in parts for p in split_real(a, r, axis)]
    for node, arr in zip(children((0, 0, 0)), parts):
        tree[node] = arr
    _grow(tree, 1, levels, r, 2, (0, 1))
    return CoeffForest("wp2d", N, levels, order, {"": tree})


def wp2d_inverse(forest, basis=None):
    r = check_order(forest.order)
    sel = selection_nodes(forest, basis)
    return _collapse(forest.trees[""], (0, 0, 0), sel, r, (0, 1))
