"""Complementary (cWP) and quasi-analytic (qWP) wavelet packets in 1D.

The qWP transform uses a complex filter bank at the first level only; the
deeper levels reuse the real spline filters on both the ``+`` and ``-``
coefficient trees.  Coefficients follow ``z+ = y - i c`` and ``z- = y + i c``
where ``y`` are WP and ``c`` are cWP coefficients.
"""

from functools import lru_cache

import numpy as np

from .forest import CoeffForest, check_levels, check_order, filter_path
from .spectral import beta_alpha, check_dyadic
from .wp1d import _collapse, _grow, merge, selection_nodes, split, wp_spectrum

SIGNS = ("+", "-")


def _sign_value(sign):
    if sign not in SIGNS:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return 1 if sign == "+" else -1


def complement(spec):
    """Apply the cWP rule to a spectrum: ``-i`` on positive, ``+i`` on negative, unchanged at ``0``, ``N/2``."""
    spec = np.asarray(spec, dtype=complex)
    N = spec.shape[-1]
    out = spec.copy()
    out[..., 1 : N // 2] *= -1j
    out[..., N // 2 + 1 :] *= 1j
    return out


def cwp_spectrum(m, l, N, order=4):
    return complement(wp_spectrum(m, l, N, order))


def qwp_spectrum(m, l, N, order=4, sign="+"):
    s = _sign_value(sign)
    return wp_spectrum(m, l, N, order) + s * 1j * cwp_spectrum(m, l, N, order)


def first_level_cwp(N, r):
    """Spectra of the two first-level cWPs written out case by case."""
    beta, alpha = beta_alpha(N, r)
    h = N // 2
    g0 = np.empty(N, dtype=complex)
    g1 = np.empty(N, dtype=complex)
    g0[1:h], g0[h + 1 :] = -1j * beta[1:h], 1j * beta[h + 1 :]
    g1[1:h], g1[h + 1 :] = -1j * alpha[1:h], 1j * alpha[h + 1 :]
    g0[0], g0[h] = np.sqrt(2.0), 0.0
    g1[0], g1[h] = 0.0, -np.sqrt(2.0)
    return g0, g1


def cwp_cascade(m, l, N, order=4):
    """cWP spectrum grown level by level from the first-level cWPs (independent of :func:`cwp_spectrum`)."""
    r = check_order(order)
    n = np.arange(N)
    path = filter_path(m, l)
    spec = first_level_cwp(N, r)[path[0]]
    for k, mu in enumerate(path[1:], start=1):
        beta, alpha = beta_alpha(N, r, (2**k) * n)
        spec = spec * (beta if mu == 0 else alpha)
    return spec


def qwp_cascade(m, l, N, order=4, sign="+"):
    """qWP spectrum grown from the first-level qWP filters by the real spline filters."""
    r = check_order(order)
    n = np.arange(N)
    path = filter_path(m, l)
    spec = qwp_filters(N, r, sign)[path[0]]
    for k, mu in enumerate(path[1:], start=1):
        beta, alpha = beta_alpha(N, r, (2**k) * n)
        spec = spec * (beta if mu == 0 else alpha)
    return spec


def cwp_waveform(m, l, N, order=4):
    return np.fft.ifft(cwp_spectrum(m, l, N, order)).real


def qwp_waveform(m, l, N, order=4, sign="+"):
    return np.fft.ifft(qwp_spectrum(m, l, N, order, sign))


@lru_cache(maxsize=256)
def qwp_filters(N, r, sign):
    """First-level qWP filter spectra ``(q0, q1)`` for the given sign, one-sided up to two endpoint bins."""
    s = _sign_value(sign)
    beta, alpha = beta_alpha(N, r)
    h = N // 2
    q0 = np.zeros(N, dtype=complex)
    q1 = np.zeros(N, dtype=complex)
    half = slice(1, h) if s > 0 else slice(h + 1, N)
    q0[half] = 2 * beta[half]
    q1[half] = 2 * alpha[half]
    q0[0] = (1 + s * 1j) * np.sqrt(2.0)
    q1[h] = -(1 + s * 1j) * np.sqrt(2.0)
    q0.setflags(write=False)
    q1.setflags(write=False)
    return q0, q1


def _pair_matrix(g0, g1, n, N):
    return np.array([[g0[n], g0[(n + N // 2) % N]], [g1[n], g1[(n + N // 2) % N]]], dtype=complex)


def cwp_analysis_matrix(n, N, r):
    return _pair_matrix(*first_level_cwp(N, r), n % N, N)


def qwp_analysis_matrices(n, N, r):
    """Analysis modulation matrices ``(M+, M-)`` of the first-level qWP filter bank at frequency ``n``."""
    return tuple(_pair_matrix(*qwp_filters(N, r, s), n % N, N) for s in SIGNS)


def qwp_synthesis_matrices(n, N, r):
    return tuple(m.T for m in qwp_analysis_matrices(n, N, r))


# -- transforms ------------------------------------------------------------


def qwp_split(x, r, sign, axis=-1):
    q0, q1 = qwp_filters(x.shape[axis], r, sign)
    return split(x, q0, q1, axis)


def qwp_merge(z0, z1, r, sign, axis=-1):
    """First-level qWP synthesis; on coefficients of a real ``x`` this returns ``2(x +/- iH(x))``."""
    q0, q1 = qwp_filters(2 * z0.shape[axis], r, sign)
    return merge(z0, z1, q0, q1, axis)


def qwp_one_level_forward(x, order=4):
    """Return ``(z+0, z+1, z-0, z-1)`` for a real signal ``x``."""
    x = np.asarray(x)
    if np.iscomplexobj(x):
        raise TypeError("expected a real signal")
    if x.shape[-1] % 2:
        raise ValueError("signal length must be even")
    r = check_order(order)
    zp0, zp1 = qwp_split(x.astype(float), r, "+")
    zm0, zm1 = qwp_split(x.astype(float), r, "-")
    return zp0, zp1, zm0, zm1


def qwp_round_trip_analytic(x, order=4):
    """One-level qWP analysis followed by the matching synthesis, halved: ``(x+iHx, x-iHx)``."""
    zp0, zp1, zm0, zm1 = qwp_one_level_forward(x, order)
    r = check_order(order)
    return qwp_merge(zp0, zp1, r, "+") / 2, qwp_merge(zm0, zm1, r, "-") / 2


def qwp_multi_level_forward(x, levels, order=4):
    x = np.asarray(x)
    if x.ndim != 1 or np.iscomplexobj(x):
        raise ValueError("expected a real 1D signal")
    N = check_dyadic(x.size)
    check_levels(N, levels)
    r = check_order(order)
    trees = {}
    for sign in SIGNS:
        tree = {}
        tree[(1, 0)], tree[(1, 1)] = qwp_split(x.astype(float), r, sign)
        _grow(tree, 1, levels, r, 1, (-1,))
        trees[sign] = tree
    return CoeffForest("qwp1d", N, levels, order, trees)


def qwp_branches(forest, basis=None):
    """Synthesise each tree separately: returns ``(S+, S-)`` with ``S+/- = 2(x +/- iHx)`` for an untouched forest."""
    r = check_order(forest.order)
    sel = selection_nodes(forest, basis)
    out = []
    for sign in SIGNS:
        tree = forest.trees[sign]
        z0 = _collapse(tree, (1, 0), sel, r, (-1,))
        z1 = _collapse(tree, (1, 1), sel, r, (-1,))
        out.append(qwp_merge(z0, z1, r, sign))
    return tuple(out)


def qwp_multi_level_inverse(forest, basis=None):
    # each branch carries 2x in its real part, hence the 1/4
    sp, sm = qwp_branches(forest, basis)
    return (sp.real + sm.real) / 4


def wp_coefficients(forest, node):
    """WP coefficients ``y`` of a node (real part of the ``+`` tree)."""
    return forest.trees["+"][node].real


def cwp_coefficients(forest, node):
    """cWP coefficients ``c`` of a node (``z+ = y - i c``)."""
    return -forest.trees["+"][node].imag
