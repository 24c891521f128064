"""Directional 2D transform built from tensor products of 1D qWPs (a dual tree).

Tree ``+`` holds coefficients against ``Psi+_j (x) Psi+_l`` (spectra in the
quadrant ``[0, N/2)^2``), tree ``-`` against ``Psi+_j (x) Psi-_l`` (quadrant
``[0, N/2) x [-N/2, 0)``).  Axis 0 carries band ``j``, axis 1 band ``l``.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .forest import CoeffForest, check_levels, check_order, level_nodes
from .qwp1d import SIGNS, qwp_merge, qwp_spectrum, qwp_split
from .spectral import check_dyadic
from .wp1d import _collapse, _grow, selection_nodes


def _check_image(X):
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f"expected a square image, got shape {X.shape}")
    if np.iscomplexobj(X):
        raise TypeError("expected a real image")
    check_dyadic(X.shape[0], "image side")
    return X.astype(float)


def symmetric_extend(X):
    """Mirror an ``N x N`` image to ``2N x 2N`` (half-sample symmetric)."""
    n0, n1 = X.shape
    return np.pad(X, ((0, n0), (0, n1)), mode="symmetric")


def forward2d(X, levels, order=4):
    X = _check_image(X)
    N = X.shape[0]
    check_levels(N, levels)
    r = check_order(order)
    zeta_p = qwp_split(X, r, "+", axis=1)
    # the - tree's row stage is the conjugate of the + row stage
    zeta = {"+": zeta_p, "-": tuple(np.conj(z) for z in zeta_p)}
    trees = {}
    for sign in SIGNS:
        tree = {}
        for l, z in enumerate(zeta[sign]):
            tree[(1, 0, l)], tree[(1, 1, l)] = qwp_split(z, r, "+", axis=0)
        _grow(tree, 1, levels, r, 2, (0, 1))
        trees[sign] = tree
    return CoeffForest("qwp2d", N, levels, order, trees)


def _per_tree(forest, basis):
    if isinstance(basis, dict):
        return {s: selection_nodes(forest, basis[s]) for s in SIGNS}
    sel = selection_nodes(forest, basis)
    return {s: sel for s in SIGNS}


def branches2d(forest, basis=None):
    """Return ``(X+, X-)``; ``Re(X+ + X-) / 8`` is the reconstruction.

    ``basis`` is a level, a node selection, or a dict with one selection per tree.
    """
    r = check_order(forest.order)
    sels = _per_tree(forest, basis)
    out = []
    for sign in SIGNS:
        tree = forest.trees[sign]
        first = {node: _collapse(tree, node, sels[sign], r, (0, 1)) for node in level_nodes(1, 2)}
        cols = [qwp_merge(first[(1, 0, l)], first[(1, 1, l)], r, "+", axis=0) for l in (0, 1)]
        out.append(qwp_merge(cols[0], cols[1], r, sign, axis=1))
    return tuple(out)


def inverse2d(forest, basis=None):
    xp, xm = branches2d(forest, basis)
    return (xp.real + xm.real) / 8


# -- atoms and directionality ----------------------------------------------


@dataclass
class DirectionalAtom:
    m: int
    j: int
    l: int
    sign: str
    real: np.ndarray
    imag: np.ndarray
    spectrum: np.ndarray
    centroid: tuple

    @property
    def orientation(self):
        """Orientation vector ``(kappa0, nu0)`` of the modulating cosine."""
        return self.centroid


def _signed_freq(N):
    f = np.arange(N, dtype=float)
    f[f > N // 2] -= N
    return f


def spectral_centroid(spectrum, sign="+"):
    """Energy-weighted centroid of a 2D spectrum; the ``-`` quadrant is read with negative axis-1 frequencies."""
    N = spectrum.shape[0]
    e = np.abs(spectrum) ** 2
    f0 = np.arange(N, dtype=float)
    f1 = np.arange(N, dtype=float) if sign == "+" else _signed_freq(N)
    if sign == "-":
        f1[N // 2] = -N / 2
    total = e.sum()
    return float(f0 @ e.sum(axis=1) / total), float(e.sum(axis=0) @ f1 / total)


def atom2d(m, j, l, sign="+", N=64, order=4):
    """2D qWP ``Psi_{+, sign}`` of level ``m``: real/imaginary waveforms, spectrum and centroid."""
    rows = qwp_spectrum(m, j, N, order, "+")
    cols = qwp_spectrum(m, l, N, order, sign)
    spec = np.outer(rows, cols)
    wave = np.outer(np.fft.ifft(rows), np.fft.ifft(cols))
    return DirectionalAtom(m, j, l, sign, wave.real, wave.imag, spec, spectral_centroid(spec, sign))


def orientation_classes(m, N=None, order=4):
    """Group the level-``m`` atoms of both trees by orientation.

    Each atom's centroid is snapped to its odd band-grid coordinates
    ``(2j+1, +/-(2l+1))``; atoms ``(j, l)`` and ``(j+1, l+1)`` of one tree point in
    approximately the same direction and share a class.  Returns
    ``{class_key: [(sign, j, l), ...]}``.
    """
    if N is None:
        N = max(64, 2 ** (m + 4))
    cell = N / 2 ** (m + 2)
    classes = {}
    for sign in SIGNS:
        s = 1 if sign == "+" else -1
        rows = {j: qwp_spectrum(m, j, N, order, "+") for j in range(2**m)}
        cols = {l: qwp_spectrum(m, l, N, order, sign) for l in range(2**m)}
        for j in range(2**m):
            for l in range(2**m):
                k0, n0 = spectral_centroid(np.outer(rows[j], cols[l]), sign)
                u = 2 * int(round((k0 / cell - 1) / 2)) + 1
                v = 2 * int(round((s * n0 / cell - 1) / 2)) + 1
                classes.setdefault((sign, u - v), []).append((sign, j, l))
    return classes


def orientation_census(m, N=None, order=4):
    """Number of distinct orientations of the level-``m`` real 2D qWPs."""
    return len(orientation_classes(m, N, order))


def exact_angle_count(m):
    """Number of distinct exact angles ``(2j+1) : +/-(2l+1)`` before merging neighbours."""
    angles = {(s, Fraction(2 * j + 1, 2 * l + 1)) for s in (1, -1) for j in range(2**m) for l in range(2**m)}
    return len(angles)
