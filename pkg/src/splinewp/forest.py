"""Coefficient forests and the tree bookkeeping shared by every transform."""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

KINDS = ("wp1d", "qwp1d", "wp2d", "qwp2d")


def band_order_rho(lam, mu):
    """Frequency-ordered index of the child of band ``lam`` produced by filter ``mu``."""
    if mu not in (0, 1):
        raise ValueError("filter index mu must be 0 or 1")
    return 2 * lam + mu if lam % 2 == 0 else 2 * lam + 1 - mu


def filter_path(m, l):
    """Filter indices ``(mu_1, ..., mu_m)`` that lead from the root to band ``l`` of level ``m``."""
    if not 0 <= l < 2**m:
        raise ValueError(f"band {l} out of range for level {m}")
    path = []
    for _ in range(m):
        lam, bit = divmod(l, 2)
        path.append(bit if lam % 2 == 0 else 1 - bit)
        l = lam
    return tuple(reversed(path))


def natural_index(m, l):
    """Natural (filter-path, Paley) index of frequency-ordered band ``l``."""
    idx = 0
    for mu in filter_path(m, l):
        idx = 2 * idx + mu
    return idx


def frequency_index(m, k):
    """Inverse of :func:`natural_index`."""
    l = 0
    for s in range(m - 1, -1, -1):
        l = band_order_rho(l, (k >> s) & 1)
    return l


def children(node):
    """Child nodes of a 1D ``(m, l)`` or 2D ``(m, j, l)`` node in frequency order."""
    m, *bands = node
    kids = [[band_order_rho(b, 0), band_order_rho(b, 1)] for b in bands]
    return [(m + 1, *c) for c in product(*kids)]


def parent(node):
    m, *bands = node
    if m <= 1:
        return None
    return (m - 1, *[b // 2 for b in bands])


def level_nodes(m, ndim):
    return [(m, *b) for b in product(range(2**m), repeat=ndim)]


@dataclass
class CoeffForest:
    """All decomposition levels of a (quasi-analytic) wavelet-packet transform.

    ``trees`` maps a tree tag to ``{node: array}``.  The real transforms use the
    single tag ``""``; the quasi-analytic ones use ``"+"`` and ``"-"``.  Nodes are
    ``(m, l)`` in 1D and ``(m, j, l)`` in 2D, with ``j`` indexing axis 0.
    """

    kind: str
    n: int
    levels: int
    order: int
    trees: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown forest kind {self.kind!r}")

    @property
    def ndim(self):
        return 2 if self.kind.endswith("2d") else 1

    @property
    def is_complex(self):
        return self.kind.startswith("q")

    @property
    def tags(self):
        return tuple(self.trees)

    def nodes(self, m):
        return level_nodes(m, self.ndim)

    def level(self, m, tag=None):
        tag = self._tag(tag)
        return [self.trees[tag][node] for node in self.nodes(m)]

    def __getitem__(self, key):
        if isinstance(key, tuple) and key and isinstance(key[0], str):
            tag, node = key[0], key[1:]
            return self.trees[tag][node]
        return self.trees[self._tag(None)][key]

    def _tag(self, tag):
        if tag is None:
            if len(self.trees) != 1:
                raise KeyError("forest has several trees; pass a tag")
            return next(iter(self.trees))
        return tag

    def energy(self, m, tag=None):
        return float(sum(np.sum(np.abs(a) ** 2) for a in self.level(m, tag)))

    def copy(self):
        trees = {t: {k: v.copy() for k, v in tree.items()} for t, tree in self.trees.items()}
        return CoeffForest(self.kind, self.n, self.levels, self.order, trees)


def check_levels(n, levels):
    """Deepest band must still hold at least four samples."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if 2**levels > n // 4:
        raise ValueError(f"{levels} levels need 2**levels <= N/4, but N = {n}")
    return int(levels)


def check_order(order):
    order = int(order)
    if order < 2 or order % 2 or order > 24:
        raise ValueError(f"spline order must be an even integer in [2, 24], got {order}")
    return order // 2
