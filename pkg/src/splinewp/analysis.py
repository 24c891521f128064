"""Best-basis selection, rank thresholds and hard-threshold denoising."""

import json
from dataclasses import dataclass, field

import numpy as np

from .forest import children, level_nodes
from .qwp2d import branches2d, forward2d, symmetric_extend
from .spectral import psnr
from .wp1d import wp2d_forward, wp2d_inverse

COSTS = ("entropy", "l1")


def cost(z, kind="entropy", norm=None):
    """Cost of a coefficient block.

    ``entropy`` is ``-sum p log p`` with ``p = |z|^2 / norm``; ``norm`` defaults to
    the block energy.  Pass the energy of the whole tree as ``norm`` to make the
    cost additive over blocks, which the best-basis search relies on.
    """
    a = np.abs(np.asarray(z)).ravel()
    if kind == "l1":
        return float(a.sum())
    if kind != "entropy":
        raise ValueError(f"unknown cost {kind!r}; expected one of {COSTS}")
    e = a**2
    total = e.sum() if norm is None else float(norm)
    if total <= 0:
        return 0.0
    p = e[e > 0] / total
    return float(-(p * np.log(p)).sum())


@dataclass
class BasisSelection:
    """Selected nodes per tree tag (``""`` for a real forest, ``"+"``/``"-"`` for a dual tree)."""

    nodes: dict = field(default_factory=dict)
    costs: dict = field(default_factory=dict)

    def __getitem__(self, tag):
        return self.nodes[tag]

    @property
    def tags(self):
        return tuple(self.nodes)

    def node_list(self):
        return [(tag, *node) for tag in self.nodes for node in sorted(self.nodes[tag])]

    def basis_arg(self):
        """The form accepted by the inverse transforms."""
        if set(self.nodes) == {""}:
            return self.nodes[""]
        return dict(self.nodes)


def _best(tree, node, levels, kind, norm, out):
    c = cost(tree[node], kind, norm)
    if node[0] == levels:
        out.add(node)
        return c
    kids = set()
    ck = sum(_best(tree, k, levels, kind, norm, kids) for k in children(node))
    # round-off in empty bands must not break a tie in favour of the children
    if c <= ck + 1e-12 * max(1.0, abs(c), abs(ck)):
        out.add(node)
        return c
    out.update(kids)
    return ck


def best_basis(forest, kind="entropy"):
    """Bottom-up parent/children comparison on every tree of ``forest``; ties keep the parent."""
    if kind not in COSTS:
        raise ValueError(f"unknown cost {kind!r}; expected one of {COSTS}")
    sel = BasisSelection()
    for tag, tree in forest.trees.items():
        norm = forest.energy(1, tag) if kind == "entropy" else None
        nodes = set()
        total = sum(_best(tree, root, forest.levels, kind, norm, nodes) for root in level_nodes(1, forest.ndim))
        sel.nodes[tag] = frozenset(nodes)
        sel.costs[tag] = total
    return sel


def is_partition(nodes, levels, ndim):
    """True when ``nodes`` tile the frequency plane: every deepest-level node has exactly one selected ancestor-or-self."""
    nodes = set(nodes)
    for leaf in level_nodes(levels, ndim):
        hits = 0
        m, *bands = leaf
        for k in range(m, 0, -1):
            if (k, *[b >> (m - k) for b in bands]) in nodes:
                hits += 1
        if hits != 1:
            return False
    return True


def selected_coefficients(forest, selection, tag):
    tree = forest.trees[tag]
    return [tree[node] for node in sorted(selection[tag])]


def threshold_from_rank(coeff_sets, L):
    """Return the ``L``-th smallest magnitude (1-based) over ``coeff_sets``; ``L = 0`` gives 0."""
    a = np.sort(np.concatenate([np.abs(np.asarray(c)).ravel() for c in coeff_sets]))
    L = int(L)
    if L < 0 or L > a.size:
        raise ValueError(f"rank L must lie in [0, {a.size}], got {L}")
    return 0.0 if L == 0 else float(a[L - 1])


def hard_threshold(z, T):
    """Zero entries with ``|z| < T``; entries with ``|z| == T`` are kept."""
    z = np.asarray(z)
    return np.where(np.abs(z) >= T, z, 0)


@dataclass
class ThresholdPlan:
    L: int
    thresholds: dict

    def __getitem__(self, tag):
        return self.thresholds[tag]


@dataclass
class DenoiseReport:
    directional: bool
    order: int
    levels: int
    cost: str
    plan: ThresholdPlan
    basis: list
    psnr: float = None

    def as_dict(self):
        return {
            "directional": self.directional,
            "order": self.order,
            "levels": self.levels,
            "cost": self.cost,
            "rank_L": self.plan.L,
            "thresholds": {(t or "T"): float(f"{v:.6g}") for t, v in self.plan.thresholds.items()},
            "psnr": None if self.psnr is None else float(f"{self.psnr:.6g}"),
            "basis": [list(n) for n in self.basis],
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=1)

    def to_text(self):
        lines = [
            f"transform      {'directional qWP' if self.directional else 'tensor WP'}",
            f"order          {self.order}",
            f"levels         {self.levels}",
            f"cost           {self.cost}",
            f"rank L         {self.plan.L}",
        ]
        for tag, t in self.plan.thresholds.items():
            lines.append(f"threshold {tag or 'T':<4} {t:.6g}")
        if self.psnr is not None:
            lines.append(f"psnr           {self.psnr:.6g}")
        lines.append(f"basis nodes    {len(self.basis)}")
        lines += ["  " + " ".join(str(v) for v in node) for node in self.basis]
        return "\n".join(lines) + "\n"


def suggest_rank(n_coeffs, sigma, peak=255.0):
    """Heuristic rank: keep roughly the coefficients expected to beat ``3 sigma`` noise.

    Only a starting point for the user; nothing depends on it.
    """
    frac = min(0.995, 0.80 + 0.5 * float(sigma) / peak)
    return int(frac * n_coeffs)


def denoise(X_noisy, order=4, levels=4, rank=None, cost_kind="entropy", directional=True, reference=None, extend=False):
    """Best-basis hard-threshold denoising with the directional dual tree or the tensor WP.

    ``rank`` is the number ``L`` of the sorted magnitude used as threshold; the
    same ``L`` applies to each tree.  Returns ``(image, DenoiseReport)``.
    """
    X = np.asarray(X_noisy, dtype=float)
    N = X.shape[0]
    work = symmetric_extend(X) if extend else X
    forest = forward2d(work, levels, order) if directional else wp2d_forward(work, levels, order)
    sel = best_basis(forest, cost_kind)
    if rank is None:
        rank = 0
    thresholds = {}
    for tag in forest.tags:
        T = threshold_from_rank(selected_coefficients(forest, sel, tag), rank)
        thresholds[tag] = T
        tree = forest.trees[tag]
        for node in sel[tag]:
            tree[node] = hard_threshold(tree[node], T)
    if directional:
        xp, xm = branches2d(forest, sel.basis_arg())
        out = (xp.real + xm.real) / 8
    else:
        out = wp2d_inverse(forest, sel.basis_arg())
    out = out[:N, :N]
    report = DenoiseReport(directional, order, levels, cost_kind, ThresholdPlan(int(rank), thresholds), sel.node_list())
    if reference is not None:
        report.psnr = psnr(reference, out)
    return out, report
