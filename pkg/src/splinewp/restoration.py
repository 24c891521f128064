"""Analysis-based split Bregman restoration (deblurring and inpainting) with a qWP sparsity prior."""

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.linalg import LinearOperator, cg

from .forest import CoeffForest, check_order
from .qwp1d import SIGNS
from .qwp2d import branches2d, forward2d
from .spectral import psnr
from .wp1d import selection_nodes


class CGDivergence(ArithmeticError):
    """Raised when the inner conjugate-gradient solve produces non-finite values."""


# -- degradation operators -------------------------------------------------


def _check_kernel(kernel, shape):
    k = np.asarray(kernel, dtype=float)
    if k.ndim != 2 or k.shape[0] % 2 == 0 or k.shape[1] % 2 == 0:
        raise ValueError(f"kernel must be a 2D array with odd sides, got shape {k.shape}")
    if k.shape[0] > shape[0] or k.shape[1] > shape[1]:
        raise ValueError("kernel is larger than the image")
    return k


def kernel_spectrum(kernel, shape):
    """DFT of the kernel placed with its centre at pixel ``(0, 0)`` of a periodic ``shape`` grid."""
    k = _check_kernel(kernel, shape)
    pad = np.zeros(shape)
    pad[: k.shape[0], : k.shape[1]] = k
    pad = np.roll(pad, (-(k.shape[0] // 2), -(k.shape[1] // 2)), axis=(0, 1))
    return np.fft.fft2(pad)


def convolve_periodic(u, kernel, adjoint=False):
    """Circular convolution with ``kernel``; ``adjoint=True`` convolves with the flipped kernel."""
    u = np.asarray(u, dtype=float)
    K = kernel_spectrum(kernel, u.shape)
    if adjoint:
        K = np.conj(K)
    return np.fft.ifft2(np.fft.fft2(u) * K).real


def gaussian_kernel(size=5, sigma=0.5):
    """Normalised ``size x size`` Gaussian."""
    if size % 2 == 0 or size < 1:
        raise ValueError("kernel size must be a positive odd integer")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    t = np.arange(size) - size // 2
    g = np.exp(-(t[:, None] ** 2 + t[None, :] ** 2) / (2.0 * sigma**2))
    return g / g.sum()


def delta_kernel():
    return np.ones((1, 1))


def soft_threshold(z, theta):
    """Shrink magnitudes by ``theta`` and keep the phase (the sign for real input)."""
    z = np.asarray(z)
    mag = np.abs(z)
    scale = np.maximum(0.0, 1.0 - theta / np.where(mag > 0, mag, 1.0))
    return z * np.where(mag > 0, scale, 0.0)


# -- conjugate gradients ---------------------------------------------------


@dataclass
class CGResult:
    x: np.ndarray
    iterations: int
    residual: float
    iterates: list = field(default_factory=list)


def cg_solve(apply_A, rhs, iters=30, tol=1e-6, x0=None, keep_iterates=False):
    """Solve ``A x = rhs`` for a symmetric positive definite ``A`` given as a callable on arrays.

    Stops after ``iters`` iterations or when ``||rhs - A x|| <= tol ||rhs||``.
    """
    rhs = np.asarray(rhs, dtype=float)
    shape = rhs.shape
    size = rhs.size
    op = LinearOperator((size, size), matvec=lambda v: apply_A(v.reshape(shape)).ravel(), dtype=float)
    iterates = []
    count = [0]

    def _track(xk):
        count[0] += 1
        if keep_iterates:
            iterates.append(xk.reshape(shape).copy())

    x0 = None if x0 is None else np.asarray(x0, dtype=float).ravel()
    x, _ = cg(op, rhs.ravel(), x0=x0, rtol=tol, atol=0.0, maxiter=int(iters), callback=_track)
    if not np.all(np.isfinite(x)):
        raise CGDivergence("conjugate gradients produced non-finite values")
    x = x.reshape(shape)
    res = float(np.linalg.norm(rhs - apply_A(x)))
    return CGResult(x, count[0], res, iterates)


# -- qWP frame operators ---------------------------------------------------


class QwpFrame:
    """Analysis ``F~`` into the selected nodes of both trees and reconstruction ``F`` with ``F F~ = I``.

    Coefficients are kept as ``{sign: {node: complex array}}``.
    """

    def __init__(self, n, order=6, basis=3):
        self.n = n
        self.order = order
        check_order(order)
        probe = CoeffForest("qwp2d", n, self._levels(basis), order, {})
        if isinstance(basis, dict):
            self.selection = {s: selection_nodes(probe, basis[s]) for s in SIGNS}
        else:
            sel = selection_nodes(probe, basis)
            self.selection = {s: sel for s in SIGNS}
        self.levels = max(node[0] for sel in self.selection.values() for node in sel)

    @staticmethod
    def _levels(basis):
        if isinstance(basis, (int, np.integer)):
            return int(basis)
        sets = basis.values() if isinstance(basis, dict) else [basis]
        return max(node[0] for s in sets for node in s)

    def analyze(self, u):
        forest = forward2d(u, self.levels, self.order)
        return {s: {node: forest.trees[s][node] for node in self.selection[s]} for s in SIGNS}

    def synthesize(self, coeffs):
        forest = CoeffForest("qwp2d", self.n, self.levels, self.order, coeffs)
        xp, xm = branches2d(forest, self.selection)
        return (xp.real + xm.real) / 8


def _combine(a, b, fn):
    return {s: {node: fn(a[s][node], b[s][node]) for node in a[s]} for s in a}


def _l1(coeffs):
    return float(sum(np.abs(v).sum() for tree in coeffs.values() for v in tree.values()))


# -- split Bregman iteration -----------------------------------------------


@dataclass
class SbiParams:
    lam: float = 0.05
    mu: float = 0.01
    outer_iters: int = 50
    cg_iters: int = 30
    cg_tol: float = 1e-6

    def __post_init__(self):
        if self.lam <= 0 or self.mu <= 0:
            raise ValueError("lambda and mu must be positive")
        if self.outer_iters < 1 or self.cg_iters < 1:
            raise ValueError("iteration counts must be >= 1")


@dataclass
class SbiResult:
    u: np.ndarray
    trace: list
    params: SbiParams


def objective(u, f, kernel, mask, lam, frame):
    r = mask * (convolve_periodic(u, kernel) - f)
    return 0.5 * float(np.sum(r**2)) + lam * _l1(frame.analyze(u))


def sbi_restore(f, kernel=None, mask=None, params=None, order=6, basis=3, reference=None, on_iteration=None):
    """Restore ``u`` from ``P(K u) = P f`` by split Bregman iterations.

    ``basis`` is a level (all nodes of that level in both trees) or a node
    selection.  ``trace`` rows are ``(iteration, objective, psnr)`` with ``psnr``
    measured against ``reference`` (``nan`` without one).  ``on_iteration`` is
    called as ``fn(k, u, Fu, d, b_prev, b)``.
    """
    f = np.asarray(f, dtype=float)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise ValueError("expected a square image")
    params = params or SbiParams()
    kernel = delta_kernel() if kernel is None else _check_kernel(kernel, f.shape)
    mask = np.ones(f.shape) if mask is None else np.asarray(mask, dtype=float)
    if mask.shape != f.shape:
        raise ValueError(f"mask shape {mask.shape} does not match image shape {f.shape}")
    frame = QwpFrame(f.shape[0], order, basis)
    Kspec = kernel_spectrum(kernel, f.shape)
    mu = params.mu
    theta = params.lam / mu

    def K(v):
        return np.fft.ifft2(np.fft.fft2(v) * Kspec).real

    def Kt(v):
        return np.fft.ifft2(np.fft.fft2(v) * np.conj(Kspec)).real

    def A(v):
        return Kt(mask * K(v)) + mu * v

    data = Kt(mask * f)
    u = np.zeros_like(f)
    zero = frame.analyze(u)
    d = {s: {n: np.zeros_like(v) for n, v in t.items()} for s, t in zero.items()}
    b = {s: {n: np.zeros_like(v) for n, v in t.items()} for s, t in zero.items()}
    trace = []
    for k in range(1, params.outer_iters + 1):
        rhs = data + mu * frame.synthesize(_combine(d, b, np.subtract))
        u = cg_solve(A, rhs, params.cg_iters, params.cg_tol, x0=u).x
        Fu = frame.analyze(u)
        d = {s: {n: soft_threshold(Fu[s][n] + b[s][n], theta) for n in Fu[s]} for s in Fu}
        b_prev = b
        b = {s: {n: b_prev[s][n] + (Fu[s][n] - d[s][n]) for n in Fu[s]} for s in Fu}
        obj = 0.5 * float(np.sum((mask * (K(u) - f)) ** 2)) + params.lam * _l1(Fu)
        quality = psnr(reference, u) if reference is not None else float("nan")
        trace.append((k, obj, quality))
        if on_iteration is not None:
            on_iteration(k, u, Fu, d, b_prev, b)
    return SbiResult(u, trace, params)
