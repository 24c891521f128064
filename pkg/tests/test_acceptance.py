"""Acceptance suite: one test per criterion, each adding a PASS/FAIL line to the terminal summary.

Run on its own with ``python tests/test_acceptance.py`` or ``pytest tests/test_acceptance.py``.
"""

import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, shifts, spectral_hilbert
from splinewp.analysis import denoise
from splinewp.qwp1d import (
    cwp_cascade,
    cwp_spectrum,
    cwp_waveform,
    qwp_branches,
    qwp_cascade,
    qwp_multi_level_forward,
    qwp_spectrum,
)
from splinewp.qwp2d import atom2d, forward2d, inverse2d, orientation_census
from splinewp.restoration import SbiParams, cg_solve, convolve_periodic, delta_kernel, gaussian_kernel, sbi_restore
from splinewp.spectral import psnr
from splinewp.synthetic import oriented_texture, piecewise_smooth, random_mask
from splinewp.wp1d import waveform


def record(k, ok, detail):
    ACCEPTANCE_LINES.append((k, f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"))
    assert ok, detail


def test_criterion_01_perfect_reconstruction_2d():
    X = np.random.default_rng(1).uniform(0, 255, (256, 256))
    worst, slowest = np.inf, 0.0
    for order in (4, 6, 8, 10):
        for levels in (1, 2, 3, 4):
            t0 = time.perf_counter()
            value = psnr(X, inverse2d(forward2d(X, levels, order)))
            slowest = max(slowest, time.perf_counter() - t0)
            worst = min(worst, value)
    record(1, worst > 250 and slowest < 5, f"min PSNR {worst:.6g} dB > 250, slowest case {slowest:.3g} s < 5")


def test_criterion_02_analytic_pair():
    rng = np.random.default_rng(2)
    worst = 0.0
    for n in (64, 128, 256, 512, 1024):
        for order in (2, 4, 8, 12):
            x = rng.standard_normal(n)
            h = spectral_hilbert(x).real
            sp, sm = qwp_branches(qwp_multi_level_forward(x, 1, order))
            worst = max(worst, np.abs(sp - 2 * (x + 1j * h)).max(), np.abs(sm - 2 * (x - 1j * h)).max())
    record(2, worst < 1e-9, f"max |S+- - 2(x +- iHx)| = {worst:.3g} < 1e-9")


def test_criterion_03_gram_identity():
    N, worst = 128, 0.0
    for order in (4, 6, 10):
        for m in (1, 2, 3):
            for atom in (waveform, cwp_waveform):
                # every band, the endpoint-corrected l = 0 and l = 2**m - 1 included
                A = np.vstack([shifts(atom(m, l, N, order), 2**m) for l in range(2**m)])
                worst = max(worst, np.abs(A @ A.T - np.eye(N)).max())
    record(3, worst < 1e-9, f"max |Gram - I| over psi and phi shifts = {worst:.3g} < 1e-9")


def test_criterion_04_parseval():
    rng = np.random.default_rng(4)
    worst = 0.0
    for order in (2, 6, 10):
        x = rng.standard_normal(256)
        q = qwp_multi_level_forward(x, 5, order)
        for m in range(1, 6):
            y = np.concatenate(q.level(m, "+")).real
            c = -np.concatenate(q.level(m, "+")).imag
            worst = max(worst, abs(np.sum(y**2) + np.sum(c**2) - 2 * np.sum(x**2)) / (2 * np.sum(x**2)))
    record(4, worst < 1e-9, f"max relative Parseval defect {worst:.3g} < 1e-9")


def test_criterion_05_analyticity():
    N, worst = 256, 0.0
    for order in (4, 6, 10):
        for m in (2, 3, 4, 5):
            for l in range(1, 2**m - 1):
                plus = qwp_spectrum(m, l, N, order, "+")
                minus = qwp_spectrum(m, l, N, order, "-")
                worst = max(
                    worst,
                    np.linalg.norm(plus[N // 2 + 1 :]) / np.linalg.norm(plus),
                    np.linalg.norm(minus[1 : N // 2]) / np.linalg.norm(minus),
                )
    record(5, worst < 1e-10, f"max interior-band leakage {worst:.3g} < 1e-10")


def test_criterion_06_direction_census():
    counts = {m: orientation_census(m) for m in (2, 3, 4)}
    record(6, counts == {2: 14, 3: 30, 4: 62}, f"directions per level {counts}, expected 14/30/62")


def test_criterion_07_worked_centroid():
    k0, n0 = atom2d(3, 2, 5, "+", 512, 10).centroid
    ok = abs(k0 - 78) <= 2 and abs(n0 - 178) <= 2
    record(7, ok, f"centroid ({k0:.6g}, {n0:.6g}) within 2 bins of (78, 178)")


def test_criterion_08_denoising_gain():
    n, sigma = 256, 30.0
    L = int(0.95 * n * n)
    gains = []
    for seed in (0, 1, 2):
        X = oriented_texture(n, seed)
        noisy = X + sigma * np.random.default_rng(100 + seed).standard_normal(X.shape)
        _, directional = denoise(noisy, 4, 4, L, "entropy", True, reference=X)
        _, tensor = denoise(noisy, 4, 4, L, "entropy", False, reference=X)
        gains.append(directional.psnr - tensor.psnr)
    text = ", ".join(f"{g:.3g}" for g in gains)
    record(8, min(gains) >= 1.0, f"directional minus tensor PSNR per seed [{text}] dB >= 1")


def test_criterion_09_inpainting():
    rng = np.random.default_rng(9)
    X = piecewise_smooth(256, seed=0)
    mask = random_mask(X.shape, 0.5, seed=1)
    res = sbi_restore(X * mask, delta_kernel(), mask, SbiParams(1.0, 0.05, 50, 30), order=6, basis=3)
    gain = psnr(X, res.u) - psnr(X, X * mask)

    # adjoint identity of the blur and symmetry of the CG operator
    u, v = rng.standard_normal((64, 64)), rng.standard_normal((64, 64))
    k = gaussian_kernel(5, 0.5) + 0.1 * rng.standard_normal((5, 5))
    adj = abs(np.sum(convolve_periodic(u, k) * v) - np.sum(u * convolve_periodic(v, k, adjoint=True)))
    m64 = random_mask((64, 64), 0.5, seed=2)

    def A(w):
        return convolve_periodic(m64 * convolve_periodic(w, k), k, adjoint=True) + 0.05 * w

    sym = abs(np.sum(A(u) * v) - np.sum(u * A(v)))
    # with every pixel observed and K the identity, one CG step solves (1 + mu) I exactly
    cg = np.abs(cg_solve(lambda w: 1.05 * w, u, iters=1).x - u / 1.05).max()
    ok = gain >= 15 and max(adj, sym, cg) < 1e-10
    record(9, ok, f"PSNR gain {gain:.4g} dB >= 15, adjoint {adj:.2g}, symmetry {sym:.2g}, one-step CG {cg:.2g} < 1e-10")


def test_criterion_10_cascade_equivalence():
    N, worst = 128, 0.0
    for order in (2, 4, 6, 10):
        for m in (1, 2, 3):
            for l in range(2**m):
                worst = max(worst, np.abs(cwp_cascade(m, l, N, order) - cwp_spectrum(m, l, N, order)).max())
                for sign in "+-":
                    worst = max(worst, np.abs(qwp_cascade(m, l, N, order, sign) - qwp_spectrum(m, l, N, order, sign)).max())
    record(10, worst < 1e-12, f"max |cascade - closed form| = {worst:.3g} < 1e-12")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
