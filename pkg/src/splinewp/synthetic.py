"""Seeded synthetic test images."""

import numpy as np


def oriented_texture(n=256, seed=0, waves=6):
    """Sum of plane waves with random orientations and frequencies, scaled to ``28..228``."""
    rng = np.random.default_rng(seed)
    k, m = np.mgrid[0:n, 0:n] / n
    X = np.zeros((n, n))
    for _ in range(waves):
        theta = rng.uniform(0, np.pi)
        freq = rng.uniform(8, 40) * n / 256
        phase = rng.uniform(0, 2 * np.pi)
        X += np.cos(2 * np.pi * freq * (np.cos(theta) * k + np.sin(theta) * m) + phase)
    return 128 + 100 * X / np.abs(X).max()


def piecewise_smooth(n=256, seed=0, blobs=5):
    """Smooth background plus a few discs and a half-plane step, clipped to ``0..255``."""
    rng = np.random.default_rng(seed)
    k, m = np.mgrid[0:n, 0:n] / n
    X = 60 + 40 * np.sin(2 * np.pi * k) * np.cos(2 * np.pi * m) + 50 * k
    for _ in range(blobs):
        c = rng.uniform(0.2, 0.8, 2)
        rad = rng.uniform(0.05, 0.2)
        X += rng.uniform(-60, 60) * (((k - c[0]) ** 2 + (m - c[1]) ** 2) < rad**2)
    X += 60 * ((k + 0.5 * m) > 0.9)
    return np.clip(X, 0, 255)


def random_mask(shape, keep=0.5, seed=0):
    """Float mask with ones on a seeded random ``keep`` fraction of pixels."""
    return (np.random.default_rng(seed).random(shape) < keep).astype(float)
