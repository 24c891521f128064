"""DFT conventions, discrete-spline generating spectra and the periodic Hilbert transform.

Forward transform carries no factor, inverse carries ``1/N``::

    X[n] = sum_k x[k] w^{-kn},   x[k] = (1/N) sum_n X[n] w^{kn},   w = exp(2i pi / N)

which is exactly :func:`numpy.fft.fft` / :func:`numpy.fft.ifft`.  Spectra are
always stored over ``n = 0..N-1``; negative frequency ``-n`` lives at ``N - n``.
"""

import numpy as np

PSNR_CAP = 400.0


def is_dyadic(n):
    n = int(n)
    return n > 0 and (n & (n - 1)) == 0


def check_dyadic(n, name="length"):
    if not is_dyadic(n):
        raise ValueError(f"{name} must be a positive power of two, got {n}")
    return int(n)


def dft(x, axis=-1):
    x = np.asarray(x)
    check_dyadic(x.shape[axis])
    return np.fft.fft(x, axis=axis)


def idft(X, axis=-1):
    X = np.asarray(X)
    check_dyadic(X.shape[axis])
    return np.fft.ifft(X, axis=axis)


def u4r(n, N, r):
    """Return ``(cos^{4r}(pi n/N) + sin^{4r}(pi n/N)) / 2``; works elementwise on arrays."""
    t = np.pi * np.asarray(n, dtype=float) / N
    return 0.5 * (np.cos(t) ** (4 * r) + np.sin(t) ** (4 * r))


def beta_alpha(N, r, n=None):
    """Low- and high-pass frequency responses of the first-level spline filters.

    Parameters
    ----------
    N : int
        Period.
    r : int
        Spline half-order (the spline has order ``2r``).
    n : array_like of int, optional
        Frequency indices; defaults to ``0..N-1``.

    Returns
    -------
    beta, alpha : ndarray
        ``beta`` is real and even, ``alpha[n] = w^n beta[n + N/2]``.
    """
    if r < 1:
        raise ValueError("spline half-order r must be >= 1")
    if n is None:
        n = np.arange(N)
    n = np.asarray(n)
    t = np.pi * n / N
    root = np.sqrt(u4r(n, N, r))
    beta = np.cos(t) ** (2 * r) / root
    alpha = np.exp(2j * np.pi * (n % N) / N) * np.sin(t) ** (2 * r) / root
    # exact zeros at the band edges so that downstream endpoint rules hold bit-exactly
    beta = np.where(n % N == N // 2, 0.0, beta)
    alpha = np.where(n % N == 0, 0.0, alpha)
    alpha = np.where(n % N == N // 2, -np.sqrt(2.0), alpha)
    return beta, alpha


def half_band_signs(N):
    """Multiplier ``-i`` on ``0 < n < N/2``, ``+i`` on ``N/2 < n < N``, zero at ``0`` and ``N/2``."""
    s = np.zeros(N, dtype=complex)
    s[1 : N // 2] = -1j
    s[N // 2 + 1 :] = 1j
    return s


def hilbert(x, axis=-1):
    """Discrete periodic Hilbert transform of a real signal (along ``axis``).

    Complex input is accepted and transformed linearly; the result is real
    only for real input.
    """
    x = np.asarray(x)
    N = check_dyadic(x.shape[axis])
    X = np.fft.fft(x, axis=axis)
    shape = [1] * x.ndim
    shape[axis] = N
    h = np.fft.ifft(X * half_band_signs(N).reshape(shape), axis=axis)
    return h.real if np.isrealobj(x) else h


def analytic_pair(x):
    """Return the periodic analytic signals ``(x + iH(x), x - iH(x))``."""
    x = np.asarray(x)
    if np.iscomplexobj(x):
        raise TypeError("analytic_pair expects a real signal")
    h = hilbert(x)
    return x + 1j * h, x - 1j * h


def psnr(ref, test, peak=255.0):
    """Peak signal-to-noise ratio in dB; identical inputs give :data:`PSNR_CAP`."""
    ref = np.asarray(ref, dtype=float)
    test = np.asarray(test, dtype=float)
    if ref.shape != test.shape:
        raise ValueError(f"shape mismatch: {ref.shape} vs {test.shape}")
    err = np.sum((ref - test) ** 2)
    if err == 0.0:
        return PSNR_CAP
    value = 10.0 * np.log10(ref.size * peak**2 / err)
    return min(value, PSNR_CAP)
