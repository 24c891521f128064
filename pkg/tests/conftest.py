import numpy as np
import pytest

# (criterion number, line) pairs filled by test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


def naive_dft(x):
    """Direct O(N^2) DFT with the unnormalised forward sum."""
    x = np.asarray(x)
    N = x.shape[-1]
    k = np.arange(N)
    W = np.exp(-2j * np.pi * np.outer(k, k) / N)
    return x @ W.T


def spectral_hilbert(x):
    """Hilbert transform written from its spectral definition with an explicit loop."""
    N = len(x)
    X = naive_dft(x)
    H = np.zeros(N, dtype=complex)
    for n in range(N):
        if 0 < n < N // 2:
            H[n] = -1j * X[n]
        elif n > N // 2:
            H[n] = 1j * X[n]
    return np.fft.ifft(H)


def shifts(atom, step):
    """All circular shifts of a 1D atom by multiples of ``step``, one per row."""
    return np.array([np.roll(atom, step * p) for p in range(len(atom) // step)])


def shifts2d(atom, step):
    n = atom.shape[0] // step
    return [np.roll(atom, (step * a, step * b), axis=(0, 1)) for a in range(n) for b in range(n)]
