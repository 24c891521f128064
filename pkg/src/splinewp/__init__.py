"""Periodic discrete-spline wavelet packets, their quasi-analytic directional extension and restoration tools."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from .analysis import best_basis, cost, denoise, hard_threshold, threshold_from_rank
from .forest import CoeffForest, band_order_rho
from .qwp1d import (
    cwp_cascade,
    cwp_spectrum,
    qwp_multi_level_forward,
    qwp_multi_level_inverse,
    qwp_one_level_forward,
    qwp_round_trip_analytic,
)
from .qwp2d import atom2d, forward2d, inverse2d, orientation_census
from .restoration import SbiParams, cg_solve, convolve_periodic, sbi_restore, soft_threshold
from .spectral import analytic_pair, beta_alpha, dft, hilbert, idft, psnr, u4r
from .wp1d import multi_level_forward, multi_level_inverse, one_level_forward, one_level_inverse, waveform

__all__ = [
    "CoeffForest",
    "SbiParams",
    "analytic_pair",
    "atom2d",
    "band_order_rho",
    "best_basis",
    "beta_alpha",
    "cg_solve",
    "convolve_periodic",
    "cost",
    "cwp_cascade",
    "cwp_spectrum",
    "denoise",
    "dft",
    "forward2d",
    "hard_threshold",
    "hilbert",
    "idft",
    "inverse2d",
    "multi_level_forward",
    "multi_level_inverse",
    "one_level_forward",
    "one_level_inverse",
    "orientation_census",
    "psnr",
    "qwp_multi_level_forward",
    "qwp_multi_level_inverse",
    "qwp_one_level_forward",
    "qwp_round_trip_analytic",
    "sbi_restore",
    "soft_threshold",
    "threshold_from_rank",
    "u4r",
    "waveform",
]
