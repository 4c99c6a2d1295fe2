"""Quality and energy measurements: PSNR, SSIM, energy compaction."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import correlate1d

from .plans import OpCount

PEAK = 255.0

# SSIM configuration: 11x11 Gaussian window, sigma 1.5, K1/K2 = .01/.03.
_SSIM_RADIUS = 5
_SSIM_SIGMA = 1.5
_SSIM_K1 = 0.01
_SSIM_K2 = 0.03


@dataclass(frozen=True)
class QualityReport:
    """Per-image (or aggregate) quality record."""

    psnr: float
    ssim: float | None
    energy_ratio: float | None
    op_count_2d: OpCount | None
    transform_name: str
    prune_K: int

    def __post_init__(self):
        if not (self.psnr >= 0.0 or math.isinf(self.psnr)):
            raise ValueError("psnr must be non-negative or +inf")
        if self.ssim is not None and self.ssim > 1.0 + 1e-9:
            raise ValueError("ssim cannot exceed 1")
        if self.energy_ratio is not None and not 0.0 <= self.energy_ratio <= 1.0:
            raise ValueError("energy ratio must lie in [0, 1]")


def _as_pair(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"image dimensions differ: {a.shape} vs {b.shape}")
    if a.ndim != 2 or a.size == 0:
        raise ValueError("expected non-empty 2-D grayscale images")
    return a, b


def psnr(a, b) -> float:
    """10·log10(255²/MSE); identical images give +inf."""
    a, b = _as_pair(a, b)
    diff = a - b
    mse = np.mean(diff * diff)
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse)


def _gaussian_taps(sigma: float, radius: int) -> np.ndarray:
    i = np.arange(-radius, radius + 1, dtype=np.float64)
    g = np.exp(-(i * i) / (2.0 * sigma * sigma))
    return g / g.sum()


def _windowed(img: np.ndarray, taps: np.ndarray) -> np.ndarray:
    out = correlate1d(img, taps, axis=0, mode="constant")
    return correlate1d(out, taps, axis=1, mode="constant")


def ssim(a, b) -> float:
    """Mean structural similarity over Gaussian-weighted windows.

    Border pixels whose window leaves the image are cropped out, so the
    result depends only on fully covered windows.
    """
    a, b = _as_pair(a, b)
    size = 2 * _SSIM_RADIUS + 1
    if min(a.shape) < size:
        raise ValueError(f"image too small for {size}x{size} windows")
    taps = _gaussian_taps(_SSIM_SIGMA, _SSIM_RADIUS)
    ux = _windowed(a, taps)
    uy = _windowed(b, taps)
    uxx = _windowed(a * a, taps)
    uyy = _windowed(b * b, taps)
    uxy = _windowed(a * b, taps)
    vx = uxx - ux * ux
    vy = uyy - uy * uy
    vxy = uxy - ux * uy
    c1 = (_SSIM_K1 * PEAK) ** 2
    c2 = (_SSIM_K2 * PEAK) ** 2
    num = (2.0 * ux * uy + c1) * (2.0 * vxy + c2)
    den = (ux * ux + uy * uy + c1) * (vx + vy + c2)
    smap = num / den
    r = _SSIM_RADIUS
    return float(np.mean(smap[r:-r, r:-r]))


def _blocks_x8(img: np.ndarray) -> np.ndarray:
    """Crop to whole 8x8 blocks and stack them, shape (n, 8, 8)."""
    img = np.asarray(img, dtype=np.float64)
    h, w = (img.shape[0] // 8) * 8, (img.shape[1] // 8) * 8
    if h == 0 or w == 0:
        raise ValueError("image smaller than one 8x8 block")
    a = img[:h, :w]
    return a.reshape(h // 8, 8, w // 8, 8).transpose(0, 2, 1, 3).reshape(-1, 8, 8)


def energy_compaction(spec, k: int, images, *, level_shift: bool = False) -> float:
    """Fraction of 2-D transform energy captured by the low K x K corner.

    Runs the full (unpruned) scaled transform of spec on every 8x8 block
    of every image; per image, the ratio of squared coefficients inside
    the upper-left K x K to the total; returns the corpus mean of the
    per-image ratios.  level_shift subtracts 128 from samples first.
    """
    if not 1 <= k <= 8:
        raise ValueError("K must be in [1, 8]")
    if spec.prune_K != 8:
        raise ValueError("energy compaction needs the unpruned transform")
    images = list(images)
    if not images:
        raise ValueError("empty corpus")
    c_hat = spec.scaled
    ratios = []
    for img in images:
        blocks = _blocks_x8(img)
        if level_shift:
            blocks = blocks - 128.0
        coeffs = np.einsum("ik,nkl,jl->nij", c_hat, blocks, c_hat, optimize=True)
        sq = coeffs * coeffs
        total = sq.sum()
        if total == 0.0:
            ratios.append(1.0)
            continue
        ratios.append(float(sq[:, :k, :k].sum() / total))
    return float(np.mean(ratios))
