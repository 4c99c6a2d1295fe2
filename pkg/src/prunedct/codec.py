"""JPEG-like 8x8 block pipeline: block, transform, quantize, reconstruct.

The forward path runs the fast flow-graph plans (8 column passes, then K
row passes) with the scaling diagonal applied as an outer product on the
K x K result; quantization uses the standard luminance table under the
conventional quality-factor scaling.  No entropy coding — the harness
measures transform quality only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import metrics
from .catalog import N_POINTS, TransformSpec
from .plans import count_ops_2d, evaluate_over

# Standard luminance quantization steps (quality 50).
LUMINANCE_QUANT = np.array([
    [16, 11, 10, 16, 24, 40, 51, 61],
    [12, 12, 14, 19, 26, 58, 60, 55],
    [14, 13, 16, 24, 40, 57, 69, 56],
    [14, 17, 22, 29, 51, 87, 80, 62],
    [18, 22, 37, 56, 68, 109, 103, 77],
    [24, 35, 55, 64, 81, 104, 113, 92],
    [49, 64, 78, 87, 103, 121, 120, 101],
    [72, 92, 95, 98, 112, 100, 103, 99],
])

LEVEL_SHIFT = 128.0


@dataclass(frozen=True)
class BlockGrid:
    """An image cut into 8x8 blocks, with padding bookkeeping.

    blocks has shape (n_blocks, 8, 8), row-major over the padded image.
    """

    width: int
    height: int
    pad_right: int
    pad_bottom: int
    blocks: np.ndarray

    def __post_init__(self):
        if (self.width + self.pad_right) % N_POINTS or (self.height + self.pad_bottom) % N_POINTS:
            raise ValueError("padded dimensions must be multiples of 8")

    @property
    def block_rows(self) -> int:
        return (self.height + self.pad_bottom) // N_POINTS

    @property
    def block_cols(self) -> int:
        return (self.width + self.pad_right) // N_POINTS


@dataclass(frozen=True)
class QuantTable:
    values: np.ndarray  # (K, K) positive integer steps

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("quantization table must be square")
        if np.any(v < 1):
            raise ValueError("quantization steps must be >= 1")


def luminance_table(quality: int = 50, k: int = N_POINTS, unit: bool = False) -> QuantTable:
    """Luminance steps scaled by the conventional quality-factor formula.

    quality 50 returns the table unchanged; unit=True forces all steps
    to 1 (round-trip testing).
    """
    if not 1 <= quality <= 100:
        raise ValueError("quality must be in [1, 100]")
    if unit:
        return QuantTable(np.ones((k, k), dtype=int))
    scale = 5000.0 / quality if quality < 50 else 200.0 - 2.0 * quality
    steps = np.floor((LUMINANCE_QUANT * scale + 50.0) / 100.0)
    steps = np.maximum(steps, 1).astype(int)
    return QuantTable(steps[:k, :k])


def partition(img: np.ndarray) -> BlockGrid:
    """Edge-replication pad to multiples of 8, then cut into blocks."""
    img = np.asarray(img)
    if img.ndim != 2 or img.size == 0:
        raise ValueError("expected a non-empty 2-D grayscale image")
    height, width = img.shape
    pad_bottom = (-height) % N_POINTS
    pad_right = (-width) % N_POINTS
    padded = np.pad(img, ((0, pad_bottom), (0, pad_right)), mode="edge")
    rows, cols = padded.shape[0] // N_POINTS, padded.shape[1] // N_POINTS
    blocks = (
        padded.reshape(rows, N_POINTS, cols, N_POINTS)
        .transpose(0, 2, 1, 3)
        .reshape(rows * cols, N_POINTS, N_POINTS)
    )
    return BlockGrid(width, height, pad_right, pad_bottom, blocks)


def reassemble(grid: BlockGrid) -> np.ndarray:
    """Invert partition, stripping any padding."""
    rows, cols = grid.block_rows, grid.block_cols
    padded = (
        grid.blocks.reshape(rows, cols, N_POINTS, N_POINTS)
        .transpose(0, 2, 1, 3)
        .reshape(rows * N_POINTS, cols * N_POINTS)
    )
    return padded[: grid.height, : grid.width]


def _kernel_1d(spec: TransformSpec, x: np.ndarray) -> np.ndarray:
    """Unscaled 1-D kernel over columns of x, shape (8, m) -> (K, m)."""
    if spec.plan is not None:
        return evaluate_over(spec.plan, x)
    return spec.kernel @ x


def _forward_kernel_blocks(spec: TransformSpec, blocks: np.ndarray) -> np.ndarray:
    """Unscaled 2-D kernel T·A·Tᵀ over a stack of blocks (n, 8, 8)."""
    n = blocks.shape[0]
    k = spec.prune_K
    cols = blocks.transpose(1, 0, 2).reshape(N_POINTS, n * N_POINTS)
    y = _kernel_1d(spec, cols).reshape(k, n, N_POINTS)
    rows = y.transpose(2, 1, 0).reshape(N_POINTS, n * k)
    z = _kernel_1d(spec, rows).reshape(k, n, k)
    return z.transpose(1, 2, 0)


def forward_2d_blocks(spec: TransformSpec, blocks: np.ndarray) -> np.ndarray:
    """Scaled 2-D transform of a stack of blocks: S·T·A·Tᵀ·S per block."""
    s = spec.scaling.values
    return _forward_kernel_blocks(spec, blocks) * np.outer(s, s)


def forward_2d(spec: TransformSpec, block: np.ndarray) -> np.ndarray:
    """2-D transform of one 8x8 block via the fast plan, K x K result."""
    block = np.asarray(block, dtype=np.float64)
    if block.shape != (N_POINTS, N_POINTS):
        raise ValueError(f"expected an 8x8 block, got {block.shape}")
    return forward_2d_blocks(spec, block[None])[0]


def inverse_2d_blocks(spec: TransformSpec, coeffs: np.ndarray) -> np.ndarray:
    c_hat = spec.scaled
    return np.einsum("ki,nkl,lj->nij", c_hat, coeffs, c_hat, optimize=True)


def inverse_2d(spec: TransformSpec, coeffs: np.ndarray) -> np.ndarray:
    """Reconstruction Ĉᵀ·B·Ĉ; Ĉᵀ is the generalized inverse of Ĉ."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    k = spec.prune_K
    if coeffs.shape != (k, k):
        raise ValueError(f"expected a {k}x{k} coefficient block, got {coeffs.shape}")
    return inverse_2d_blocks(spec, coeffs[None])[0]


def _round_half_away(x: np.ndarray) -> np.ndarray:
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def quantize(coeffs: np.ndarray, table: QuantTable) -> np.ndarray:
    """Entrywise round(coeff / step), half away from zero, as integers."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if coeffs.shape[-2:] != table.values.shape:
        raise ValueError("coefficient block and table dimensions differ")
    return _round_half_away(coeffs / table.values).astype(np.int64)


def dequantize(q: np.ndarray, table: QuantTable) -> np.ndarray:
    if np.asarray(q).shape[-2:] != table.values.shape:
        raise ValueError("coefficient block and table dimensions differ")
    return np.asarray(q, dtype=np.float64) * table.values


def _check_8bit(img: np.ndarray) -> np.ndarray:
    img = np.asarray(img)
    if img.size == 0:
        raise ValueError("empty image")
    if img.ndim != 2:
        raise ValueError("expected a 2-D grayscale image")
    if img.dtype == np.uint8:
        return img
    if np.issubdtype(img.dtype, np.integer) and img.min() >= 0 and img.max() <= 255:
        return img.astype(np.uint8)
    raise ValueError("unsupported bit depth: need 8-bit samples in [0, 255]")


def compress_image(img, spec: TransformSpec, quality: int = 50, *,
                   quant_unit: bool = False, folded: bool = False):
    """Blocked transform-quantize-reconstruct round trip.

    Level-shifts by -128, forward transforms, quantizes with the scaled
    luminance table (top-left K x K for pruned transforms), dequantizes,
    inverse transforms, shifts back, and clamps to [0, 255].  folded=True
    merges the scaling diagonal into the quantization step instead of
    applying it to the coefficients; the quantized integers are identical.
    Returns (reconstructed uint8 image, QualityReport).
    """
    img = _check_8bit(img)
    grid = partition(img)
    shifted = grid.blocks.astype(np.float64) - LEVEL_SHIFT
    table = luminance_table(quality, spec.prune_K, unit=quant_unit)
    s = spec.scaling.values
    if folded:
        merged = np.outer(s, s) / table.values
        q = _round_half_away(_forward_kernel_blocks(spec, shifted) * merged)
    else:
        q = _round_half_away(forward_2d_blocks(spec, shifted) / table.values)
    recon_blocks = inverse_2d_blocks(spec, q * table.values) + LEVEL_SHIFT
    recon_blocks = np.clip(np.round(recon_blocks), 0.0, 255.0)
    recon = reassemble(
        BlockGrid(grid.width, grid.height, grid.pad_right, grid.pad_bottom, recon_blocks)
    ).astype(np.uint8)
    report = metrics.QualityReport(
        psnr=metrics.psnr(img, recon),
        ssim=metrics.ssim(img, recon) if min(img.shape) >= 11 else None,
        energy_ratio=None,
        op_count_2d=count_ops_2d(spec),
        transform_name=spec.name,
        prune_K=spec.prune_K,
    )
    return recon, report
