"""Matplotlib figures rendered next to report files.

Every report-writing CLI command drops a PNG beside its CSV/JSON output
unless figures are disabled.  The Agg backend keeps this headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def quality_bars(rows, path):
    """PSNR and SSIM bars per transform; rows are report dicts."""
    names = [r["transform"] for r in rows]
    psnrs = [0.0 if r["psnr_db"] is None else min(r["psnr_db"], 99.0) for r in rows]
    ssims = [r["ssim"] if r["ssim"] is not None else 0.0 for r in rows]
    x = np.arange(len(names))
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.bar(x, psnrs, color="#4878d0")
    ax1.set_xticks(x, names, rotation=45, ha="right")
    ax1.set_ylabel("PSNR (dB)")
    ax2.bar(x, ssims, color="#ee854a")
    ax2.set_xticks(x, names, rotation=45, ha="right")
    ax2.set_ylabel("SSIM")
    ax2.set_ylim(0, 1)
    for ax in (ax1, ax2):
        ax.grid(axis="y", alpha=0.3)
    return _finish(fig, path)


def complexity_bars(rows, path):
    """Stacked 2-D adds+shifts per transform."""
    names = [r["transform"] for r in rows]
    adds = [r["adds_2d"] for r in rows]
    shifts = [r["shifts_2d"] for r in rows]
    x = np.arange(len(names))
    fig, ax = plt.subplots(figsize=(7, 3.6))
    ax.bar(x, adds, label="additions", color="#4878d0")
    ax.bar(x, shifts, bottom=adds, label="bit-shifts", color="#d65f5f")
    ax.set_xticks(x, names, rotation=45, ha="right")
    ax.set_ylabel("2-D operations")
    ax.legend()
    ax.grid(axis="y", alpha=0.3)
    return _finish(fig, path)


def energy_curves(curves, path):
    """Energy captured vs K; curves maps label -> list of 8 fractions."""
    fig, ax = plt.subplots(figsize=(6, 3.8))
    ks = np.arange(1, 9)
    for label, vals in curves.items():
        ax.plot(ks, 100.0 * np.asarray(vals), marker="o", label=label)
    ax.set_xlabel("retained coefficients K")
    ax.set_ylabel("energy captured (%)")
    ax.grid(alpha=0.3)
    ax.legend()
    return _finish(fig, path)


def reconstruction_panel(original, recon, title, path):
    """Original, reconstruction, and amplified absolute error."""
    err = np.abs(original.astype(float) - recon.astype(float))
    fig, axes = plt.subplots(1, 3, figsize=(10, 3.8))
    for ax, img, name in zip(
        axes,
        (original, recon, err),
        ("original", title, "abs error (x4)"),
    ):
        shown = np.clip(img * 4, 0, 255) if name.startswith("abs") else img
        ax.imshow(shown, cmap="gray", vmin=0, vmax=255, interpolation="nearest")
        ax.set_title(name, fontsize=9)
        ax.axis("off")
    return _finish(fig, path)
