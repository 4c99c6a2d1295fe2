"""Shared fixtures: a small standard-image corpus and cached quality runs."""

import os

import numpy as np
import pytest

import prunedct

# Standard test images shipped with scikit-image; color ones are reduced
# to luminance the same way the CLI does.
CORPUS_NAMES = (
    "camera", "moon", "astronaut", "coffee", "brick",
    "grass", "page", "coins", "text",
)

# Transforms whose corpus-average quality the acceptance criteria compare.
QUALITY_NAMES = ("dct", "sdct", "rdct", "lodct", "mrdct", "lodct-p4", "mrdct-p6")

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def _luma(img):
    if img.ndim == 2:
        return img
    r = img[..., 0].astype(np.int64)
    g = img[..., 1].astype(np.int64)
    b = img[..., 2].astype(np.int64)
    return ((299 * r + 587 * g + 114 * b + 500) // 1000).astype(np.uint8)


@pytest.fixture(scope="session")
def corpus():
    import skimage.data as data

    return {name: _luma(getattr(data, name)()) for name in CORPUS_NAMES}


@pytest.fixture(scope="session")
def corpus_dir(corpus, tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    for name, img in corpus.items():
        prunedct.write_pgm(d / f"{name}.pgm", img)
    return d


@pytest.fixture(scope="session")
def quality_table(corpus):
    """Per-transform corpus-average PSNR/SSIM at default quality 50."""
    table = {}
    for name in QUALITY_NAMES:
        spec = prunedct.get_transform(name)
        psnrs, ssims, per_image = [], [], {}
        for img_name, img in corpus.items():
            _, report = prunedct.compress_image(img, spec, 50)
            psnrs.append(report.psnr)
            ssims.append(report.ssim)
            per_image[img_name] = report.psnr
        table[name] = {
            "psnr": float(np.mean(psnrs)),
            "ssim": float(np.mean(ssims)),
            "per_image": per_image,
        }
    return table


@pytest.fixture(scope="session")
def canonical_images():
    """Optional drop-in 512x512 originals (lena.pgm, peppers.pgm).

    Not distributable with the package; tests that need them fall back
    to corpus-level assertions when the files are absent.
    """
    found = {}
    for name in ("lena", "peppers"):
        path = os.path.join(DATA_DIR, f"{name}.pgm")
        if os.path.exists(path):
            found[name] = prunedct.read_pgm(path)
    return found
