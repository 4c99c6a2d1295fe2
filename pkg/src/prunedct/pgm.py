"""Grayscale image I/O: binary PGM (P5) natively, PNG via Pillow if present.

Color inputs are reduced to luminance with integer BT.601 weights,
(299·R + 587·G + 114·B + 500) // 1000.
"""

from __future__ import annotations

import os

import numpy as np


def _luma(img: np.ndarray) -> np.ndarray:
    if img.ndim == 2:
        return img
    r = img[..., 0].astype(np.int64)
    g = img[..., 1].astype(np.int64)
    b = img[..., 2].astype(np.int64)
    return ((299 * r + 587 * g + 114 * b + 500) // 1000).astype(np.uint8)


def _read_header_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # skip whitespace and '#' comment lines between header fields
    n = len(data)
    while pos < n:
        c = data[pos:pos + 1]
        if c.isspace():
            pos += 1
        elif c == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos:pos + 1].isspace():
        pos += 1
    if start == pos:
        raise ValueError("truncated PGM header")
    return data[start:pos], pos


def read_pgm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:2] != b"P5":
        raise ValueError(f"{path}: not a binary (P5) PGM file")
    pos = 2
    fields = []
    for _ in range(3):
        token, pos = _read_header_token(data, pos)
        if not token.isdigit():
            raise ValueError(f"{path}: bad PGM header field {token!r}")
        fields.append(int(token))
    width, height, maxval = fields
    if maxval != 255:
        raise ValueError(f"{path}: unsupported maxval {maxval} (need 255)")
    pos += 1  # single whitespace byte after maxval
    raster = data[pos:pos + width * height]
    if len(raster) != width * height:
        raise ValueError(f"{path}: truncated raster")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width)


def write_pgm(path, img: np.ndarray) -> None:
    img = np.asarray(img)
    if img.dtype != np.uint8 or img.ndim != 2:
        raise ValueError("write_pgm needs a 2-D uint8 array")
    header = f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(img.tobytes())


def read_image(path) -> np.ndarray:
    """Read a grayscale image; PGM always, PNG when Pillow is installed."""
    ext = os.path.splitext(str(path))[1].lower()
    if ext in (".pgm", ".pnm"):
        return read_pgm(path)
    if ext == ".png":
        try:
            from PIL import Image
        except ImportError as exc:
            raise ValueError("PNG support needs the optional Pillow dependency") from exc
        img = np.asarray(Image.open(path))
        if img.dtype != np.uint8:
            raise ValueError(f"{path}: unsupported bit depth (need 8-bit)")
        return _luma(img)
    raise ValueError(f"{path}: unsupported image format {ext!r}")


def write_image(path, img: np.ndarray) -> None:
    ext = os.path.splitext(str(path))[1].lower()
    if ext == ".png":
        try:
            from PIL import Image
        except ImportError as exc:
            raise ValueError("PNG support needs the optional Pillow dependency") from exc
        Image.fromarray(img, mode="L").save(path)
        return
    write_pgm(path, img)
