import json
import os

import numpy as np
import pytest

from prunedct import write_pgm
from prunedct.cli import main


@pytest.fixture()
def small_image(tmp_path):
    rng = np.random.default_rng(83)
    img = rng.integers(0, 256, size=(40, 56)).astype(np.uint8)
    path = tmp_path / "small.pgm"
    write_pgm(path, img)
    return path


def test_list_shows_counts_and_placeholders(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    mrdct_p6 = next(line for line in out.splitlines() if line.startswith("mrdct-p6"))
    assert "K=6" in mrdct_p6 and "adds_1d=12" in mrdct_p6 and "adds_2d=168" in mrdct_p6
    lodct_p4 = next(line for line in out.splitlines() if line.startswith("lodct-p4"))
    assert "K=4" in lodct_p4 and "adds_1d=18" in lodct_p4 and "shifts_1d=1" in lodct_p4
    for name in ("bas2008", "bas2009", "bas2013", "t4", "t5", "t6"):
        assert f"{name}" in out
    assert out.count("not implemented") == 6


def test_complexity_report_is_deterministic(tmp_path, capsys):
    out_path = tmp_path / "complexity.csv"
    assert main(["complexity", "--no-timestamp", "--no-figures", "--out", str(out_path)]) == 0
    first = out_path.read_bytes()
    assert main(["complexity", "--no-timestamp", "--no-figures", "--out", str(out_path)]) == 0
    assert out_path.read_bytes() == first
    text = first.decode()
    assert text.splitlines()[0] == (
        "transform,K,mults_1d,adds_1d,shifts_1d,mults_2d,adds_2d,shifts_2d"
    )
    assert "mrdct-p6,6,0,12,0,0,168,0" in text
    assert "lodct-p4,4,0,18,1,0,216,12" in text
    assert "lodct,8,0,24,2,0,384,32" in text
    capsys.readouterr()


def test_complexity_json_round_trips(capsys):
    assert main(["complexity", "--format", "json", "--no-timestamp"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "generated" not in payload
    rows = {r["transform"]: r for r in payload["rows"]}
    assert rows["mrdct-p6"]["adds_2d"] == 168
    assert rows["lodct-p4"]["shifts_2d"] == 12


def test_transform_scaled_and_unscaled(capsys):
    assert main(["transform", "--transform", "lodct", "--prune", "4",
                 "--no-timestamp", "1", "1", "1", "1", "1", "1", "1", "1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "transform,K,y0,y1,y2,y3"
    dc = float(out[1].split(",")[2])
    assert abs(dc - 8.0 / np.sqrt(8.0)) < 1e-6

    assert main(["transform", "--transform", "lodct", "--prune", "4", "--unscaled",
                 "--no-timestamp", "1", "1", "1", "1", "1", "1", "1", "1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[1] == "lodct-p4,4,8,0,0,0"


def test_transform_unscaled_rejects_non_integers(capsys):
    assert main(["transform", "--transform", "mrdct", "--unscaled",
                 "0.5", "0", "0", "0", "0", "0", "0", "0"]) == 1
    assert "error:" in capsys.readouterr().err


def test_compress_writes_recon_and_report(tmp_path, small_image, capsys):
    report = tmp_path / "r.csv"
    recon = tmp_path / "recon.pgm"
    code = main([
        "compress", str(small_image), "--transform", "mrdct", "--prune", "6",
        "--out", str(report), "--recon", str(recon), "--no-timestamp",
    ])
    assert code == 0
    assert recon.exists()
    text = report.read_text().splitlines()
    assert text[0] == "transform,K,quality,psnr_db,ssim,adds_2d,shifts_2d,mults_2d"
    row = text[1].split(",")
    assert row[0] == "mrdct-p6" and row[1] == "6" and row[2] == "50"
    assert float(row[3]) > 10.0
    assert (tmp_path / "r.png").exists()  # figure beside the report
    capsys.readouterr()


def test_compress_quant_unit_constant_image_hits_inf(tmp_path, capsys):
    img = np.full((16, 16), 101, dtype=np.uint8)
    path = tmp_path / "flat.pgm"
    write_pgm(path, img)
    code = main(["compress", str(path), "--transform", "dct", "--quant-unit",
                 "--recon", str(tmp_path / "flat.recon.pgm"), "--no-timestamp"])
    assert code == 0
    out = capsys.readouterr().out
    row = out.splitlines()[-1]
    assert row.split(",")[3] == "inf"


def test_compress_no_figures_skips_png(tmp_path, small_image, capsys):
    report = tmp_path / "r2.csv"
    code = main([
        "compress", str(small_image), "--transform", "dct",
        "--out", str(report), "--recon", str(tmp_path / "r2.pgm"),
        "--no-timestamp", "--no-figures",
    ])
    assert code == 0
    assert not (tmp_path / "r2.png").exists()
    capsys.readouterr()


def test_compare_sorts_and_aggregates(tmp_path, capsys):
    rng = np.random.default_rng(89)
    d = tmp_path / "imgs"
    d.mkdir()
    for name in ("b.pgm", "a.pgm"):
        write_pgm(d / name, rng.integers(0, 256, size=(24, 24)).astype(np.uint8))
    code = main(["compare", str(d), "--transforms", "mrdct-p6,dct",
                 "--no-timestamp", "--format", "json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    names = [r["transform"] for r in payload["rows"]]
    assert names == ["dct", "mrdct-p6"]  # sorted by transform name
    assert payload["rows"][0]["quality"] == 50


def test_compare_single_image_equals_compress(tmp_path, small_image, capsys):
    code = main(["compare", str(small_image), "--transforms", "lodct",
                 "--no-timestamp", "--format", "json"])
    assert code == 0
    aggregate = json.loads(capsys.readouterr().out)["rows"][0]

    code = main(["compress", str(small_image), "--transform", "lodct",
                 "--recon", str(tmp_path / "x.pgm"), "--no-timestamp",
                 "--format", "json"])
    assert code == 0
    out = capsys.readouterr().out
    payload = "\n".join(l for l in out.splitlines() if not l.startswith("wrote "))
    single = json.loads(payload)["rows"][0]
    assert aggregate["psnr_db"] == pytest.approx(single["psnr_db"], abs=1e-6)
    assert aggregate["ssim"] == pytest.approx(single["ssim"], abs=1e-6)


def test_energy_full_curve_and_k8_row(tmp_path, small_image, capsys):
    code = main(["energy", str(small_image), "--transform", "lodct", "--no-timestamp"])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "transform,K,energy_raw,energy_level_shifted"
    assert len(lines) == 9
    last = lines[-1].split(",")
    assert last[1] == "8" and last[2] == "1.000000" and last[3] == "1.000000"


def test_energy_single_k(tmp_path, small_image, capsys):
    code = main(["energy", str(small_image), "--transform", "mrdct",
                 "--prune", "6", "--no-timestamp"])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("mrdct,6,")


def test_energy_rejects_pruned_transform_names(small_image, capsys):
    assert main(["energy", str(small_image), "--transform", "lodct-p4"]) == 1
    assert "unpruned" in capsys.readouterr().err


def test_error_paths_exit_nonzero(tmp_path, small_image, capsys):
    assert main(["compress", str(small_image), "--transform", "nonesuch"]) == 1
    assert "error:" in capsys.readouterr().err

    assert main(["compress", str(small_image), "--transform", "bas2013"]) == 1
    assert "matrix not specified in source paper" in capsys.readouterr().err

    assert main(["compress", str(tmp_path / "missing.pgm"), "--transform", "dct"]) == 1
    capsys.readouterr()

    assert main(["compress", str(small_image), "--transform", "dct",
                 "--quality", "0"]) == 1
    assert "quality" in capsys.readouterr().err

    assert main(["compress", str(small_image), "--transform", "mrdct-p6",
                 "--prune", "4"]) == 1
    assert "conflicting" in capsys.readouterr().err

    assert main(["compare", str(tmp_path / "empty_dir")]) == 1
    capsys.readouterr()


def test_compare_empty_directory_reports_no_images(tmp_path, capsys):
    d = tmp_path / "none"
    d.mkdir()
    assert main(["compare", str(d)]) == 1
    assert "no input images" in capsys.readouterr().err
