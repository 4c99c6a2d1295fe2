"""Command-line front end: catalog listing, transforms, compression runs.

Subcommands: list, transform, compress, energy, complexity, compare.
Reports are CSV (default) or JSON with a fixed column order; when a
report is written with --out, a matplotlib figure lands beside it.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import catalog, codec, figures, metrics, pgm
from .plans import count_ops_1d, count_ops_2d, evaluate

QUALITY_COLUMNS = ("transform", "K", "quality", "psnr_db", "ssim",
                   "adds_2d", "shifts_2d", "mults_2d")
COMPLEXITY_COLUMNS = ("transform", "K", "mults_1d", "adds_1d", "shifts_1d",
                      "mults_2d", "adds_2d", "shifts_2d")
ENERGY_COLUMNS = ("transform", "K", "energy_raw", "energy_level_shifted")

DEFAULT_COMPARE = "dct,sdct,rdct,lodct,lodct-p4,mrdct,mrdct-p6"


@dataclass
class RunConfig:
    command: str
    transform_name: str | None = None
    prune_K: int | None = None
    quality: int = 50
    inputs: list = field(default_factory=list)
    out: str | None = None
    fmt: str = "csv"
    quant_unit: bool = False
    timestamp: bool = True
    render_figures: bool = True
    recon: str | None = None
    folded: bool = False
    unscaled: bool = False
    transforms: str = DEFAULT_COMPARE
    values: list = field(default_factory=list)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return "inf" if math.isinf(value) else f"{value:.6f}"
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return round(value, 6)
    if isinstance(value, Fraction):
        return str(value)
    return value


def _render_report(rows, columns, cfg: RunConfig) -> str:
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    if cfg.fmt == "json":
        payload = {}
        if cfg.timestamp:
            payload["generated"] = stamp
        payload["rows"] = [
            {c: _json_value(row.get(c)) for c in columns} for row in rows
        ]
        return json.dumps(payload, indent=2) + "\n"
    lines = []
    if cfg.timestamp:
        lines.append(f"# generated {stamp}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_cell(row.get(c)) for c in columns))
    return "\n".join(lines) + "\n"


def _emit_report(rows, columns, cfg: RunConfig, figure=None) -> None:
    text = _render_report(rows, columns, cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
        print(f"wrote {cfg.out}")
        if figure is not None and cfg.render_figures:
            fig_path = os.path.splitext(cfg.out)[0] + ".png"
            figure(fig_path)
            print(f"wrote {fig_path}")
    else:
        sys.stdout.write(text)


def _load_corpus(paths) -> list[tuple[str, np.ndarray]]:
    files = []
    for p in paths:
        if os.path.isdir(p):
            names = sorted(os.listdir(p))
            files.extend(
                os.path.join(p, n) for n in names
                if os.path.splitext(n)[1].lower() in (".pgm", ".pnm", ".png")
            )
        else:
            files.append(p)
    if not files:
        raise ValueError("no input images found")
    return [(os.path.basename(f), pgm.read_image(f)) for f in sorted(files)]


def _quality_row(report: metrics.QualityReport, quality) -> dict:
    oc = report.op_count_2d
    return {
        "transform": report.transform_name,
        "K": report.prune_K,
        "quality": quality,
        "psnr_db": report.psnr,
        "ssim": report.ssim,
        "adds_2d": oc.adds,
        "shifts_2d": oc.shifts,
        "mults_2d": oc.mults,
    }


def cmd_list(cfg: RunConfig) -> int:
    for name in catalog.implemented_names():
        spec = catalog.get_transform(name)
        c1 = count_ops_1d(spec)
        c2 = count_ops_2d(spec)
        print(
            f"{name:10s} K={spec.prune_K}  "
            f"mults_1d={c1.mults}  adds_1d={c1.adds}  shifts_1d={c1.shifts}  "
            f"mults_2d={c2.mults}  adds_2d={c2.adds}  shifts_2d={c2.shifts}"
        )
    for name in catalog.PLACEHOLDER_NAMES:
        print(f"{name:10s} not implemented (matrix not specified in source paper)")
    return 0


def cmd_transform(cfg: RunConfig) -> int:
    spec = catalog.get_transform(cfg.transform_name, cfg.prune_K)
    if len(cfg.values) != 8:
        raise ValueError(f"need exactly 8 input samples, got {len(cfg.values)}")
    if cfg.unscaled:
        if spec.plan is None:
            raise ValueError(f"{spec.name} has no integer fast plan")
        ints = [int(v) for v in cfg.values]
        if ints != [float(v) for v in cfg.values]:
            raise ValueError("--unscaled needs integer samples")
        outputs = evaluate(spec.plan, ints)
    else:
        outputs = [float(v) for v in catalog.apply_direct(spec, [float(v) for v in cfg.values])]
    row = {"transform": spec.name, "K": spec.prune_K}
    columns = ["transform", "K"] + [f"y{i}" for i in range(spec.prune_K)]
    for i, v in enumerate(outputs):
        row[f"y{i}"] = v if isinstance(v, (int, Fraction)) else float(v)
    _emit_report([row], columns, cfg)
    return 0


def cmd_complexity(cfg: RunConfig) -> int:
    rows = []
    for name in catalog.implemented_names():
        spec = catalog.get_transform(name)
        c1 = count_ops_1d(spec)
        c2 = count_ops_2d(spec)
        rows.append({
            "transform": spec.name, "K": spec.prune_K,
            "mults_1d": c1.mults, "adds_1d": c1.adds, "shifts_1d": c1.shifts,
            "mults_2d": c2.mults, "adds_2d": c2.adds, "shifts_2d": c2.shifts,
        })
    _emit_report(rows, COMPLEXITY_COLUMNS, cfg,
                 figure=lambda p: figures.complexity_bars(rows, p))
    return 0


def cmd_compress(cfg: RunConfig) -> int:
    spec = catalog.get_transform(cfg.transform_name, cfg.prune_K)
    if len(cfg.inputs) != 1:
        raise ValueError("compress takes exactly one input image")
    path = cfg.inputs[0]
    img = pgm.read_image(path)
    recon, report = codec.compress_image(
        img, spec, cfg.quality, quant_unit=cfg.quant_unit, folded=cfg.folded
    )
    stem = os.path.splitext(os.path.basename(path))[0]
    if cfg.recon:
        recon_path = cfg.recon
    else:
        base = os.path.splitext(cfg.out)[0] if cfg.out else stem
        recon_path = f"{base}.{spec.name}.q{cfg.quality}.recon.pgm"
    pgm.write_image(recon_path, recon)
    print(f"wrote {recon_path}")
    rows = [_quality_row(report, cfg.quality)]
    _emit_report(
        rows, QUALITY_COLUMNS, cfg,
        figure=lambda p: figures.reconstruction_panel(img, recon, spec.name, p),
    )
    return 0


def cmd_compare(cfg: RunConfig) -> int:
    corpus = _load_corpus(cfg.inputs)
    names = [n.strip() for n in cfg.transforms.split(",") if n.strip()]
    rows = []
    for name in sorted(names):
        spec = catalog.get_transform(name)
        psnrs, ssims = [], []
        for _, img in corpus:
            _, report = codec.compress_image(
                img, spec, cfg.quality, quant_unit=cfg.quant_unit
            )
            psnrs.append(report.psnr)
            ssims.append(report.ssim)
        aggregate = metrics.QualityReport(
            psnr=float(np.mean(psnrs)),
            ssim=None if any(s is None for s in ssims) else float(np.mean(ssims)),
            energy_ratio=None,
            op_count_2d=count_ops_2d(spec),
            transform_name=spec.name,
            prune_K=spec.prune_K,
        )
        rows.append(_quality_row(aggregate, cfg.quality))
    _emit_report(rows, QUALITY_COLUMNS, cfg,
                 figure=lambda p: figures.quality_bars(rows, p))
    return 0


def cmd_energy(cfg: RunConfig) -> int:
    corpus = _load_corpus(cfg.inputs)
    images = [img for _, img in corpus]
    spec = catalog.get_transform(cfg.transform_name)
    if spec.prune_K != 8:
        raise ValueError("energy needs an unpruned transform name")
    ks = [cfg.prune_K] if cfg.prune_K else list(range(1, 9))
    rows = []
    raw_curve, shifted_curve = [], []
    for k in ks:
        raw = metrics.energy_compaction(spec, k, images, level_shift=False)
        shifted = metrics.energy_compaction(spec, k, images, level_shift=True)
        raw_curve.append(raw)
        shifted_curve.append(shifted)
        rows.append({
            "transform": spec.name, "K": k,
            "energy_raw": raw, "energy_level_shifted": shifted,
        })
    curves = {"raw": raw_curve, "level-shifted": shifted_curve}
    fig = (lambda p: figures.energy_curves(curves, p)) if len(ks) == 8 else None
    _emit_report(rows, ENERGY_COLUMNS, cfg, figure=fig)
    return 0


_COMMANDS = {
    "list": cmd_list,
    "transform": cmd_transform,
    "compress": cmd_compress,
    "energy": cmd_energy,
    "complexity": cmd_complexity,
    "compare": cmd_compare,
}


def _add_common(sp, *, transform=False, inputs=False, report=True):
    if transform:
        sp.add_argument("--transform", required=True, help="catalog transform name")
        sp.add_argument("--prune", type=int, default=None, metavar="K",
                        help="keep only the first K outputs")
    if inputs:
        sp.add_argument("inputs", nargs="+", metavar="IMAGE",
                        help="image files or directories of .pgm/.png files")
    if report:
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", default=None, help="write the report here")
        sp.add_argument("--no-timestamp", action="store_true",
                        help="omit the generated-at stamp from reports")
        sp.add_argument("--no-figures", action="store_true",
                        help="skip rendering figures next to --out reports")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prunedct",
        description="Exact, approximate, and pruned 8-point DCT kernels "
                    "with a JPEG-like evaluation harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="show catalog transforms and their costs")

    sp = sub.add_parser("transform", help="run one 8-point transform")
    _add_common(sp, transform=True)
    sp.add_argument("values", nargs=8, metavar="X", help="eight input samples")
    sp.add_argument("--unscaled", action="store_true",
                    help="integer kernel outputs via the fast plan, exactly")

    sp = sub.add_parser("compress", help="JPEG-like round trip on one image")
    _add_common(sp, transform=True, inputs=True)
    sp.add_argument("--quality", type=int, default=50)
    sp.add_argument("--quant-unit", action="store_true",
                    help="force all quantization steps to 1")
    sp.add_argument("--folded", action="store_true",
                    help="fold the scaling diagonal into the quantization step")
    sp.add_argument("--recon", default=None, help="reconstructed image path")

    sp = sub.add_parser("compare", help="average PSNR/SSIM over a corpus")
    _add_common(sp, inputs=True)
    sp.add_argument("--transforms", default=DEFAULT_COMPARE,
                    help="comma-separated transform names")
    sp.add_argument("--quality", type=int, default=50)
    sp.add_argument("--quant-unit", action="store_true")

    sp = sub.add_parser("energy", help="energy captured by the K x K corner")
    _add_common(sp, transform=True, inputs=True)

    sp = sub.add_parser("complexity", help="1-D and 2-D operation counts")
    _add_common(sp)
    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    cfg.transform_name = getattr(args, "transform", None)
    cfg.prune_K = getattr(args, "prune", None)
    cfg.quality = getattr(args, "quality", 50)
    cfg.inputs = list(getattr(args, "inputs", []))
    cfg.out = getattr(args, "out", None)
    cfg.fmt = getattr(args, "format", "csv")
    cfg.quant_unit = getattr(args, "quant_unit", False)
    cfg.timestamp = not getattr(args, "no_timestamp", False)
    cfg.render_figures = not getattr(args, "no_figures", False)
    cfg.recon = getattr(args, "recon", None)
    cfg.folded = getattr(args, "folded", False)
    cfg.unscaled = getattr(args, "unscaled", False)
    cfg.transforms = getattr(args, "transforms", DEFAULT_COMPARE)
    cfg.values = [float(v) for v in getattr(args, "values", [])]
    if cfg.quality is not None and not 1 <= cfg.quality <= 100:
        raise ValueError("quality must be in [1, 100]")
    if cfg.prune_K is not None and not 1 <= cfg.prune_K <= 8:
        raise ValueError("prune level must be in [1, 8]")
    return cfg


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _COMMANDS[cfg.command](cfg)
    except NotImplementedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
