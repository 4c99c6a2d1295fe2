"""Exact, approximate, and pruned 8-point DCT-II kernels.

Low-complexity transform matrices with dyadic entries, addition-only
fast plans for them (including pruned 4- and 6-output variants), a
JPEG-like compression harness, and PSNR/SSIM/energy-compaction metrics.
"""

from .catalog import (
    ScalingDiagonal,
    TransformSpec,
    apply_direct,
    build_dct,
    build_exact_dct,
    build_identity,
    build_lodct,
    build_mrdct,
    build_rdct,
    build_sdct,
    catalog_names,
    get_transform,
    implemented_names,
    prune,
)
from .codec import (
    BlockGrid,
    QuantTable,
    compress_image,
    dequantize,
    forward_2d,
    inverse_2d,
    luminance_table,
    partition,
    quantize,
    reassemble,
)
from .dyadic import DyadicMatrix
from .metrics import QualityReport, energy_compaction, psnr, ssim
from .pgm import read_image, read_pgm, write_image, write_pgm
from .plans import (
    FlowGraphPlan,
    Node,
    OpCount,
    count_ops_1d,
    count_ops_2d,
    evaluate,
    evaluate_over,
    plan_generic,
    plan_lodct,
    plan_m6,
    plan_mrdct,
    plan_rdct,
    plan_sdct,
    plan_w4,
    prune_plan,
)

__version__ = "0.1.0"

__all__ = [
    "BlockGrid",
    "DyadicMatrix",
    "FlowGraphPlan",
    "Node",
    "OpCount",
    "QualityReport",
    "QuantTable",
    "ScalingDiagonal",
    "TransformSpec",
    "apply_direct",
    "build_dct",
    "build_exact_dct",
    "build_identity",
    "build_lodct",
    "build_mrdct",
    "build_rdct",
    "build_sdct",
    "catalog_names",
    "compress_image",
    "count_ops_1d",
    "count_ops_2d",
    "dequantize",
    "energy_compaction",
    "evaluate",
    "evaluate_over",
    "forward_2d",
    "get_transform",
    "implemented_names",
    "inverse_2d",
    "luminance_table",
    "partition",
    "plan_generic",
    "plan_lodct",
    "plan_m6",
    "plan_mrdct",
    "plan_rdct",
    "plan_sdct",
    "plan_w4",
    "prune",
    "prune_plan",
    "psnr",
    "quantize",
    "read_image",
    "read_pgm",
    "reassemble",
    "ssim",
    "write_image",
    "write_pgm",
]
