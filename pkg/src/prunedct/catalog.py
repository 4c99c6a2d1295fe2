"""Transform catalog: exact, approximate, and pruned 8-point kernels.

Each entry pairs a low-complexity matrix T (dyadic entries) with the
diagonal normalizer S = sqrt(diag[T·Tᵀ]⁻¹), so the working transform is
S·T.  Pruning keeps the first K rows and renormalizes with the same
formula, which preserves the scaling prefix exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .dyadic import DyadicMatrix
from .plans import (
    FlowGraphPlan,
    OpCount,
    plan_generic,
    plan_lodct,
    plan_m6,
    plan_mrdct,
    plan_rdct,
    plan_sdct,
    plan_w4,
    prune_plan,
)

N_POINTS = 8

# Rows of the low-complexity kernels.  Entries are restricted to
# {0, +-1/2, +-1} so every product is an add or a single bit-shift.
LODCT_ROWS = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 0, 0, -1, -1, -1],
    [1, 0.5, -0.5, -1, -1, -0.5, 0.5, 1],
    [1, 0, -1, -1, 1, 1, 0, -1],
    [1, -1, -1, 1, 1, -1, -1, 1],
    [1, -1, 0, 1, -1, 0, 1, -1],
    [0.5, -1, 1, -0.5, -0.5, 1, -1, 0.5],
    [0, -1, 1, -1, 1, -1, 1, 0],
]

MRDCT_ROWS = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 0, 0, 0, 0, 0, 0, -1],
    [1, 0, 0, -1, -1, 0, 0, 1],
    [0, 0, -1, 0, 0, 1, 0, 0],
    [1, -1, -1, 1, 1, -1, -1, 1],
    [0, -1, 0, 0, 0, 0, 1, 0],
    [0, -1, 1, 0, 0, 1, -1, 0],
    [0, 0, 0, -1, 1, 0, 0, 0],
]

# Reserved catalog slots with no bundled matrix definition; constructing
# one raises NotImplementedError.
PLACEHOLDER_NAMES = ("bas2008", "bas2009", "bas2013", "t4", "t5", "t6")


def build_exact_dct() -> np.ndarray:
    """8x8 DCT-II matrix: c[k,n] = a_k * sqrt(2/8) * cos((n+1/2)k*pi/8)."""
    k = np.arange(N_POINTS)[:, None]
    n = np.arange(N_POINTS)[None, :]
    c = np.sqrt(2.0 / N_POINTS) * np.cos((n + 0.5) * k * np.pi / N_POINTS)
    c[0] *= 1.0 / np.sqrt(2.0)
    return c


@dataclass(frozen=True)
class ScalingDiagonal:
    """Diagonal normalizer, kept as exact squared row norms.

    values evaluates 1/sqrt(norm) lazily so the pruned-prefix property
    (scaling of the first K rows == first K scaling entries) is exact.
    """

    norms_sq: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.norms_sq or any(f <= 0 for f in self.norms_sq):
            raise ValueError("scaling requires positive row norms")

    def __len__(self):
        return len(self.norms_sq)

    @property
    def values(self) -> np.ndarray:
        return np.array([1.0 / math.sqrt(f) for f in self.norms_sq])

    def take(self, k: int) -> "ScalingDiagonal":
        return ScalingDiagonal(self.norms_sq[:k])


@dataclass(frozen=True, eq=False)
class TransformSpec:
    """A named transform: kernel matrix, scaling, declared costs, K.

    matrix is None only for the exact DCT, whose irrational entries
    cannot be dyadic; its kernel is carried densely instead.
    """

    name: str
    matrix: DyadicMatrix | None
    scaling: ScalingDiagonal
    declared_mults_1d: int
    declared_adds_1d: int
    declared_shifts_1d: int
    prune_K: int
    plan: FlowGraphPlan | None = None
    dense: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if not 1 <= self.prune_K <= N_POINTS:
            raise ValueError("prune_K must be in [1, 8]")
        if self.matrix is None and self.dense is None:
            raise ValueError("need a dyadic or a dense kernel")
        rows = self.kernel.shape[0]
        if rows != self.prune_K or len(self.scaling) != rows:
            raise ValueError("scaling length and matrix rows must equal prune_K")
        expected = 1.0 / np.sqrt(np.diag(self.kernel @ self.kernel.T))
        if not np.allclose(self.scaling.values, expected, rtol=0, atol=1e-12):
            raise ValueError(f"{self.name}: scaling is not sqrt(diag[T·Tᵀ]⁻¹)")
        if self.plan is not None:
            if (self.plan.input_arity, self.plan.output_arity) != (N_POINTS, self.prune_K):
                raise ValueError(f"{self.name}: plan arity mismatch")
            got = self.plan.op_count()
            if got != self.declared_op_count():
                raise ValueError(f"{self.name}: plan costs {got} != declared")

    @property
    def kernel(self) -> np.ndarray:
        """Unscaled kernel rows T as floats, shape (K, 8)."""
        return self.matrix.to_float() if self.matrix is not None else self.dense

    @property
    def scaled(self) -> np.ndarray:
        """The working transform S·T with unit-norm rows, shape (K, 8)."""
        return self.scaling.values[:, None] * self.kernel

    def declared_op_count(self) -> OpCount:
        return OpCount(self.declared_mults_1d, self.declared_adds_1d, self.declared_shifts_1d)


def _scaling_for(matrix: DyadicMatrix) -> ScalingDiagonal:
    return ScalingDiagonal(matrix.row_norms_sq())


def _spec_from_matrix(name, rows, plan) -> TransformSpec:
    matrix = DyadicMatrix.from_values(rows)
    ops = plan.op_count()
    return TransformSpec(
        name=name,
        matrix=matrix,
        scaling=_scaling_for(matrix),
        declared_mults_1d=ops.mults,
        declared_adds_1d=ops.adds,
        declared_shifts_1d=ops.shifts,
        prune_K=matrix.rows,
        plan=plan,
    )


def build_dct() -> TransformSpec:
    """Exact DCT evaluated by direct matrix product (the oracle path).

    Declared costs are those of the dense product: 64 mults, 56 adds.
    """
    c = build_exact_dct()
    return TransformSpec(
        name="dct",
        matrix=None,
        scaling=ScalingDiagonal((Fraction(1),) * N_POINTS),
        declared_mults_1d=64,
        declared_adds_1d=56,
        declared_shifts_1d=0,
        prune_K=N_POINTS,
        dense=c,
    )


def build_lodct() -> TransformSpec:
    return _spec_from_matrix("lodct", LODCT_ROWS, plan_lodct())


def build_mrdct() -> TransformSpec:
    return _spec_from_matrix("mrdct", MRDCT_ROWS, plan_mrdct())


def build_sdct() -> TransformSpec:
    """Signum of the exact DCT entries; rows are not mutually orthogonal."""
    rows = np.sign(build_exact_dct()).astype(int).tolist()
    return _spec_from_matrix("sdct", rows, plan_sdct())


def build_rdct() -> TransformSpec:
    """Rounded-DCT kernel, transcribed from its defining source.

    Elementwise round of the exact DCT itself degenerates (row 0 rounds
    to zero), contradicting the declared 22-addition cost, so the matrix
    is taken verbatim from the catalog's cited definition; it coincides
    with round(2·C) under half-away-from-zero rounding.
    """
    rows = _round_half_away(2.0 * build_exact_dct()).astype(int).tolist()
    return _spec_from_matrix("rdct", rows, plan_rdct())


def build_identity() -> TransformSpec:
    """Identity 'transform'; useful as an energy-compaction baseline."""
    rows = np.eye(N_POINTS, dtype=int).tolist()
    return _spec_from_matrix("identity", rows, plan_generic(DyadicMatrix.from_values(rows)))


def _round_half_away(x: np.ndarray) -> np.ndarray:
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def prune(spec: TransformSpec, k: int, plan: FlowGraphPlan | None = None) -> TransformSpec:
    """First-K-rows pruning with the sqrt(diag[T⟨K⟩·T⟨K⟩ᵀ]⁻¹) renormalizer.

    The default plan is the parent's plan with dead nodes eliminated; a
    hand-derived replacement may be passed instead (same behavior).
    """
    if not 1 <= k <= N_POINTS:
        raise ValueError(f"prune level must be in [1, 8], got {k}")
    if spec.prune_K != N_POINTS:
        raise ValueError("can only prune an unpruned (8-row) transform")
    if k == N_POINTS and plan is None:
        return spec
    if plan is None and spec.plan is not None:
        plan = prune_plan(spec.plan, k)
    if spec.matrix is not None:
        matrix = spec.matrix.take_rows(k)
        dense = None
    else:
        matrix = None
        dense = spec.kernel[:k]
    if plan is not None:
        ops = plan.op_count()
    else:
        ops = OpCount(N_POINTS * k, (N_POINTS - 1) * k, 0)
    return TransformSpec(
        name=spec.name if k == N_POINTS else f"{spec.name}-p{k}",
        matrix=matrix,
        scaling=spec.scaling.take(k),
        declared_mults_1d=ops.mults,
        declared_adds_1d=ops.adds,
        declared_shifts_1d=ops.shifts,
        prune_K=k,
        plan=plan,
        dense=dense,
    )


def apply_direct(spec: TransformSpec, x) -> np.ndarray:
    """Oracle path: S·T·x by direct matrix product in floating point."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (N_POINTS,):
        raise ValueError(f"expected a length-8 vector, got shape {x.shape}")
    return spec.scaled @ x


_BUILDERS = {
    "dct": build_dct,
    "lodct": build_lodct,
    "mrdct": build_mrdct,
    "sdct": build_sdct,
    "rdct": build_rdct,
    "identity": build_identity,
}

# Hand-derived pruned plans for the two headline transforms.
_PRUNED_PLANS = {("lodct", 4): plan_w4, ("mrdct", 6): plan_m6}


def implemented_names() -> list[str]:
    names = []
    for base in _BUILDERS:
        names.append(base)
        for (b, k) in _PRUNED_PLANS:
            if b == base:
                names.append(f"{base}-p{k}")
    return names


def catalog_names() -> list[str]:
    return implemented_names() + list(PLACEHOLDER_NAMES)


def get_transform(name: str, prune_k: int | None = None) -> TransformSpec:
    """Look up a catalog transform, optionally pruned to K outputs.

    Accepts either a base name plus prune_k or a combined name like
    "mrdct-p6".  Placeholder slots raise NotImplementedError.
    """
    if name in PLACEHOLDER_NAMES:
        raise NotImplementedError("matrix not specified in source paper")
    base_name, embedded_k = name, None
    if name not in _BUILDERS and "-p" in name:
        stem, _, suffix = name.rpartition("-p")
        if stem in _BUILDERS and suffix.isdigit():
            base_name, embedded_k = stem, int(suffix)
    if base_name not in _BUILDERS:
        raise KeyError(f"unknown transform {name!r}")
    if embedded_k is not None and prune_k is not None and embedded_k != prune_k:
        raise ValueError(f"conflicting prune levels: {name!r} vs K={prune_k}")
    k = embedded_k if embedded_k is not None else prune_k
    spec = _BUILDERS[base_name]()
    if k is None or k == spec.prune_K:
        return spec
    hand = _PRUNED_PLANS.get((base_name, k))
    return prune(spec, k, plan=hand() if hand else None)
