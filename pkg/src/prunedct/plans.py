"""Addition/shift flow-graph plans for multiplierless transform kernels.

A plan is an ordered list of add/subtract/negate/shift nodes computing a
dyadic matrix-vector product.  Counting convention: add and subtract each
cost one addition, a shift_right node costs one shift regardless of bit
count, negate and passthrough are free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .dyadic import DyadicMatrix

# node operand refs: 0..arity-1 name the inputs, arity+k names node k
ADD = "add"
SUBTRACT = "subtract"
NEGATE = "negate"
SHIFT_RIGHT = "shift_right"
PASSTHROUGH = "passthrough"


@dataclass(frozen=True)
class OpCount:
    mults: int
    adds: int
    shifts: int

    def __post_init__(self):
        if min(self.mults, self.adds, self.shifts) < 0:
            raise ValueError("operation counts must be non-negative")

    def scale(self, factor: int) -> "OpCount":
        return OpCount(self.mults * factor, self.adds * factor, self.shifts * factor)

    @property
    def total(self) -> int:
        return self.mults + self.adds + self.shifts


@dataclass(frozen=True)
class Node:
    op: str
    a: int
    b: int | None = None
    bits: int = 0


@dataclass(frozen=True)
class FlowGraphPlan:
    input_arity: int
    output_arity: int
    nodes: tuple[Node, ...]
    output_refs: tuple[int, ...]

    def __post_init__(self):
        for k, node in enumerate(self.nodes):
            limit = self.input_arity + k
            refs = (node.a,) if node.b is None else (node.a, node.b)
            if any(r < 0 or r >= limit for r in refs):
                raise ValueError(f"node {k} references a later node or a bad input")
            if node.op == SHIFT_RIGHT and node.bits < 1:
                raise ValueError(f"node {k}: shift_right needs bits >= 1")
        if len(self.output_refs) != self.output_arity:
            raise ValueError("output_refs length must equal output_arity")
        top = self.input_arity + len(self.nodes)
        if any(r < 0 or r >= top for r in self.output_refs):
            raise ValueError("output ref out of range")

    def op_count(self) -> OpCount:
        adds = sum(1 for n in self.nodes if n.op in (ADD, SUBTRACT))
        shifts = sum(1 for n in self.nodes if n.op == SHIFT_RIGHT)
        return OpCount(0, adds, shifts)

    def ref_name(self, ref: int) -> str:
        if ref < self.input_arity:
            return f"x{ref}"
        return f"n{ref - self.input_arity}"

    def dump(self) -> str:
        """Textual node listing, one per line: ``n<k>: <op> <ref> <ref>``."""
        lines = []
        for k, node in enumerate(self.nodes):
            op = f"{SHIFT_RIGHT}({node.bits})" if node.op == SHIFT_RIGHT else node.op
            refs = [self.ref_name(node.a)]
            if node.b is not None:
                refs.append(self.ref_name(node.b))
            lines.append(f"n{k}: {op} " + " ".join(refs))
        outs = " ".join(self.ref_name(r) for r in self.output_refs)
        lines.append(f"out: {outs}")
        return "\n".join(lines)


class _Builder:
    """Appends nodes with structural caching so shared terms are built once."""

    def __init__(self, input_arity: int):
        self.arity = input_arity
        self.nodes: list[Node] = []
        self._cache: dict[tuple, int] = {}

    def _emit(self, key: tuple, node: Node) -> int:
        ref = self._cache.get(key)
        if ref is None:
            self.nodes.append(node)
            ref = self.arity + len(self.nodes) - 1
            self._cache[key] = ref
        return ref

    def add(self, a: int, b: int) -> int:
        return self._emit((ADD, a, b), Node(ADD, a, b))

    def sub(self, a: int, b: int) -> int:
        return self._emit((SUBTRACT, a, b), Node(SUBTRACT, a, b))

    def neg(self, a: int) -> int:
        return self._emit((NEGATE, a), Node(NEGATE, a))

    def shr(self, a: int, bits: int) -> int:
        return self._emit((SHIFT_RIGHT, a, bits), Node(SHIFT_RIGHT, a, bits=bits))

    def passthrough(self, a: int) -> int:
        return self._emit((PASSTHROUGH, a), Node(PASSTHROUGH, a))

    def plan(self, output_refs: list[int]) -> FlowGraphPlan:
        return FlowGraphPlan(self.arity, len(output_refs), tuple(self.nodes), tuple(output_refs))


def _shift_value(v, bits: int):
    if isinstance(v, float):
        return v / (1 << bits)
    if isinstance(v, Fraction):
        return v / (1 << bits)
    v = int(v)
    if v % (1 << bits) == 0:
        return v >> bits
    return Fraction(v, 1 << bits)


def evaluate(plan: FlowGraphPlan, x):
    """Execute a plan on one input vector, exactly.

    Integer inputs stay exact: a shift of an odd intermediate promotes the
    value to a Fraction instead of truncating.  Float inputs run in floats.
    """
    if len(x) != plan.input_arity:
        raise ValueError(f"expected {plan.input_arity} inputs, got {len(x)}")
    values = []
    for v in x:
        if isinstance(v, (bool, np.bool_)):
            raise TypeError("boolean inputs are not supported")
        if isinstance(v, np.integer):
            v = int(v)
        elif isinstance(v, np.floating):
            v = float(v)
        values.append(v)
    for node in plan.nodes:
        a = values[node.a]
        if node.op == ADD:
            values.append(a + values[node.b])
        elif node.op == SUBTRACT:
            values.append(a - values[node.b])
        elif node.op == NEGATE:
            values.append(-a)
        elif node.op == SHIFT_RIGHT:
            values.append(_shift_value(a, node.bits))
        else:  # passthrough
            values.append(a)
    return [values[r] for r in plan.output_refs]


def evaluate_over(plan: FlowGraphPlan, x: np.ndarray) -> np.ndarray:
    """Execute a plan on a stack of float input vectors.

    ``x`` has shape (input_arity, m); returns (output_arity, m).  Shifts
    divide by a power of two, which is exact in binary floating point.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] != plan.input_arity:
        raise ValueError(f"expected {plan.input_arity} input rows, got {x.shape[0]}")
    values = list(x)
    for node in plan.nodes:
        a = values[node.a]
        if node.op == ADD:
            values.append(a + values[node.b])
        elif node.op == SUBTRACT:
            values.append(a - values[node.b])
        elif node.op == NEGATE:
            values.append(-a)
        elif node.op == SHIFT_RIGHT:
            values.append(a / (1 << node.bits))
        else:
            values.append(a)
    return np.stack([values[r] for r in plan.output_refs])


def _butterflies(p: _Builder):
    a = [p.add(n, 7 - n) for n in range(4)]
    b = [p.sub(n, 7 - n) for n in range(4)]
    return a, b


def plan_lodct() -> FlowGraphPlan:
    """Full 8-output plan for the {0, +-1/2, +-1} kernel: 24 adds, 2 shifts."""
    p = _Builder(8)
    a = [p.add(n, 7 - n) for n in range(4)]
    b = [p.sub(n, 7 - n) for n in range(4)]
    c0, c1 = p.add(a[0], a[3]), p.add(a[1], a[2])
    d0, d1 = p.sub(a[0], a[3]), p.sub(a[1], a[2])
    r0 = p.add(c0, c1)
    r1 = p.add(p.add(b[0], b[1]), b[2])
    r2 = p.add(d0, p.shr(d1, 1))
    r3 = p.sub(p.sub(b[0], b[2]), b[3])
    r4 = p.sub(c0, c1)
    r5 = p.add(p.sub(b[0], b[1]), b[3])
    r6 = p.sub(p.shr(d0, 1), d1)
    r7 = p.sub(p.sub(b[2], b[1]), b[3])
    return p.plan([r0, r1, r2, r3, r4, r5, r6, r7])


def plan_w4() -> FlowGraphPlan:
    """Pruned 4-output variant of plan_lodct: 18 adds, 1 shift."""
    p = _Builder(8)
    a = [p.add(n, 7 - n) for n in range(4)]
    c0, c1 = p.add(a[0], a[3]), p.add(a[1], a[2])
    r0 = p.add(c0, c1)
    b = [p.sub(n, 7 - n) for n in range(4)]
    r1 = p.add(p.add(b[0], b[1]), b[2])
    r2 = p.add(p.sub(a[0], a[3]), p.shr(p.sub(a[1], a[2]), 1))
    r3 = p.sub(p.sub(b[0], b[2]), b[3])
    return p.plan([r0, r1, r2, r3])


def plan_mrdct() -> FlowGraphPlan:
    """Full 8-output plan for the sparsest {0, +-1} kernel: 14 adds."""
    p = _Builder(8)
    a = [p.add(n, 7 - n) for n in range(4)]
    c0, c1 = p.add(a[0], a[3]), p.add(a[1], a[2])
    r0 = p.add(c0, c1)
    r1 = p.sub(0, 7)
    r2 = p.sub(a[0], a[3])
    r3 = p.sub(5, 2)
    r4 = p.sub(c0, c1)
    r5 = p.sub(6, 1)
    r6 = p.sub(a[2], a[1])
    r7 = p.sub(4, 3)
    return p.plan([r0, r1, r2, r3, r4, r5, r6, r7])


def plan_m6() -> FlowGraphPlan:
    """Pruned 6-output variant of plan_mrdct: 12 adds."""
    p = _Builder(8)
    a = [p.add(n, 7 - n) for n in range(4)]
    r1 = p.sub(0, 7)
    r3 = p.sub(5, 2)
    r5 = p.sub(6, 1)
    c0, c1 = p.add(a[0], a[3]), p.add(a[1], a[2])
    r0 = p.add(c0, c1)
    r2 = p.sub(a[0], a[3])
    r4 = p.sub(c0, c1)
    return p.plan([r0, r1, r2, r3, r4, r5])


def plan_sdct() -> FlowGraphPlan:
    """Plan for the all-sign kernel: two 4-point stages, 24 adds."""
    p = _Builder(8)
    a, b = _butterflies(p)
    c0, c1 = p.add(a[0], a[1]), p.add(a[2], a[3])
    d0, d1 = p.sub(a[0], a[1]), p.sub(a[2], a[3])
    e0, e1 = p.add(b[0], b[2]), p.add(b[1], b[3])
    f0, f1 = p.sub(b[0], b[2]), p.sub(b[1], b[3])
    r0 = p.add(c0, c1)
    r1 = p.add(e0, e1)
    r2 = p.sub(c0, c1)
    r3 = p.sub(f0, e1)
    r4 = p.sub(d0, d1)
    r5 = p.sub(e0, f1)
    r6 = p.add(d0, d1)
    r7 = p.sub(e0, e1)
    return p.plan([r0, r1, r2, r3, r4, r5, r6, r7])


def plan_rdct() -> FlowGraphPlan:
    """Plan for the rounded {0, +-1} kernel: 22 adds."""
    p = _Builder(8)
    a, b = _butterflies(p)
    c0, c1 = p.add(a[0], a[3]), p.add(a[1], a[2])
    r0 = p.add(c0, c1)
    r1 = p.add(p.add(b[0], b[1]), b[2])
    r2 = p.sub(a[0], a[3])
    r3 = p.sub(p.sub(b[0], b[2]), b[3])
    r4 = p.sub(c0, c1)
    r5 = p.add(p.sub(b[0], b[1]), b[3])
    r6 = p.sub(a[2], a[1])
    r7 = p.sub(p.sub(b[2], b[1]), b[3])
    return p.plan([r0, r1, r2, r3, r4, r5, r6, r7])


def _accumulate(p: _Builder, terms: list[tuple[int, Fraction]]) -> int:
    """Sum weight * ref terms; weights are dyadic, negation is free."""
    realized: list[tuple[int, int]] = []  # (ref, sign)
    for ref, w in terms:
        sign = 1 if w > 0 else -1
        mag = abs(w)
        num, den = mag.numerator, mag.denominator
        # integer part by binary doubling: num * ref via shifts of self-adds
        cur = ref
        if num > 1:
            bits = bin(num)[2:]
            acc = cur
            for bit in bits[1:]:
                acc = p.add(acc, acc)
                if bit == "1":
                    acc = p.add(acc, cur)
            cur = acc
        if den > 1:
            cur = p.shr(cur, den.bit_length() - 1)
        realized.append((cur, sign))
    pos = [r for r, s in realized if s > 0]
    neg = [r for r, s in realized if s < 0]
    if pos:
        acc = pos[0]
        for r in pos[1:]:
            acc = p.add(acc, r)
    else:
        acc = p.neg(neg[0])
        neg = neg[1:]
    for r in neg:
        acc = p.sub(acc, r)
    return acc


def plan_generic(matrix: DyadicMatrix) -> FlowGraphPlan:
    """Correct (not necessarily minimal) plan for any dyadic matrix.

    Rows that are symmetric or antisymmetric about the column midpoint are
    folded through shared butterflies; everything else accumulates term by
    term.  Counts are reported honestly and may exceed a hand-tuned plan.
    """
    rows, cols = matrix.shape
    p = _Builder(cols)
    half = cols // 2
    paired = cols % 2 == 0
    a_refs: dict[int, int] = {}
    b_refs: dict[int, int] = {}

    def butterfly(n: int, kind: str) -> int:
        cache = a_refs if kind == "a" else b_refs
        if n not in cache:
            op = p.add if kind == "a" else p.sub
            cache[n] = op(n, cols - 1 - n)
        return cache[n]

    outputs = []
    for i in range(rows):
        w = [matrix.entry(i, j) for j in range(cols)]
        if all(v == 0 for v in w):
            outputs.append(p.sub(0, 0))
            continue
        sym = paired and all(w[n] == w[cols - 1 - n] for n in range(half))
        anti = paired and all(w[n] == -w[cols - 1 - n] for n in range(half))
        if sym:
            terms = [(butterfly(n, "a"), w[n]) for n in range(half) if w[n] != 0]
        elif anti:
            terms = [(butterfly(n, "b"), w[n]) for n in range(half) if w[n] != 0]
        else:
            terms = [(j, w[j]) for j in range(cols) if w[j] != 0]
        if len(terms) == 1 and terms[0][1] == 1:
            outputs.append(p.passthrough(terms[0][0]))
        else:
            outputs.append(_accumulate(p, terms))
    return p.plan(outputs)


def prune_plan(plan: FlowGraphPlan, k: int) -> FlowGraphPlan:
    """Keep the first k outputs and drop every node they do not reach."""
    if not 1 <= k <= plan.output_arity:
        raise ValueError(f"k must be in [1, {plan.output_arity}]")
    keep = plan.output_refs[:k]
    live = set()
    stack = [r for r in keep if r >= plan.input_arity]
    while stack:
        ref = stack.pop()
        if ref in live:
            continue
        live.add(ref)
        node = plan.nodes[ref - plan.input_arity]
        for r in (node.a, node.b):
            if r is not None and r >= plan.input_arity:
                stack.append(r)
    remap = {}
    nodes = []
    for idx, node in enumerate(plan.nodes):
        ref = plan.input_arity + idx
        if ref not in live:
            continue
        a = remap.get(node.a, node.a)
        b = None if node.b is None else remap.get(node.b, node.b)
        nodes.append(Node(node.op, a, b, node.bits))
        remap[ref] = plan.input_arity + len(nodes) - 1
    outputs = tuple(remap.get(r, r) for r in keep)
    return FlowGraphPlan(plan.input_arity, k, tuple(nodes), outputs)


def count_ops_1d(spec) -> OpCount:
    """One-dimensional operation counts: from the plan when the transform
    has one, otherwise the declared (direct-product) costs."""
    plan = getattr(spec, "plan", None)
    if plan is not None:
        return plan.op_count()
    return spec.declared_op_count()


def count_ops_2d(spec) -> OpCount:
    """Two-dimensional counts: 8 column passes plus K row passes."""
    return count_ops_1d(spec).scale(8 + spec.prune_K)
