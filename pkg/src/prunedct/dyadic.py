"""Exact matrices of dyadic rationals (numerator over a power of two).

Every approximation kernel in the catalog has entries drawn from
{0, +-1/2, +-1}, so storing numerators and base-2 denominator exponents
keeps all matrix algebra exact in integer arithmetic.  That exactness is
what lets the flow-graph plans be checked bit-for-bit against a direct
matrix product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


def _as_dyadic(value) -> tuple[int, int]:
    """Return (numerator, den_log2) for a value of the form n / 2**k."""
    f = Fraction(value)
    d = f.denominator
    k = d.bit_length() - 1
    if d != (1 << k):
        raise ValueError(f"entry {value!r} is not a dyadic rational")
    return f.numerator, k


@dataclass(frozen=True, eq=False)
class DyadicMatrix:
    """Rectangular matrix whose (i, j) entry is num[i, j] / 2**den_log2[i, j]."""

    num: np.ndarray
    den_log2: np.ndarray

    def __post_init__(self):
        num = np.ascontiguousarray(np.asarray(self.num, dtype=np.int64))
        den = np.ascontiguousarray(np.asarray(self.den_log2, dtype=np.int64))
        if num.ndim != 2 or num.shape != den.shape:
            raise ValueError("num and den_log2 must be 2-D arrays of equal shape")
        if num.shape[0] < 1 or num.shape[1] < 1:
            raise ValueError("matrix needs at least one row and one column")
        if (den < 0).any():
            raise ValueError("den_log2 entries must be non-negative")
        # canonicalize to lowest terms so equal values share one representation
        den = np.where(num == 0, 0, den)
        while True:
            reducible = (den > 0) & (num % 2 == 0)
            if not reducible.any():
                break
            num = np.where(reducible, num // 2, num)
            den = np.where(reducible, den - 1, den)
        num = np.ascontiguousarray(num)
        den = np.ascontiguousarray(den)
        num.setflags(write=False)
        den.setflags(write=False)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den_log2", den)

    @classmethod
    def from_values(cls, values) -> "DyadicMatrix":
        """Build from nested ints, Fractions, or strings like '1/2'."""
        parsed = [[_as_dyadic(v) for v in row] for row in values]
        num = np.array([[n for n, _ in row] for row in parsed], dtype=np.int64)
        den = np.array([[k for _, k in row] for row in parsed], dtype=np.int64)
        return cls(num, den)

    @property
    def rows(self) -> int:
        return self.num.shape[0]

    @property
    def cols(self) -> int:
        return self.num.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.num.shape

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.num[i, j]), 1 << int(self.den_log2[i, j]))

    def to_float(self) -> np.ndarray:
        return self.num / np.exp2(self.den_log2)

    def take_rows(self, k: int) -> "DyadicMatrix":
        return DyadicMatrix(self.num[:k], self.den_log2[:k])

    def scaled_ints(self) -> tuple[np.ndarray, int]:
        """Integer matrix N and exponent d with self == N / 2**d.

        Puts all entries over the largest per-entry denominator, so exact
        matrix-vector products reduce to integer arithmetic.
        """
        d = int(self.den_log2.max())
        return self.num * (1 << (d - self.den_log2)), d

    def row_norms_sq(self) -> tuple[Fraction, ...]:
        """Exact squared Euclidean norm of each row."""
        ints, d = self.scaled_ints()
        sums = (ints.astype(object) ** 2).sum(axis=1)
        return tuple(Fraction(int(s), 1 << (2 * d)) for s in sums)

    def gram(self) -> tuple[np.ndarray, int]:
        """Exact self @ self.T as (integer matrix, den_log2 of the whole)."""
        ints, d = self.scaled_ints()
        g = ints.astype(object) @ ints.astype(object).T
        return g, 2 * d

    def is_gram_diagonal(self) -> bool:
        g, _ = self.gram()
        off = g - np.diag(np.diag(g))
        return not np.any(off != 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DyadicMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, da = self.scaled_ints()
        b, db = other.scaled_ints()
        # compare as n / 2**d with a common exponent
        d = max(da, db)
        return bool(np.array_equal(a * (1 << (d - da)), b * (1 << (d - db))))

    def __hash__(self):
        return hash((self.shape, self.num.tobytes(), self.den_log2.tobytes()))
