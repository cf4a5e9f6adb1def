"""Dual numeric kernel: exact rationals or fixed-precision mpmath floats.

Everything downstream is written against plain arithmetic operators, so a
value is either an ``int``/``Fraction`` (exact mode) or an ``mpf`` bound to a
private mpmath context carrying its own working precision (float mode).
"""

from __future__ import annotations

import os
from fractions import Fraction
from numbers import Rational

from mpmath.ctx_mp import MPContext

from .errors import DomainError

DEFAULT_PRECISION = 256
MIN_PRECISION = 64


def default_precision() -> int:
    """Float-mode precision in bits, honouring ``TPSCHUR_PRECISION``."""
    env = os.environ.get("TPSCHUR_PRECISION")
    if env:
        return int(env)
    return DEFAULT_PRECISION


class Kernel:
    """Conversion and determinant routines for one numeric mode.

    >>> Kernel("exact")("3/4")
    Fraction(3, 4)
    """

    def __init__(self, mode: str = "exact", prec: int | None = None):
        if mode not in ("exact", "float"):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self.ctx = None
        self.prec = None
        if mode == "float":
            prec = default_precision() if prec is None else int(prec)
            if prec < MIN_PRECISION:
                raise ValueError(f"float precision must be >= {MIN_PRECISION} bits, got {prec}")
            self.prec = prec
            self.ctx = MPContext()
            self.ctx.prec = prec

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    def __repr__(self):
        if self.exact:
            return "Kernel('exact')"
        return f"Kernel('float', prec={self.prec})"

    def __call__(self, value):
        if self.exact:
            return to_fraction(value)
        if isinstance(value, Rational):
            return self.ctx.mpf(value.numerator) / value.denominator
        if isinstance(value, str):
            value = value.strip()
            if "/" in value:
                return self(Fraction(value))
            return self.ctx.mpf(value)
        return self.ctx.convert(value)

    def vector(self, values):
        return tuple(self(v) for v in values)

    def matrix(self, rows):
        return [[self(v) for v in row] for row in rows]

    def det(self, rows):
        return det(self.matrix(rows))

    def __eq__(self, other):
        return isinstance(other, Kernel) and (self.mode, self.prec) == (other.mode, other.prec)

    def __hash__(self):
        return hash((self.mode, self.prec))


EXACT = Kernel("exact")


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        # Floats are taken at face value (their shortest repr), not bitwise.
        return Fraction(repr(value))
    if hasattr(value, "_mpf_"):
        raise DomainError("cannot convert a high-precision float to an exact rational")
    return Fraction(value)


def is_exact(value) -> bool:
    return isinstance(value, Rational)


def kernel_of(values) -> Kernel:
    """Infer the kernel from a collection of scalars (exact unless an mpf shows up)."""
    for v in values:
        ctx = getattr(v, "context", None)
        if ctx is not None and hasattr(v, "_mpf_"):
            k = Kernel.__new__(Kernel)
            k.mode, k.ctx, k.prec = "float", ctx, ctx.prec
            return k
    return EXACT


def is_zero(value) -> bool:
    return value == 0


def det(rows):
    """Determinant of a square list-of-lists.

    Exact entries go through Bareiss fraction-free elimination; any mpf entry
    switches to Gaussian elimination with partial pivoting in that context.
    """
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    flat = [v for r in rows for v in r]
    if all(is_exact(v) for v in flat):
        return _det_bareiss([[Fraction(v) for v in r] for r in rows])
    kern = kernel_of(flat)
    return _det_pivoted([[kern(v) for v in r] for r in rows], kern)


def _det_bareiss(a):
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) / prev
            row_i[k] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def _det_pivoted(a, kern):
    n = len(a)
    result = kern(1)
    for k in range(n):
        p = max(range(k, n), key=lambda r: abs(a[r][k]))
        if a[p][k] == 0:
            return kern(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            result = -result
        piv = a[k][k]
        result *= piv
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                row_i, row_k = a[i], a[k]
                for j in range(k + 1, n):
                    row_i[j] -= f * row_k[j]
    return result


def submatrix(rows, row_idx, col_idx):
    """Rows/columns are 1-based index sequences."""
    return [[rows[r - 1][c - 1] for c in col_idx] for r in row_idx]


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def fmt(value) -> str:
    """Stable text form for JSON/CSV output."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    ctx = getattr(value, "context", None)
    if ctx is not None:
        return ctx.nstr(value, max(15, int(ctx.dps)))
    return repr(value)
