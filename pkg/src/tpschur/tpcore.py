"""Total positivity checks and the bidiagonal (Neville) factorization.

Three routes to a TP verdict are kept deliberately separate:

* ``tp_bruteforce`` evaluates every square minor,
* ``tp_initial_minors`` looks only at the initial minors of ``M`` and ``M^T``,
* ``tp_sufficiency_dilation`` / ``tp_wronskian_truncated`` test sufficient
  conditions on the Maclaurin data without collocating at all.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .analytic import CoefficientStream, FunctionSystem
from .errors import DomainError, FactorizationDegenerateError, ResourceGuardError
from .scalar import det, fmt, submatrix, transpose

log = logging.getLogger(__name__)

BRUTEFORCE_MAX_MINORS = math.comb(14, 7) - 1  # every minor of a 7x7 matrix
WRONSKIAN_MAX_MINORS = 100_000


@dataclass
class TPVerdict:
    is_tp: bool
    method: str
    witness: Optional[tuple] = None
    minors_checked: int = 0
    depth: Optional[int] = None
    interval: Optional[tuple] = None
    disagreement: Optional[dict] = None

    def __bool__(self):
        return self.is_tp

    def to_json(self):
        out = {"is_tp": self.is_tp, "method": self.method, "minors_checked": self.minors_checked}
        if self.witness is not None:
            rows, cols, value = self.witness
            out["witness"] = {"rows": list(rows), "cols": list(cols), "value": fmt(value)}
        if self.depth is not None:
            out["depth"] = self.depth
        if self.interval is not None:
            out["interval"] = [fmt(v) for v in self.interval]
        if self.disagreement is not None:
            out["disagreement"] = self.disagreement
        return out


def minor_count(m: int, n: int) -> int:
    return sum(math.comb(m, k) * math.comb(n, k) for k in range(1, min(m, n) + 1))


def tp_bruteforce(M, max_minors: int = BRUTEFORCE_MAX_MINORS) -> TPVerdict:
    """Check every square minor; stop at the first negative one.

    Minors are visited by order, then row set, then column set, each in
    lexicographic order, so the witness is deterministic.
    """
    rows = [list(r) for r in M]
    m = len(rows)
    n = len(rows[0]) if m else 0
    total = minor_count(m, n)
    if total > max_minors:
        raise ResourceGuardError(f"{m}x{n} matrix has {total} minors, guard is {max_minors}", max_minors)
    checked = 0
    for k in range(1, min(m, n) + 1):
        for rs in combinations(range(1, m + 1), k):
            for cs in combinations(range(1, n + 1), k):
                value = det(submatrix(rows, rs, cs))
                checked += 1
                if value < 0:
                    return TPVerdict(False, "bruteforce", (rs, cs, value), checked)
    return TPVerdict(True, "bruteforce", None, checked)


def initial_minor_sets(n: int):
    """Index sets ``(transposed, rows, cols)`` of the initial minors, M first."""
    for transposed in (False, True):
        for i in range(1, n + 1):
            for j in range(1, i + 1):
                yield transposed, tuple(range(i - j + 1, i + 1)), tuple(range(1, j + 1))


def tp_initial_minors(M, crosscheck: bool = False) -> TPVerdict:
    """TP verdict from the signs of the initial minors of ``M`` and ``M^T``.

    A witness from the transposed family is reported in the coordinates of
    ``M`` (row and column sets swapped). With ``crosscheck`` the brute-force
    verdict is computed too, and any disagreement is logged and attached.
    """
    rows = [list(r) for r in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("initial-minor criterion needs a square matrix")
    rows_t = transpose(rows)
    verdict = None
    checked = 0
    for transposed, rs, cs in initial_minor_sets(n):
        value = det(submatrix(rows_t if transposed else rows, rs, cs))
        checked += 1
        if value < 0:
            witness = (cs, rs, value) if transposed else (rs, cs, value)
            verdict = TPVerdict(False, "initial_minors", witness, checked)
            break
    if verdict is None:
        verdict = TPVerdict(True, "initial_minors", None, checked)
    if crosscheck:
        brute = tp_bruteforce(rows)
        if brute.is_tp != verdict.is_tp:
            verdict.disagreement = {
                "bruteforce": brute.to_json(),
                "matrix": [[fmt(v) for v in r] for r in rows],
            }
            log.warning("initial-minor and brute-force TP verdicts disagree: %s", verdict.disagreement)
    return verdict


def tp_sufficiency_dilation(stream: CoefficientStream, a, order: int) -> TPVerdict:
    """Nonnegative derivatives ``f^(k)(0)``, ``k <= order``, certify that
    ``f(a_1 x), ..., f(a_n x)`` is TP on ``(0, R/a_n)``.

    A negative derivative only makes the test inconclusive; it is reported as
    ``is_tp=False`` with witness ``(("k",), (k,), value)``.
    """
    a = tuple(a)
    if not a or any(v <= 0 for v in a) or any(p >= q for p, q in zip(a, a[1:])):
        raise DomainError(f"dilation parameters must be positive and strictly increasing: {a}")
    R = stream.radius
    interval = (0, R / a[-1] if R == math.inf else Fraction(R) / a[-1])
    for k in range(order + 1):
        d = stream.derivs(k)
        if d < 0:
            return TPVerdict(False, "sufficiency", (("k",), (k,), d), k + 1, depth=order)
    return TPVerdict(True, "sufficiency", None, order + 1, depth=order, interval=interval)


def tp_wronskian_truncated(system: FunctionSystem, rows: int,
                           max_minors: int = WRONSKIAN_MAX_MINORS) -> TPVerdict:
    """Brute-force TP check of the leading ``rows x n`` Wronskian block.

    Passing is evidence up to ``depth = rows`` only; the infinite hypothesis
    cannot be decided at finite depth.
    """
    if rows < system.n:
        raise DomainError(f"need at least n = {system.n} rows, got {rows}")
    v = tp_bruteforce(system.wronskian_block(rows), max_minors=max_minors)
    v.method = "wronskian"
    v.depth = rows
    return v


@dataclass
class BDFactorization:
    """``M = F_{n-1} ... F_1 D G_1 ... G_{n-1}``.

    ``lower[(i, j)]`` and ``upper[(i, j)]`` hold the multipliers for
    ``n >= i > j >= 1``; ``F_k`` carries ``lower[(r, r - k)]`` at position
    ``(r, r-1)`` for ``r = k+1..n`` and ``G_k`` mirrors it above the diagonal.
    """

    n: int
    pivots: list
    lower: dict = field(default_factory=dict)
    upper: dict = field(default_factory=dict)

    def factors(self):
        """``(F list [F_1..F_{n-1}], D, G list [G_1..G_{n-1}])`` as dense matrices."""
        n = self.n
        zero = 0 * self.pivots[0] if self.pivots else 0
        eye = lambda: [[zero + (r == c) for c in range(n)] for r in range(n)]  # noqa: E731
        Fs, Gs = [], []
        for k in range(1, n):
            F, G = eye(), eye()
            for r in range(k + 1, n + 1):
                F[r - 1][r - 2] = self.lower[(r, r - k)]
                G[r - 2][r - 1] = self.upper[(r, r - k)]
            Fs.append(F)
            Gs.append(G)
        D = eye()
        for r in range(n):
            D[r][r] = self.pivots[r]
        return Fs, D, Gs

    def reconstruct(self):
        Fs, D, Gs = self.factors()
        out = D
        for F in Fs:
            out = _matmul(F, out)
        for G in Gs:
            out = _matmul(out, G)
        return out

    def parameters(self):
        return list(self.pivots) + list(self.lower.values()) + list(self.upper.values())

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.parameters())

    def to_json(self):
        key = lambda d: sorted(d.items(), key=lambda kv: (kv[0][1], kv[0][0]))  # noqa: E731
        return {
            "pivots": [fmt(p) for p in self.pivots],
            "lower": [[i, j, fmt(m)] for (i, j), m in key(self.lower)],
            "upper": [[i, j, fmt(m)] for (i, j), m in key(self.upper)],
        }

    @classmethod
    def from_json(cls, data, kernel=None):
        from .scalar import EXACT
        conv = kernel or EXACT
        pivots = [conv(p) for p in data["pivots"]]
        lower = {(int(i), int(j)): conv(m) for i, j, m in data["lower"]}
        upper = {(int(i), int(j)): conv(m) for i, j, m in data["upper"]}
        return cls(len(pivots), pivots, lower, upper)


def _matmul(A, B):
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), 0 * row[0]) for col in cols] for row in A]


def _neville(rows, label):
    """Neville elimination of ``rows`` without row exchanges.

    Column ``j`` is cleared bottom-up with ``row_i -= m[i,j] * row_{i-1}``.
    When the entry above is zero the entry itself must be zero too and the
    multiplier is 0; otherwise the minor ``rows[i-j..i-1 | 1..j]`` vanishes
    and the factorization does not exist.
    Returns ``(multipliers, U)`` with ``U`` upper triangular.
    """
    A = [list(r) for r in rows]
    n = len(A)
    mults = {}
    for j in range(1, n):
        for i in range(n, j, -1):
            below, above = A[i - 1][j - 1], A[i - 2][j - 1]
            if above == 0:
                if below != 0:
                    raise FactorizationDegenerateError(
                        f"{label}[{i - j}..{i - 1} | 1..{j}] vanishes (needed for multiplier m[{i},{j}])",
                        minor=(label, tuple(range(i - j, i)), tuple(range(1, j + 1))),
                    )
                mults[(i, j)] = 0 * below
                continue
            m = below / above
            mults[(i, j)] = m
            A[i - 1] = [b - m * t for b, t in zip(A[i - 1], A[i - 2])]
            A[i - 1][j - 1] = 0 * m
    return mults, A


def bd_factorize(M) -> BDFactorization:
    """Bidiagonal factorization by Neville elimination of ``M`` and then of
    the transpose of the resulting upper triangular factor.

    When the initial minors involved are nonzero the multipliers are the
    usual quotients of initial minors. A needed minor that vanishes while the
    entry to eliminate does not raises :class:`FactorizationDegenerateError`;
    rows are never permuted.
    """
    rows = [list(r) for r in M]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise DomainError("bidiagonal factorization needs a nonempty square matrix")
    lower, U = _neville(rows, "M")
    upper, D = _neville(transpose(U), "U^T")
    pivots = [D[k][k] for k in range(n)]
    return BDFactorization(n, pivots, lower, upper)
