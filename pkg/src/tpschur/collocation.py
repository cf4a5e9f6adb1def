"""Collocation matrices, their initial minors, and the Schur expansion of
those minors in terms of Wronskian minors at 0."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .analytic import FunctionSystem, coefficient_matrix_minor, wronskian_initial_minor
from .errors import DomainError
from .partitions import Partition, c_lambda, partitions_of
from .scalar import EXACT, Kernel, det, fmt, submatrix, transpose
from .symfunc import Bialternant, vandermonde

DEFAULT_EVAL_ORDER = 120


def check_nodes(nodes, domain=None):
    nodes = tuple(nodes)
    if not nodes:
        raise DomainError("need at least one node")
    for p, q in zip(nodes, nodes[1:]):
        if not p < q:
            raise DomainError(f"nodes must be strictly increasing: {p} !< {q}")
    if domain is not None:
        lo, hi = domain
        for x in nodes:
            if not lo < x < hi:
                raise DomainError(f"node {x} outside the domain ({lo}, {hi})")
    return nodes


@dataclass
class CollocationMatrix:
    entries: list
    system: FunctionSystem
    nodes: tuple
    eval_order: int
    kernel: Kernel = EXACT

    @property
    def n(self):
        return len(self.entries)

    def initial_minor(self, i, j, transposed=False):
        return initial_minor(self, i, j, transposed)

    def to_json(self):
        return {
            "nodes": [fmt(x) for x in self.nodes],
            "entries": [[fmt(v) for v in row] for row in self.entries],
            "system": self.system.to_config(),
        }


def collocate(system: FunctionSystem, nodes, eval_order: int = DEFAULT_EVAL_ORDER,
              kernel: Optional[Kernel] = None) -> CollocationMatrix:
    """``M[i][j] = f_j(x_i)``, using closed forms where the stream has one.

    Streams without a closed form in the chosen kernel are evaluated by their
    Maclaurin polynomial of degree ``eval_order``.
    """
    kernel = kernel or EXACT
    lo, hi = (v if abs(v) == math.inf else kernel(v) for v in system.domain)
    nodes = check_nodes(kernel.vector(nodes), (lo, hi))
    if len(nodes) != system.n:
        raise DomainError(f"{len(nodes)} nodes for a system of {system.n} functions")
    entries = [[s.value(x, kernel, eval_order) for s in system.streams] for x in nodes]
    return CollocationMatrix(entries, system, nodes, eval_order, kernel)


def _check_ij(i, j, n):
    if not 0 < j <= i <= n:
        raise DomainError(f"initial minor needs 0 < j <= i <= {n}, got i={i}, j={j}")


def initial_minor(M, i: int, j: int, transposed: bool = False):
    """``det M[i-j+1..i | 1..j]`` (or the same minor of the transpose)."""
    rows = M.entries if isinstance(M, CollocationMatrix) else M
    _check_ij(i, j, len(rows))
    if transposed:
        rows = transpose(rows)
    return det(submatrix(rows, range(i - j + 1, i + 1), range(1, j + 1)))


@dataclass
class MinorExpansion:
    i: int
    j: int
    transposed: bool
    truncation: int
    value_direct: object
    value_series: object
    terms: List[Tuple[Partition, object]] = field(default_factory=list)
    tail_estimate: object = 0
    vandermonde: object = 1
    grade_partials: List[Tuple[int, object]] = field(default_factory=list)

    @property
    def abs_error(self):
        return abs(self.value_series - self.value_direct)

    @property
    def symmetric_part(self):
        """Series value divided by the Vandermonde factor of the window."""
        return self.value_series / self.vandermonde

    def convergence_curve(self):
        """``(K, |partial_K - direct|)`` for every completed grade ``K``."""
        return [(k, abs(v - self.value_direct)) for k, v in self.grade_partials]

    def to_json(self, with_terms=True):
        out = {
            "i": self.i,
            "j": self.j,
            "transposed": self.transposed,
            "truncation": self.truncation,
            "value_direct": fmt(self.value_direct),
            "value_series": fmt(self.value_series),
            "abs_error": fmt(self.abs_error),
            "tail_estimate": fmt(self.tail_estimate),
        }
        if with_terms:
            out["terms"] = [{"lambda": list(lam), "contribution": fmt(c)} for lam, c in self.terms]
        return out

    def to_csv(self) -> str:
        return curve_csv(self.convergence_curve())


def curve_csv(curve, header=("K", "abs_error")) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for k, err in curve:
        w.writerow([k, fmt(err)])
    return buf.getvalue()


def _window(nodes, i, j, transposed):
    return tuple(nodes[:j]) if transposed else tuple(nodes[i - j:i])


def expand_minor(system: FunctionSystem, nodes, i: int, j: int, transposed: bool = False,
                 max_size: int = 20, kernel: Optional[Kernel] = None,
                 eval_order: int = DEFAULT_EVAL_ORDER, direct: bool = True) -> MinorExpansion:
    """Truncated Schur expansion of an initial minor.

    The untransposed minor pairs the Wronskian minor of the first ``j``
    functions with Schur polynomials in ``x_{i-j+1..i}``; the transposed one
    pairs functions ``i-j+1..i`` with ``x_1..x_j``. Sums run a full grade
    ``|λ| = k`` at a time for ``k = 0..max_size``.
    """
    kernel = kernel or EXACT
    nodes = kernel.vector(nodes)
    _check_ij(i, j, system.n)
    if max_size < 0:
        raise DomainError("max_size must be nonnegative")
    window = _window(nodes, i, j, transposed)
    wrow = i if transposed else j
    schur = Bialternant(window)
    vdm = vandermonde(window)

    terms = []
    partials = []
    running = kernel(0)
    last_grade = 0
    for k in range(max_size + 1):
        grade = 0
        for lam in partitions_of(k, max_length=j):
            w = wronskian_initial_minor(system, wrow, lam, width=j)
            if w == 0:
                contrib = 0 * vdm
            else:
                contrib = w / c_lambda(lam, j) * schur(lam)
            terms.append((lam, contrib))
            grade += contrib
        running += grade
        partials.append((k, vdm * running))
        last_grade = grade

    value_series = vdm * running
    value_direct = None
    if direct:
        M = collocate(system, nodes, eval_order, kernel)
        value_direct = initial_minor(M, i, j, transposed)
    return MinorExpansion(
        i, j, transposed, max_size, value_direct, value_series, terms,
        tail_estimate=abs(vdm * last_grade), vandermonde=vdm, grade_partials=partials,
    )


def expand_minor_polynomial(system: FunctionSystem, nodes, i: int, j: int,
                            transposed: bool = False, kernel: Optional[Kernel] = None) -> MinorExpansion:
    """Finite expansion of a polynomial basis: coefficient-matrix minors
    ``A[row, λ]`` over partitions with ``λ_1 <= n - j``."""
    if system.flavor != "polynomial":
        raise DomainError(f"expected a polynomial system, got {system.flavor}")
    kernel = kernel or EXACT
    nodes = kernel.vector(nodes)
    n = system.n
    _check_ij(i, j, n)
    window = _window(nodes, i, j, transposed)
    row = i if transposed else j
    schur = Bialternant(window)
    vdm = vandermonde(window)
    terms = []
    partials = []
    running = kernel(0)
    for k in range(j * (n - j) + 1):
        for lam in partitions_of(k, max_part=n - j, max_length=j):
            a = coefficient_matrix_minor(system.A, row, lam, width=j)
            contrib = a * schur(lam) if a else 0 * vdm
            terms.append((lam, contrib))
            running += contrib
        partials.append((k, vdm * running))
    M = collocate(system, nodes, kernel=kernel)
    direct = initial_minor(M, i, j, transposed)
    return MinorExpansion(
        i, j, transposed, j * (n - j), direct, vdm * running, terms,
        tail_estimate=0 * vdm, vandermonde=vdm, grade_partials=partials,
    )
