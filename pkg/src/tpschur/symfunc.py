"""Vandermonde products and Schur polynomial evaluation.

Two independent evaluators are provided: the bialternant ratio of two
determinants, and the combinatorial sum over semistandard tableaux.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .errors import ResourceGuardError, SingularNodesError
from .partitions import Partition
from .scalar import det

TABLEAU_MAX_SIZE = 25
TABLEAU_MAX_VARS = 8


def vandermonde(nodes):
    """Product of ``x_j - x_i`` over ``i < j`` (1 for a single node).

    This is ``det(x_j^(i-1))``; the decreasing-exponent determinant differs
    from it by ``(-1)^(n(n-1)/2)``.
    """
    nodes = tuple(nodes)
    out = 1
    for j in range(len(nodes)):
        for i in range(j):
            out *= nodes[j] - nodes[i]
    return out


def scale_nodes(alpha, nodes):
    return tuple(alpha * x for x in nodes)


class Bialternant:
    """Schur evaluator for one fixed node sequence.

    Caches node powers and the denominator determinant, which makes long
    sums over partitions at the same nodes cheap.
    """

    def __init__(self, nodes):
        self.nodes = tuple(nodes)
        self.n = len(self.nodes)
        self._powers = [[1] for _ in self.nodes]
        self._denominator = None

    def power(self, idx, e):
        row = self._powers[idx]
        while len(row) <= e:
            row.append(row[-1] * self.nodes[idx])
        return row[e]

    def alternant(self, exponents):
        return det([[self.power(c, e) for c in range(self.n)] for e in exponents])

    @property
    def denominator(self):
        if self._denominator is None:
            n = self.n
            self._denominator = self.alternant([n - i for i in range(1, n + 1)])
        return self._denominator

    def __call__(self, lam):
        lam = Partition(lam)
        n = self.n
        if len(lam) > n:
            return 0 * self.nodes[0] if n else 0
        if n == 0:
            return 1
        den = self.denominator
        if den == 0:
            raise SingularNodesError(
                "repeated nodes make the bialternant denominator vanish; use schur_tableaux"
            )
        padded = lam.padded(n)
        num = self.alternant([padded[i - 1] + n - i for i in range(1, n + 1)])
        return num / den


def schur_bialternant(lam, nodes):
    """``det(x_j^(λ_i+n-i)) / det(x_j^(n-i))``.

    Returns 0 straight away when the partition has more parts than there are
    nodes.
    """
    return Bialternant(nodes)(lam)


def _interlacing_below(lam, width):
    # all mu with lam_{i+1} <= mu_i <= lam_i and len(mu) <= width
    lam = tuple(lam) + (0,)
    m = min(len(lam) - 1, width)
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(m)]

    def rec(i, prefix):
        if i == m:
            yield Partition(prefix)
            return
        for v in ranges[i]:
            yield from rec(i + 1, prefix + (v,))

    if len(lam) - 1 > width + 1:
        return
    yield from rec(0, ())


def _strip_chains(lam, n):
    # chains () = mu_0 ⊂ mu_1 ⊂ ... ⊂ mu_n = lam of horizontal strips
    if n == 0:
        if len(lam) == 0:
            yield ((),)
        return
    if len(lam) > n:
        return
    for mu in _interlacing_below(lam, n - 1):
        for chain in _strip_chains(mu, n - 1):
            yield chain + (tuple(lam),)


def semistandard_tableaux(lam, n):
    """Yield the semistandard tableaux of shape ``lam`` with entries ``1..n``.

    Each tableau is a tuple of rows; rows weakly increase and columns
    strictly increase.
    """
    lam = Partition(lam)
    for chain in _strip_chains(lam, n):
        rows = []
        for r in range(len(lam)):
            row = []
            for k in range(1, n + 1):
                outer = chain[k][r] if r < len(chain[k]) else 0
                inner = chain[k - 1][r] if r < len(chain[k - 1]) else 0
                row.extend([k] * (outer - inner))
            rows.append(tuple(row))
        yield tuple(rows)


@lru_cache(maxsize=4096)
def tableau_weights(lam, n):
    """Map content vector -> number of tableaux with that content."""
    counts = {}
    for t in semistandard_tableaux(lam, n):
        content = [0] * n
        for row in t:
            for v in row:
                content[v - 1] += 1
        key = tuple(content)
        counts[key] = counts.get(key, 0) + 1
    return tuple(sorted(counts.items()))


def schur_tableaux(lam, nodes, max_size=TABLEAU_MAX_SIZE, max_vars=TABLEAU_MAX_VARS):
    """Monomial sum over semistandard tableaux; works for repeated or zero nodes."""
    lam = Partition(lam)
    nodes = tuple(nodes)
    n = len(nodes)
    if lam.size() > max_size:
        raise ResourceGuardError(f"|lambda| = {lam.size()} exceeds tableau guard {max_size}", max_size)
    if n > max_vars:
        raise ResourceGuardError(f"{n} nodes exceed tableau guard {max_vars}", max_vars)
    total = 0
    for content, count in tableau_weights(lam, n):
        total += count * math.prod(x**e for x, e in zip(nodes, content))
    return total


schur = schur_bialternant
