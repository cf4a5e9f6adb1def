"""Cauchy-type identities: partition sums of Schur products against
normalised collocation determinants of dilation systems."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from .analytic import CoefficientStream, builtin_stream, dilation_system, f_lambda, stream_from_config
from .collocation import collocate, curve_csv
from .errors import DomainError, IdentityMismatchError
from .partitions import Partition, c_lambda, is_even_type, partitions_of
from .scalar import EXACT, Kernel, fmt
from .symfunc import Bialternant, vandermonde

IDENTITIES = ("classic", "even_minus", "even_plus", "generic")
DEFAULT_STREAM = {"classic": "geometric", "even_minus": "geometric_even", "even_plus": "lorentz"}
POLE_MARGIN = Fraction(1, 1000)


@dataclass
class IdentityReport:
    identity_id: str
    inputs: dict
    lhs_partial_sums: List[Tuple[int, object]]
    rhs_closed: object
    rhs_determinant: object
    abs_errors: List[object] = field(default_factory=list)
    closed_form_available: bool = True
    contributing: int = 0
    decay_ratio: Optional[float] = None

    @property
    def final_error(self):
        return self.abs_errors[-1] if self.abs_errors else None

    def curve(self):
        return [(k, e) for (k, _), e in zip(self.lhs_partial_sums, self.abs_errors)]

    def to_json(self):
        return {
            "identity": self.identity_id,
            "inputs": self.inputs,
            "rhs_closed": fmt(self.rhs_closed),
            "rhs_determinant": fmt(self.rhs_determinant),
            "closed_form_available": self.closed_form_available,
            "contributing_partitions": self.contributing,
            "decay_ratio": self.decay_ratio,
            "final_abs_error": fmt(self.final_error),
            "lhs_partial_sums": [[k, fmt(v)] for k, v in self.lhs_partial_sums],
            "abs_errors": [fmt(e) for e in self.abs_errors],
        }

    def to_csv(self) -> str:
        return curve_csv(self.curve())


def even_plus_sign(lam, n: int) -> int:
    """``(-1)^((2|λ| - n(n-1))/4)``; the exponent must be an integer."""
    e = 2 * Partition(lam).size() - n * (n - 1)
    if e % 4:
        raise DomainError(f"sign exponent (2|λ| - n(n-1))/4 = {e}/4 is not an integer for {tuple(lam)}")
    return 1 if (e // 4) % 2 == 0 else -1


def stream_weight(stream: CoefficientStream, n: int) -> Callable:
    """``λ -> F_λ / C_λ`` for the width-``n`` sum."""
    def weight(lam):
        f = f_lambda(stream, lam, n)
        if f == 0:
            return 0
        return Fraction(f, c_lambda(lam, n)) if isinstance(f, int) else f / c_lambda(lam, n)
    return weight


def identity_lhs(stream: CoefficientStream, a, x, max_size: int,
                 kernel: Optional[Kernel] = None, weight: Optional[Callable] = None):
    """Cumulative sums over grades ``0..max_size`` of ``w(λ) s_λ(a) s_λ(x)``,
    with ``w = F_λ/C_λ`` unless another weight is given.

    Returns ``(partial_sums, contributing)`` where ``contributing`` counts
    partitions with a nonzero weight.
    """
    kernel = kernel or EXACT
    a, x = kernel.vector(a), kernel.vector(x)
    n = len(a)
    if len(x) != n:
        raise DomainError(f"a and x must have the same length ({n} vs {len(x)})")
    weight = weight or stream_weight(stream, n)
    sa, sx = Bialternant(a), Bialternant(x)
    running = 0 * a[0]
    partials = []
    contributing = 0
    for k in range(max_size + 1):
        for lam in partitions_of(k, max_length=n):
            w = weight(lam)
            if w == 0:
                continue
            contributing += 1
            running += w * sa(lam) * sx(lam)
        partials.append((k, running))
    return partials, contributing


def _pole_guard(stream, a, x, kernel, margin):
    if kernel.exact or stream.radius == math.inf:
        return
    reach = max(abs(v) for v in a) * max(abs(v) for v in x)
    if reach > stream.radius * (1 - kernel(margin)):
        raise DomainError(f"max |a_j x_i| = {reach} is within the pole margin {margin} of R = {stream.radius}")


def identity_rhs_determinant(stream: CoefficientStream, a, x, kernel: Optional[Kernel] = None,
                             pole_margin=POLE_MARGIN, eval_order: int = 120):
    """``det M / (V(a) V(x))`` for the dilation system ``f(a_j x)`` at ``x``.

    Both sequences are sorted first; the ratio is unchanged by reordering.
    """
    kernel = kernel or EXACT
    a = tuple(sorted(kernel.vector(a)))
    x = tuple(sorted(kernel.vector(x)))
    if len(a) != len(x):
        raise DomainError("a and x must have the same length")
    va, vx = vandermonde(a), vandermonde(x)
    if va == 0 or vx == 0:
        raise DomainError("repeated values in a or x make the Vandermonde factor vanish")
    _pole_guard(stream, a, x, kernel, pole_margin)
    M = collocate(dilation_system(stream, a), x, eval_order, kernel)
    return kernel.det(M.entries) / (va * vx)


def identity_rhs_closed(identity_id: str, a, x, kernel: Optional[Kernel] = None):
    """Product form of the right-hand side for the named identities."""
    kernel = kernel or EXACT
    a, x = kernel.vector(a), kernel.vector(x)
    n = len(a)
    if identity_id == "classic":
        den = math.prod((1 - aj * xi for aj in a for xi in x), start=1)
        num = 1
    elif identity_id in ("even_minus", "even_plus"):
        num = math.prod(((a[i] + a[j]) * (x[i] + x[j]) for i in range(n) for j in range(i + 1, n)), start=1)
        if identity_id == "even_minus":
            den = math.prod(((1 - aj * xi) * (1 + aj * xi) for aj in a for xi in x), start=1)
        else:
            den = math.prod((1 + ai * ai * xj * xj for ai in a for xj in x), start=1)
    else:
        raise DomainError(f"no closed form for identity {identity_id!r}")
    if den == 0:
        raise DomainError("closed form hits a pole (some a_j x_i = ±1)")
    return num / den


def _ln(v):
    # errors can underflow a double, so take logs of the exact values
    if isinstance(v, Fraction):
        return math.log(v.numerator) - math.log(v.denominator)
    ctx = getattr(v, "context", None)
    if ctx is not None:
        return float(ctx.ln(v))
    return math.log(v)


def decay_ratio(curve, floor=0, burn_in: int = 2) -> Optional[float]:
    """Geometric-mean ratio of the error per grade after ``burn_in``.

    Errors at or below ``floor`` (round-off level) are ignored.
    """
    pts = [(k, e) for k, e in curve if k >= burn_in and e > floor]
    if len(pts) < 2:
        return None
    (k0, e0), (k1, e1) = pts[0], pts[-1]
    return math.exp((_ln(e1) - _ln(e0)) / (k1 - k0))


def verify_identity(stream, identity_id: str, a, x, max_size: int,
                    kernel: Optional[Kernel] = None, tolerance=None,
                    pole_margin=POLE_MARGIN) -> IdentityReport:
    """Assemble an :class:`IdentityReport`.

    The two right-hand sides (product form and normalised determinant) must
    agree before the partition sum is compared with them; a mismatch raises
    :class:`IdentityMismatchError`.
    """
    if identity_id not in IDENTITIES:
        raise DomainError(f"unknown identity {identity_id!r}")
    if stream is None:
        if identity_id == "generic":
            raise DomainError("generic identity needs an explicit stream")
        stream = builtin_stream(DEFAULT_STREAM[identity_id])
    elif isinstance(stream, (str, dict)):
        stream = stream_from_config(stream)
    kernel = kernel or EXACT
    a, x = kernel.vector(a), kernel.vector(x)
    n = len(a)

    rhs_det = identity_rhs_determinant(stream, a, x, kernel, pole_margin)
    base_weight = stream_weight(stream, n)
    weight = base_weight
    if identity_id == "even_plus":
        # the product form differs from det/(V V) by (-1)^(n(n-1)/2)
        flip = -1 if (n * (n - 1) // 2) % 2 else 1
        rhs_det = flip * rhs_det

        def weight(lam):
            if not is_even_type(lam, n):
                return 0
            w = even_plus_sign(lam, n)
            if w != flip * base_weight(lam):
                raise IdentityMismatchError(
                    f"sign {w} of {tuple(lam)} disagrees with the stream weight {base_weight(lam)}"
                )
            return w

    closed_available = identity_id != "generic"
    if closed_available:
        rhs_closed = identity_rhs_closed(identity_id, a, x, kernel)
        if tolerance is None:
            tolerance = 0 if kernel.exact else kernel.ctx.ldexp(1, -(kernel.prec // 2))
        gap = abs(rhs_closed - rhs_det)
        if gap > tolerance * max(1, abs(rhs_closed)):
            raise IdentityMismatchError(
                f"closed form {fmt(rhs_closed)} and determinant form {fmt(rhs_det)} differ by {fmt(gap)}"
            )
    else:
        rhs_closed = rhs_det

    partials, contributing = identity_lhs(stream, a, x, max_size, kernel, weight)
    errors = [abs(v - rhs_closed) for _, v in partials]
    floor = 0 if kernel.exact else kernel.ctx.ldexp(abs(rhs_closed) + 1, -(kernel.prec - 16))
    ratio = decay_ratio(list(zip((k for k, _ in partials), errors)), floor)
    inputs = {"stream": stream.name, "a": [fmt(v) for v in a], "x": [fmt(v) for v in x],
              "max_size": max_size, "mode": kernel.mode}
    return IdentityReport(identity_id, inputs, partials, rhs_closed, rhs_det, errors,
                          closed_available, contributing, ratio)
