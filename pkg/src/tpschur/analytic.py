"""Analytic function systems described by their derivatives at 0.

A system is never materialised as functions; each member is a lazy stream of
Maclaurin data ``f^(k)(0)`` plus, where one exists, a closed-form evaluator
used for collocation.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import DomainError
from .partitions import Partition, factorial, staircase_indices
from .scalar import det, is_exact, to_fraction

INF = math.inf


class CoefficientStream:
    """Derivative sequence of one analytic function at 0.

    ``derivs(k)`` must return ``f^(k)(0)``; results are cached.
    ``closed_form(x, kernel)`` returns ``f(x)`` in the kernel's arithmetic,
    or ``None`` when no closed form is representable there.
    """

    def __init__(
        self,
        derivs: Callable[[int], object],
        radius=INF,
        name: Optional[str] = None,
        closed_form: Optional[Callable] = None,
        kind: str = "exact",
        config: Optional[dict] = None,
    ):
        self._derivs = derivs
        self.radius = radius
        self.name = name
        self.closed_form = closed_form
        self.kind = kind
        self.config = config
        self._cache = {}
        self._lock = threading.Lock()

    def derivs(self, k: int):
        if k < 0:
            raise DomainError("derivative order must be nonnegative")
        try:
            return self._cache[k]
        except KeyError:
            pass
        value = self._derivs(k)
        with self._lock:
            self._cache[k] = value
        return value

    def __call__(self, k: int):
        return self.derivs(k)

    def __repr__(self):
        return f"CoefficientStream({self.name or '?'}, R={self.radius})"

    def series(self, x, order: int):
        """Partial Maclaurin sum up to and including ``x^order``."""
        total = 0 * x
        xk = 1 + 0 * x
        for k in range(order + 1):
            d = self.derivs(k)
            if d:
                total += d * xk / factorial(k)
            xk *= x
        return total

    def value(self, x, kernel, order: int = 80):
        if self.closed_form is not None:
            v = self.closed_form(x, kernel)
            if v is not None:
                return v
        return self.series(x, order)

    def dilate(self, a) -> "CoefficientStream":
        """Stream of ``x -> f(a x)``."""
        base = self
        closed = None
        if self.closed_form is not None:
            def closed(x, kernel):
                return base.closed_form(a * x, kernel)
        radius = self.radius / a if a else INF
        return CoefficientStream(
            lambda k: a**k * base.derivs(k), radius=radius,
            name=f"{self.name}({a}*x)", closed_form=closed, kind=self.kind,
        )

    def shift(self, k: int) -> "CoefficientStream":
        """Stream of the ``k``-th derivative ``f^(k)``."""
        if k == 0:
            return self
        base = self
        return CoefficientStream(
            lambda m: base.derivs(m + k), radius=self.radius,
            name=f"D^{k} {self.name}", kind=self.kind,
        )


def _periodic(pattern):
    def derivs(k):
        return pattern[k % len(pattern)]
    return derivs


def _transcendental(fn_name):
    # no rational closed form; exact mode falls back to the series
    def closed(x, kernel):
        if kernel.exact:
            return None
        return getattr(kernel.ctx, fn_name)(x)
    return closed


def _checked_pole(fn):
    def closed(x, kernel):
        try:
            return fn(x)
        except ZeroDivisionError:
            raise DomainError(f"pole at x = {x}") from None
    return closed


def _geometric_even_deriv(k):
    return factorial(k) if k % 2 == 0 else 0


def _lorentz_deriv(k):
    if k % 2:
        return 0
    return (-1) ** (k // 2) * factorial(k)


BUILTIN_NAMES = ("exp", "geometric", "geometric_even", "lorentz", "cos", "sin", "sinh", "cosh", "custom")


def builtin_stream(name: str, derivs: Optional[Sequence] = None) -> CoefficientStream:
    """Named stream with exact derivative data.

    ``custom`` takes a finite list of derivative values ``f^(k)(0)``; the
    stream is zero past the list (a polynomial, so the radius is infinite).
    """
    cfg = {"name": name}
    if name == "exp":
        s = CoefficientStream(lambda k: 1, INF, name, _transcendental("exp"))
    elif name == "geometric":
        s = CoefficientStream(factorial, 1, name, _checked_pole(lambda x: 1 / (1 - x)))
    elif name == "geometric_even":
        s = CoefficientStream(_geometric_even_deriv, 1, name, _checked_pole(lambda x: 1 / (1 - x * x)))
    elif name == "lorentz":
        s = CoefficientStream(_lorentz_deriv, 1, name, _checked_pole(lambda x: 1 / (1 + x * x)))
    elif name == "cos":
        s = CoefficientStream(_periodic((1, 0, -1, 0)), INF, name, _transcendental("cos"))
    elif name == "sin":
        s = CoefficientStream(_periodic((0, 1, 0, -1)), INF, name, _transcendental("sin"))
    elif name == "cosh":
        s = CoefficientStream(_periodic((1, 0)), INF, name, _transcendental("cosh"))
    elif name == "sinh":
        s = CoefficientStream(_periodic((0, 1)), INF, name, _transcendental("sinh"))
    elif name == "custom":
        if derivs is None:
            raise DomainError("custom stream needs a list of derivative values")
        vals = tuple(v if not isinstance(v, (str, float)) else to_fraction(v) for v in derivs)
        cfg["derivs"] = [str(v) for v in vals]

        def poly(x, kernel):
            return sum((v * x**k / factorial(k) for k, v in enumerate(vals)), 0 * x)

        s = CoefficientStream(
            lambda k: vals[k] if k < len(vals) else 0, INF, name, poly,
            kind="exact" if all(is_exact(v) for v in vals) else "float",
        )
    else:
        raise DomainError(f"unknown stream {name!r}; expected one of {', '.join(BUILTIN_NAMES)}")
    s.config = cfg
    return s


def stream_from_config(cfg) -> CoefficientStream:
    if isinstance(cfg, str):
        return builtin_stream(cfg)
    return builtin_stream(cfg["name"], cfg.get("derivs"))


class FunctionSystem:
    """Ordered tuple of streams with a flavor.

    Build with :func:`dilation_system`, :func:`polynomial_system` or
    :func:`general_system` rather than directly.
    """

    def __init__(self, streams, flavor="general", domain=(-INF, INF), base=None, a=None, A=None):
        self.streams = tuple(streams)
        self.flavor = flavor
        self.domain = domain
        self.base = base
        self.a = a
        self.A = A

    @property
    def n(self) -> int:
        return len(self.streams)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FunctionSystem({self.flavor}, n={self.n})"

    def shifted(self, k: int) -> "FunctionSystem":
        """The system of ``k``-th derivatives; its Wronskian is this one's with ``k`` rows dropped."""
        return FunctionSystem([s.shift(k) for s in self.streams], "general", self.domain)

    def wronskian_block(self, rows: int):
        """Leading ``rows x n`` block of the infinite Wronskian (rows are derivative orders)."""
        return [[s.derivs(r) for s in self.streams] for r in range(rows)]

    def to_config(self) -> dict:
        if self.flavor == "dilation":
            return {"flavor": "dilation", "base": self.base.config or self.base.name,
                    "a": [str(v) for v in self.a]}
        if self.flavor == "polynomial":
            return {"flavor": "polynomial", "A": [[str(v) for v in row] for row in self.A]}
        return {"flavor": "general", "streams": [s.config or {"name": s.name} for s in self.streams]}


def dilation_system(base, a) -> FunctionSystem:
    """``f_i(x) = f(a_i x)`` for positive strictly increasing ``a``."""
    if isinstance(base, (str, dict)):
        base = stream_from_config(base)
    a = tuple(a)
    if not a:
        raise DomainError("dilation system needs at least one parameter")
    if any(v <= 0 for v in a) or any(p >= q for p, q in zip(a, a[1:])):
        raise DomainError(f"dilation parameters must be positive and strictly increasing: {a}")
    cap = base.radius / a[-1] if base.radius == INF else Fraction(base.radius) / a[-1]
    streams = [base.dilate(v) for v in a]
    return FunctionSystem(streams, "dilation", (-cap, cap), base=base, a=a)


def polynomial_system(A) -> FunctionSystem:
    """Basis ``p_i(x) = sum_k A[i][k] x^k`` of polynomials of degree < n."""
    A = [list(row) for row in A]
    n = len(A)
    if any(len(row) != n for row in A):
        raise DomainError("coefficient matrix must be square")
    streams = []
    for i, row in enumerate(A):
        coeffs = tuple(row)

        def derivs(k, coeffs=coeffs):
            return factorial(k) * coeffs[k] if k < len(coeffs) else 0

        def closed(x, kernel, coeffs=coeffs):
            out = 0 * x
            for c in reversed(coeffs):
                out = out * x + c
            return out

        s = CoefficientStream(derivs, INF, f"p{i + 1}", closed)
        streams.append(s)
    return FunctionSystem(streams, "polynomial", (-INF, INF), A=A)


def general_system(streams) -> FunctionSystem:
    streams = [stream_from_config(s) if isinstance(s, (str, dict)) else s for s in streams]
    if not streams:
        raise DomainError("empty system")
    r = min(s.radius for s in streams)
    return FunctionSystem(streams, "general", (-r, r))


def system_from_config(cfg: dict) -> FunctionSystem:
    flavor = cfg.get("flavor", "general")
    if flavor == "dilation":
        return dilation_system(cfg["base"], [to_fraction(v) for v in cfg["a"]])
    if flavor == "polynomial":
        return polynomial_system([[to_fraction(v) for v in row] for row in cfg["A"]])
    if flavor == "general":
        return general_system(cfg["streams"])
    raise DomainError(f"unknown flavor {flavor!r}")


def wronskian_entry(system: FunctionSystem, row: int, col: int):
    """Entry ``(row, col)`` of the infinite Wronskian at 0, i.e. ``f_col^(row-1)(0)``."""
    if not 1 <= col <= system.n:
        raise DomainError(f"column {col} outside 1..{system.n}")
    if row < 1:
        raise DomainError("row index must be positive")
    return system.streams[col - 1].derivs(row - 1)


def wronskian_initial_minor(system: FunctionSystem, i: int, lam, width: Optional[int] = None):
    """Minor of the transposed Wronskian on rows ``i-j+1..i`` and the
    derivative orders ``λ_j, λ_{j-1}+1, ..., λ_1+j-1`` (increasing)."""
    lam = Partition(lam)
    j = max(len(lam), width or 0)
    if j == 0:
        raise DomainError("width must be positive")
    if not j <= i <= system.n:
        raise DomainError(f"need {j} <= i <= {system.n}, got i = {i}")
    orders = staircase_indices(lam, j)[::-1]
    rows = [system.streams[r - 1] for r in range(i - j + 1, i + 1)]
    return det([[s.derivs(d) for d in orders] for s in rows])


def f_lambda(stream: CoefficientStream, lam, j: int):
    """Product of the base derivatives at the staircase indices of ``lam``."""
    return math.prod((stream.derivs(k) for k in staircase_indices(lam, j)), start=1)


def coefficient_matrix_minor(A, i: int, lam, width: Optional[int] = None):
    """``A[i, λ]``: rows ``i-j+1..i``, columns ``λ_j+1, ..., λ_1+j`` (1-based); zero if a column falls off."""
    lam = Partition(lam)
    j = max(len(lam), width or 0)
    n = len(A)
    if not 1 <= j <= i <= n:
        raise DomainError(f"need 1 <= {j} <= i <= {n}, got i = {i}")
    cols = [k + 1 for k in staircase_indices(lam, j)[::-1]]
    if cols[-1] > len(A[0]):
        return Fraction(0)
    return det([[A[r - 1][c - 1] for c in cols] for r in range(i - j + 1, i + 1)])
