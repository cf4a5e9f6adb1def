import json
import logging
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from tpschur.analytic import builtin_stream, dilation_system, general_system, polynomial_system
from tpschur.collocation import collocate
from tpschur.errors import DomainError, FactorizationDegenerateError, ResourceGuardError
from tpschur.scalar import det, submatrix
from tpschur.tpcore import (
    BDFactorization,
    bd_factorize,
    minor_count,
    tp_bruteforce,
    tp_initial_minors,
    tp_sufficiency_dilation,
    tp_wronskian_truncated,
)

from conftest import distinct_rationals, random_rational

F = Fraction


def eye(n):
    return [[F(int(r == c)) for c in range(n)] for r in range(n)]


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def random_tp(rng, n):
    """Product of random bidiagonals with positive entries; TP by construction."""
    M = [[F(0)] * n for _ in range(n)]
    for r in range(n):
        M[r][r] = random_rational(rng, F(1, 2), F(3))
    for _ in range(n):
        L, U = eye(n), eye(n)
        for r in range(1, n):
            L[r][r - 1] = random_rational(rng, F(1, 10), F(2))
            U[r - 1][r] = random_rational(rng, F(1, 10), F(2))
        M = matmul(matmul(L, M), U)
    return M


def test_bruteforce_examples():
    assert tp_bruteforce(eye(3)).is_tp
    v = tp_bruteforce([[1, 2], [3, 4]])
    assert not v.is_tp
    assert v.witness == ((1, 2), (1, 2), -2)
    vdm = [[F(x) ** k for k in range(4)] for x in (1, 2, 3, 5)]
    assert tp_bruteforce(vdm).is_tp


def test_bruteforce_counts_and_guard():
    assert minor_count(2, 2) == 5
    assert tp_bruteforce(eye(3)).minors_checked == minor_count(3, 3)
    with pytest.raises(ResourceGuardError):
        tp_bruteforce(eye(3), max_minors=10)


def test_bruteforce_rectangular():
    assert tp_bruteforce([[1, 1, 1], [1, 2, 4]]).is_tp
    assert not tp_bruteforce([[1, 2, 1], [1, 1, 4]]).is_tp


def test_initial_minor_examples():
    assert tp_initial_minors(eye(3)).is_tp
    v = tp_initial_minors([[1, 2], [3, 4]])
    assert not v.is_tp and v.witness[2] == -2
    with pytest.raises(DomainError):
        tp_initial_minors([[1, 2, 3], [4, 5, 6]])


def test_initial_minors_witness_in_original_coordinates():
    # only a transposed-family initial minor is negative here
    M = [[1, 1, -1], [1, 2, 1], [1, 3, 4]]
    v = tp_initial_minors(M)
    assert not v.is_tp
    rows, cols, value = v.witness
    assert det(submatrix(M, rows, cols)) == value < 0
    assert (rows, cols) == ((1,), (3,))


def test_initial_minors_singular_counterexample(caplog):
    M = [[0, 0], [0, -1]]
    with caplog.at_level(logging.WARNING, logger="tpschur.tpcore"):
        v = tp_initial_minors(M, crosscheck=True)
    assert v.is_tp
    assert v.disagreement is not None
    assert v.disagreement["bruteforce"]["is_tp"] is False
    assert "disagree" in caplog.text


def test_initial_minors_agree_on_tp_products(rng):
    for _ in range(20):
        M = random_tp(rng, rng.randint(1, 5))
        v = tp_initial_minors(M, crosscheck=True)
        assert v.is_tp and v.disagreement is None


def test_initial_minor_witness_is_a_real_negative_minor(rng):
    # a negative initial minor is a negative minor, so this direction never disagrees
    for _ in range(40):
        n = rng.randint(2, 4)
        M = [[random_rational(rng, F(-1), F(3)) for _ in range(n)] for _ in range(n)]
        v = tp_initial_minors(M, crosscheck=True)
        if not v.is_tp:
            assert not tp_bruteforce(M).is_tp
            rows, cols, value = v.witness
            assert det(submatrix(M, rows, cols)) == value < 0


def test_sufficiency_examples():
    v = tp_sufficiency_dilation(builtin_stream("exp"), [1, 2, 3], 20)
    assert v.is_tp and v.interval[0] == 0
    v = tp_sufficiency_dilation(builtin_stream("geometric"), [F(1), F(2)], 20)
    assert v.is_tp and v.interval == (0, F(1, 2))
    v = tp_sufficiency_dilation(builtin_stream("cos"), [1, 2], 10)
    assert not v.is_tp and v.witness[1] == (2,)
    with pytest.raises(DomainError):
        tp_sufficiency_dilation(builtin_stream("exp"), [2, 1], 5)


def test_sufficiency_certificate_is_sound(rng):
    for name in ("exp", "geometric", "geometric_even"):
        for _ in range(5):
            n = rng.randint(1, 3)
            a = distinct_rationals(rng, n, F(1, 2), F(2))
            v = tp_sufficiency_dilation(builtin_stream(name), a, 25)
            assert v.is_tp
            R = v.interval[1]
            hi = F(1, 2) * (R if R != float("inf") else 1)
            x = distinct_rationals(rng, n, F(0), F(hi))
            if name == "exp":
                from tpschur.scalar import Kernel
                M = collocate(dilation_system(name, a), x, kernel=Kernel("float", 256)).entries
            else:
                M = collocate(dilation_system(name, a), x).entries
            assert tp_bruteforce(M).is_tp


def test_wronskian_examples():
    s = dilation_system("exp", [1, 2])
    v = tp_wronskian_truncated(s, 6)
    assert v.is_tp and v.depth == 6
    assert tp_wronskian_truncated(polynomial_system(eye(3)), 9).is_tp
    v = tp_wronskian_truncated(polynomial_system([[1, 0, 0], [0, 1, 0], [0, 0, -1]]), 6)
    assert not v.is_tp
    assert v.witness[2] < 0
    with pytest.raises(DomainError):
        tp_wronskian_truncated(s, 1)


def test_wronskian_shift_drops_rows():
    s = general_system(["exp", "cosh"])
    full = s.wronskian_block(6)
    assert s.shifted(2).wronskian_block(4) == full[2:]


def test_bd_examples():
    f = bd_factorize([[1, 1], [1, 2]])
    assert f.pivots == [1, 1]
    assert f.lower == {(2, 1): 1} and f.upper == {(2, 1): 1}
    f = bd_factorize([[2, 0, 0], [0, 3, 0], [0, 0, 5]])
    assert f.pivots == [2, 3, 5]
    assert all(v == 0 for v in f.lower.values()) and all(v == 0 for v in f.upper.values())


def test_bd_collocation_of_geometric_is_positive():
    s = dilation_system("geometric", [1, 2, 3])
    M = collocate(s, [F(1, 10), F(1, 5), F(3, 10)]).entries
    f = bd_factorize(M)
    assert all(v > 0 for v in f.parameters())
    assert f.reconstruct() == M


def test_bd_reconstructs_random(rng):
    count = 0
    while count < 50:
        n = rng.randint(1, 5)
        M = [[random_rational(rng, F(-3), F(3)) for _ in range(n)] for _ in range(n)]
        try:
            f = bd_factorize(M)
        except FactorizationDegenerateError:
            continue
        assert f.reconstruct() == M
        count += 1


def test_bd_nonnegative_iff_tp_on_products(rng):
    for _ in range(20):
        M = random_tp(rng, rng.randint(2, 4))
        f = bd_factorize(M)
        assert f.is_nonnegative() and f.reconstruct() == M
    f = bd_factorize([[1, 2], [3, 4]])
    assert not f.is_nonnegative()


def test_bd_degenerate_names_minor():
    with pytest.raises(FactorizationDegenerateError) as info:
        bd_factorize([[0, 1], [1, 0]])
    assert info.value.minor[0] == "M"
    with pytest.raises(FactorizationDegenerateError) as info:
        bd_factorize([[1, 1, 1], [1, 1, 2], [1, 2, 3]])
    assert "vanishes" in str(info.value)


def test_bd_json_round_trip(rng):
    M = random_tp(rng, 4)
    f = bd_factorize(M)
    g = BDFactorization.from_json(json.loads(json.dumps(f.to_json())))
    assert g.reconstruct() == M


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=F(1, 10), max_value=F(5), max_denominator=20), min_size=3, max_size=3),
       st.integers(min_value=1, max_value=3))
def test_bd_positive_parameters_give_tp(params, n):
    # any product of bidiagonals with positive parameters is TP and recovers them
    f = BDFactorization(
        n, [params[0] + k for k in range(n)],
        {(i, j): params[1] for j in range(1, n) for i in range(j + 1, n + 1)},
        {(i, j): params[2] for j in range(1, n) for i in range(j + 1, n + 1)},
    )
    M = f.reconstruct()
    assert tp_bruteforce(M).is_tp
    g = bd_factorize(M)
    assert g.pivots == f.pivots and g.lower == f.lower and g.upper == f.upper


def _quotient(M, i, j):
    def minor(r0, r1, c):
        if c == 0:
            return 1
        return det(submatrix(M, range(r0, r1 + 1), range(1, c + 1)))
    return minor(i - j + 1, i, j) * minor(i - j, i - 2, j - 1) / (minor(i - j, i - 1, j) * minor(i - j + 1, i - 1, j - 1))


def test_bd_multipliers_are_minor_quotients(rng):
    for _ in range(20):
        n = rng.randint(2, 5)
        M = random_tp(rng, n)
        f = bd_factorize(M)
        Mt = [list(c) for c in zip(*M)]
        for (i, j), m in f.lower.items():
            assert m == _quotient(M, i, j)
        for (i, j), m in f.upper.items():
            assert m == _quotient(Mt, i, j)
        lead = [det(submatrix(M, range(1, k + 1), range(1, k + 1))) for k in range(1, n + 1)]
        assert f.pivots == [lead[0]] + [lead[k] / lead[k - 1] for k in range(1, n)]
