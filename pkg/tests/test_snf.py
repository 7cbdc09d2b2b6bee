from itertools import combinations
from math import gcd

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from modhom.snf import integer_rank, invariant_factors, smith_normal_form


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def det_divisors(A):
    """d_k = gcd of k x k minors; invariant factors are d_k / d_{k-1}."""
    m, n = len(A), len(A[0])
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        dk = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                dk = gcd(dk, int(sympy.Matrix([[A[r][c] for c in cols] for r in rows]).det()))
        if dk == 0:
            out += [0] * (min(m, n) - k + 1)
            break
        out.append(dk // prev)
        prev = dk
    return tuple(out)


@pytest.mark.parametrize(
    "A, want",
    [
        ([[2, 0], [0, 3]], (1, 6)),
        ([[1, -1], [6, 6]], (1, 12)),
        ([[0, 0], [0, 0]], (0, 0)),
        ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], (2, 6, 12)),
    ],
)
def test_hand_examples(A, want):
    assert invariant_factors(A) == want


def test_integer_rank_examples():
    e1 = [[1, 0, 0, 0]] + [[0] * 4] * 3
    e2 = [[0] * 4, [0] * 4, [0, 0, 1, 0], [0] * 4]
    assert integer_rank([e1, e2]) == 2
    assert integer_rank([e1, e1]) == 1
    assert integer_rank([]) == 0


mats = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=80, deadline=None)
@given(mats)
def test_snf_certificate(A):
    res = smith_normal_form(A)
    assert matmul(matmul(res.U, A), res.V) == [list(r) for r in res.D]
    assert abs(sympy.Matrix(res.U).det()) == 1
    assert abs(sympy.Matrix(res.V).det()) == 1
    d = res.invariant_factors
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert d == det_divisors(A)
    assert res.rank == sympy.Matrix(A).rank()
