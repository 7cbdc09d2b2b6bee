import pytest
from hypothesis import given, settings, strategies as st

from modhom.census import (
    BranchDatum,
    admissible,
    branch_data,
    census,
    cyclic_order_exists,
    find_witness,
    max_branch_points,
)


def test_admissible_examples():
    assert admissible(2, BranchDatum(10, 0, (2, 5, 10)))
    assert not admissible(2, BranchDatum(10, 0, (2, 5)))
    assert not admissible(2, BranchDatum(9, 0, (3, 9, 9)))


def test_branch_datum_validation():
    with pytest.raises(ValueError):
        BranchDatum(1, 0, ())
    with pytest.raises(ValueError):
        BranchDatum(4, 0, (1, 4))


@pytest.mark.parametrize("g, n, want", [(3, 14, True), (3, 13, False), (2, 7, False), (1, 6, True), (1, 5, False), (0, 2, False)])
def test_order_examples(g, n, want):
    assert cyclic_order_exists(g, n) is want


def test_census_examples():
    assert census(2).max_order == 10
    assert set(census(2).realizable_primes) <= {2, 3, 5}
    assert census(2).realizable_orders == (2, 3, 4, 5, 6, 8, 10)
    assert census(5).max_order == 22 and 21 not in census(5).realizable_orders
    assert census(7).prime_rule_violations() == []
    assert 15 in census(7).realizable_orders


def test_hyperelliptic_involution_always_present():
    # order 2 with h = 0 and 2g + 2 fixed points
    for g in range(2, 10):
        assert admissible(g, BranchDatum(2, 0, (2,) * (2 * g + 2)))


@pytest.mark.parametrize("g", range(2, 8))
def test_witnesses_satisfy_riemann_hurwitz(g):
    rep = census(g)
    for n, d in rep.witness.items():
        assert d.n == n and d.riemann_hurwitz_genus() == g and admissible(g, d)


@pytest.mark.parametrize("g", range(2, 9))
def test_search_is_exhaustive_for_small_n(g):
    # widening the (h, r) bounds finds nothing new
    for n in range(2, 4 * g + 3):
        wide = next(branch_data(g, n, max_h=g + 2, max_r=max_branch_points(g, n) + 3), None)
        assert (wide is None) == (find_witness(g, n) is None)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.integers(2, 60))
def test_order_bounds(g, n):
    if n > 4 * g + 2:
        assert not cyclic_order_exists(g, n)
    if n == 4 * g + 1:
        assert not cyclic_order_exists(g, n)


@pytest.mark.parametrize("g", range(2, 9))
def test_divisors_of_spherical_orders(g):
    # a Z/n action with h = 0 restricts to Z/d actions for d | n; only checked for
    # spherical witnesses, where the quotient stays a sphere
    rep = census(g)
    for n, d in rep.witness.items():
        if d.h == 0:
            for k in range(2, n):
                if n % k == 0:
                    assert k in rep.realizable_orders


def test_census_is_monotone_in_max_order():
    maxima = [census(g).max_order for g in range(2, 12)]
    assert maxima == sorted(maxima)
