import pytest
from hypothesis import given, settings, strategies as st

from modhom.curves import (
    CurveSystem,
    PatternError,
    chain,
    chain_action_check,
    cycle,
    delta_order_check,
    gamma4,
    hyperelliptic_check,
    is_even,
    multitwist,
    pants_system,
    perm_embedding,
    rotation_r1,
    rotation_r2,
    twist_rank,
)
from modhom.symplectic import HomClass, SympMatrix, apply, mul, order, pairing, power


def test_genus_one_chain():
    ch = chain(1)
    assert ch.v(1) == HomClass.e(1, 1)
    assert ch.v(2) == HomClass.f(1, 1)
    assert ch.delta.tolist() == [[0, -1], [1, 1]]
    assert ch.extra is None
    with pytest.raises(IndexError):
        ch.v(0)


@pytest.mark.parametrize("g", range(1, 7))
def test_chain_pattern(g):
    ch = chain(g)
    assert ch.as_curve_system().violations() == []
    assert abs(pairing(ch.v(2), ch.v(3))) == 1
    for i in range(1, 2 * g):
        assert pairing(ch.v(i), ch.v(i + 1)) == 1


@pytest.mark.parametrize("g, n", [(1, 6), (2, 10), (5, 22)])
def test_delta_order_examples(g, n):
    assert delta_order_check(g) == n


def test_chain_action_examples():
    rep2 = chain_action_check(2)
    assert rep2.ok and rep2.signs[0] != 0 and rep2.signs[-1] != 0
    assert chain_action_check(3).signs[5] != 0


@pytest.mark.parametrize("g", [1, 2, 4])
def test_hyperelliptic_examples(g):
    assert hyperelliptic_check(g)


def test_rotations():
    assert order(rotation_r1(3), 5) == 3
    assert order(rotation_r2(4), 5) == 3
    assert apply(rotation_r1(3), HomClass.e(3, 1)) == HomClass.e(3, 2)
    assert perm_embedding(cycle(3, 3)) == rotation_r1(3)
    assert perm_embedding((1, 2, 3)) == SympMatrix.identity(3)
    with pytest.raises(ValueError):
        rotation_r1(2)


def test_perm_embedding_rejects_non_permutations():
    with pytest.raises(ValueError):
        perm_embedding((1, 1, 2))


def test_gamma4():
    gam = gamma4()
    assert order(gam, 20) == 10
    assert power(gam, 10).is_identity()
    assert not power(gam, 5).is_identity()


def test_pants_examples():
    s3 = pants_system(3)
    e = [HomClass.e(3, i) for i in (1, 2, 3)]
    assert set(s3.classes) == {e[0], e[1], e[2], e[0] + e[1], e[1] + e[2], e[0] + e[1] + e[2]}
    assert all(pairing(u, v) == 0 for u in s3.classes for v in s3.classes)
    s4 = pants_system(4)
    assert len(s4.classes) == 9 and s4.violations() == []
    assert twist_rank(s3) == 6
    assert twist_rank(pants_system(5)) == 12


def test_twist_rank_repeated_class():
    e1 = HomClass.e(1, 1)
    sys = CurveSystem(1, ("a", "b"), (e1, -e1), ((0, 0), (0, 0)))
    assert twist_rank(sys) == 1


def test_twist_rank_rejects_non_commuting():
    sys = chain(2).as_curve_system()
    with pytest.raises(PatternError):
        twist_rank(sys)


def test_curve_system_round_trip_and_validation():
    sys = chain(3).as_curve_system()
    again = CurveSystem.loads(sys.dumps())
    assert again == sys
    bad = CurveSystem(2, ("x", "y"), (HomClass.e(2, 1), HomClass.f(2, 1)), ((0, 0), (0, 0)))
    assert bad.violations()
    with pytest.raises(PatternError):
        bad.validate()
    with pytest.raises(ValueError):
        CurveSystem.loads("genus 1 count 2\na 1 0\n0\n")


def test_non_primitive_flagged():
    sys = CurveSystem(1, ("a",), (HomClass(1, (2, 0)),), ((0,),))
    assert any("primitive" in v for v in sys.violations())


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(1, 6)), st.permutations(range(1, 6)))
def test_perm_embedding_is_homomorphism(s, t):
    st_ = tuple(s[t[i] - 1] for i in range(5))
    assert perm_embedding(st_) == mul(perm_embedding(s), perm_embedding(t))
    assert perm_embedding(s).is_symplectic()


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 6).flatmap(lambda g: st.tuples(st.just(g), st.lists(st.integers(-3, 3), min_size=3 * g - 3, max_size=3 * g - 3))))
def test_multitwist_matches_closed_form(data):
    g, ex = data
    sys = pants_system(g)
    M = multitwist(sys, ex)
    for x in [HomClass.f(g, i) for i in range(1, g + 1)]:
        want = x
        for v, n in zip(sys.classes, ex):
            want = want + (n * pairing(x, v)) * v
        assert apply(M, x) == want
    assert M.is_identity() == (not any(ex))


def test_evenness():
    assert is_even(cycle(5, 5)) and not is_even(cycle(4, 4))
