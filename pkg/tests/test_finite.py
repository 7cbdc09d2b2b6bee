import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modhom import finite
from modhom.curves import chain
from modhom.finite import (
    GroupTooLarge,
    ModMatrix,
    chain_generators,
    closure_record,
    congruence_kernel_member,
    enumerate_group,
    normal_closure,
    reduce_mod,
    sp_order,
)
from modhom.symplectic import SympMatrix


def test_reduction_examples():
    assert reduce_mod(SympMatrix.minus_identity(2), 2).is_identity()
    assert reduce_mod(chain(1).delta, 3).entries == ((0, 2), (1, 1))
    assert reduce_mod(SympMatrix.identity(3), 7).is_identity()
    with pytest.raises(ValueError):
        reduce_mod(SympMatrix.identity(1), 1)


def test_congruence_membership():
    assert congruence_kernel_member(SympMatrix.identity(2), 5)
    assert congruence_kernel_member(SympMatrix.minus_identity(2), 2)
    assert not congruence_kernel_member(chain(1).delta, 5)


def test_sp_order():
    assert sp_order(1, 2) == 6
    assert sp_order(2, 2) == 720
    assert sp_order(3, 2) == 1451520
    with pytest.raises(ValueError):
        sp_order(2, 4)


def test_trivial_generator():
    assert len(enumerate_group([ModMatrix.identity(2, 3)])) == 1


@pytest.mark.parametrize("g, m", [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3)])
def test_enumeration_matches_formula(g, m):
    assert len(enumerate_group(chain_generators(g, m))) == sp_order(g, m)


def test_composite_modulus_enumerates():
    # SL(2, Z/4) has order 48
    assert len(enumerate_group(chain_generators(1, 4))) == 48


def test_cap_error_names_size():
    with pytest.raises(GroupTooLarge) as err:
        enumerate_group(chain_generators(2, 3), size_cap=1000)
    assert err.value.size > 1000 and "1000" in str(err.value)


def test_byte_keys_agree_with_packed(monkeypatch):
    packed = enumerate_group(chain_generators(2, 2))
    want = {ModMatrix.from_array(2, 2, a).entries for a in packed.element_arrays()}

    class BytesKeyer(finite._Keyer):
        def __init__(self, n, m):
            super().__init__(n, 256)  # 256^16 overflows int64, forcing byte keys
            self.m = m

    monkeypatch.setattr(finite, "_Keyer", BytesKeyer)
    table = enumerate_group(chain_generators(2, 2))
    assert not BytesKeyer(4, 2).packed
    assert len(table) == len(packed) == 720
    got = {ModMatrix.from_array(2, 2, a).entries for a in table.element_arrays()}
    assert got == want


def test_elements_are_symplectic_and_closed():
    gens = chain_generators(1, 3)
    table = enumerate_group(gens)
    els = list(table.elements())
    assert all(x.is_symplectic() for x in els)
    arr = np.array([x.array() for x in els])
    for s in gens:
        assert table.contains_many((s.array() @ arr) % 3).all()


def test_deterministic_order():
    a = enumerate_group(chain_generators(2, 2)).keys
    b = enumerate_group(chain_generators(2, 2)).keys
    assert np.array_equal(a, b)


def test_closure_examples():
    gens = chain_generators(2, 3)
    assert normal_closure(gens, ModMatrix.identity(2, 3)).index == 51840
    res = normal_closure(gens, reduce_mod(SympMatrix.minus_identity(2), 3))
    assert len(res.subgroup) == 2 and res.index == 25920


def test_genus_two_evidence():
    # delta^5 = -I in genus 2: central, so its closure mod 3 is {+-I}
    assert closure_record(2, 3, "delta^5").index == 25920
    # Sp(4, Z/2) = S_6; twist-difference closure is the index-2 subgroup A_6
    assert closure_record(2, 2, "lemma2").index == 2
    assert closure_record(2, 3, "lemma2").index == 1


def test_mixed_moduli_rejected():
    with pytest.raises(ValueError):
        ModMatrix.identity(1, 2) * ModMatrix.identity(1, 3)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=6))
def test_closure_is_normal(word):
    # closure of a random element of Sp(2, Z/5) is stable under conjugation
    gens = chain_generators(1, 5)
    x = ModMatrix.identity(1, 5)
    for i in word:
        x = x * (gens[i % 2] if i < 4 else gens[i % 2].inverse())
    res = normal_closure(gens, x)
    assert x in res.subgroup
    for h in res.subgroup.elements():
        for s in gens:
            assert s * h * s.inverse() in res.subgroup
    assert res.ambient_size % len(res.subgroup) == 0
