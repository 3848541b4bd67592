from hypothesis import given, strategies as st

from eventri.perm import Permutation, compose_all

perm4 = st.permutations(range(4)).map(lambda p: Permutation(tuple(p)))
perm7 = st.permutations(range(7)).map(lambda p: Permutation(tuple(p)))


def test_composition_applies_right_factor_first():
    p = Permutation.from_cycles("(01)", 3)
    q = Permutation.from_cycles("(12)", 3)
    assert (p * q)(2) == p(q(2)) == 0


def test_cycle_notation_round_trip():
    p = Permutation.from_cycles("(0321)", 4)
    assert p.to_list() == [3, 0, 1, 2]
    assert str(p) == "(0321)"
    assert str(Permutation.identity(4)) == "()"
    big = Permutation.from_cycles("(0,10,3)", 11)
    assert big(10) == 3 and Permutation.from_cycles(str(big), 11) == big


def test_rejects_non_bijection():
    import pytest

    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


@given(perm7, perm7, perm7)
def test_group_axioms(a, b, c):
    e = Permutation.identity(7)
    assert (a * b) * c == a * (b * c)
    assert a * e == a == e * a
    assert a * a.inverse() == e
    assert (a * b).inverse() == b.inverse() * a.inverse()


@given(perm4, perm4)
def test_sign_is_multiplicative(a, b):
    assert (a * b).sign() == a.sign() * b.sign()


@given(perm7)
def test_order_and_cycles(p):
    assert (p ** p.order()).is_identity()
    assert sum(p.cycle_type()) == 7
    assert Permutation.from_cycles(str(p), 7) == p


@given(st.lists(perm4, max_size=5))
def test_compose_all_applies_first_element_first(ps):
    expected = Permutation.identity(4)
    for p in ps:
        expected = p * expected
    assert compose_all(ps, 4) == expected
