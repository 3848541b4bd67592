import pytest

from eventri.groups import abelian_invariants, classify, closure
from eventri.perm import Permutation


def P(text, m=4):
    return Permutation.from_cycles(text, m)


@pytest.mark.parametrize(
    "gens, label, order",
    [
        ([], "trivial", 1),
        (["(01)"], "C2", 2),
        (["(012)"], "C3", 3),
        (["(0123)"], "C4", 4),
        (["(01)(23)", "(02)(13)"], "K(normal)", 4),
        (["(01)", "(23)"], "K(non-normal)", 4),
        (["(01)", "(012)"], "S3", 6),
        (["(0123)", "(02)"], "D4", 8),
        (["(012)", "(01)(23)"], "A4", 12),
        (["(0123)", "(01)"], "S4", 24),
    ],
)
def test_sym4_table(gens, label, order):
    perms = [P(g) for g in gens]
    els = closure(perms, 4)
    got = classify(els, perms)
    assert (got.label, got.order) == (label, order)


def test_degree_three_labels():
    perms = [P("(01)", 3), P("(012)", 3)]
    assert classify(closure(perms, 3), perms).label == "S3"


@pytest.mark.parametrize(
    "gens, m, expected",
    [
        (["(0123)", "(01)"], 4, [2]),
        (["(012)", "(01)(23)"], 4, [3]),
        (["(01)(23)", "(02)(13)"], 4, [2, 2]),
        (["(0123)"], 4, [4]),
        (["(01234)", "(01)"], 5, [2]),
        (["(012345)"], 6, [6]),
        (["(01)", "(2345)"], 6, [2, 4]),
        (["(01)", "(23)", "(45)"], 6, [2, 2, 2]),
        (["(012)", "(345)"], 6, [3, 3]),
        ([], 5, []),
    ],
)
def test_abelian_invariants(gens, m, expected):
    perms = [P(g, m) for g in gens]
    assert abelian_invariants(closure(perms, m), perms) == expected


def test_large_degree_is_unclassified_with_invariants():
    perms = [P("(01)", 6), P("(2345)", 6)]
    g = classify(closure(perms, 6), perms)
    assert g.label == "unclassified" and g.order == 8 and not g.transitive
    assert g.abelian_invariants == (2, 4)
