"""Posets with group actions and the constructions on them."""
import pytest
from hypothesis import given, settings, strategies as st

from eqcat import spaces
from eqcat.group import FiniteGroup
from eqcat.gspace import (FatSum, FiniteGSpace, MarkedSubset, SpaceError, bits, components, daleth, diagonal,
                          fat_sum, fixed_set, fixed_sets_of_daleth, is_G_path_connected, is_path_connected,
                          marked, mask_of, orbit_space, power, product, rectangle, square)
from eqcat.io import CATALOG

from oracles import circle_leq, down_sets

SMALL = [k for k in CATALOG if CATALOG[k].space.n <= 6]


def test_circle_order_matches_oracle():
    X = spaces.circle(6)
    leq = circle_leq(6)
    for a in range(6):
        for b in range(6):
            assert X.leq(X.index(a), X.index(b)) == leq(a, b)


def test_open_sets_match_oracle():
    X = spaces.circle(4)
    mine = {frozenset(X.labels[i] for i in bits(m)) for m in range(1 << X.n) if X.is_down_set(m)}
    assert mine == set(down_sets(list(range(4)), circle_leq(4)))


def test_from_relations_rejects_cycles_and_bad_actions():
    with pytest.raises(SpaceError, match="antisymmetric"):
        FiniteGSpace.from_relations(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(SpaceError, match="automorphism"):
        FiniteGSpace.from_relations(["a", "b"], [("a", "b")], FiniteGroup.cyclic(2), {1: {"a": "b", "b": "a"}})
    with pytest.raises(SpaceError, match="unknown point"):
        FiniteGSpace.from_relations(["a"], [("a", "z")])


@pytest.mark.parametrize("ident", SMALL)
def test_orbits_partition_and_are_invariant(ident):
    X = CATALOG[ident].space
    masks = X.orbits.masks
    assert sum(masks) == X.full and all(a & b == 0 for a in masks for b in masks if a is not b)
    assert all(X.is_invariant(m) for m in masks)


@given(st.sampled_from(SMALL), st.integers(min_value=0))
@settings(max_examples=60)
def test_closures(ident, seed):
    X = CATALOG[ident].space
    mask = seed % (1 << X.n)
    d, u = X.down_closure(mask), X.up_closure(mask)
    assert X.is_down_set(d) and d & mask == mask
    assert X.is_up_set(u) and u & mask == mask
    assert X.is_invariant(X.saturate(mask))


def test_product_order_and_projections():
    X, Y = spaces.circle(4), spaces.chain(2)
    Z = product(X, Y)
    info = Z.product_info
    for z in range(Z.n):
        for w in range(Z.n):
            (a, b), (c, d) = info.split(z), info.split(w)
            assert Z.leq(z, w) == (X.leq(a, c) and Y.leq(b, d))
            assert info.join(a, b) == z


def test_daleth_formulas_and_diagonal():
    for ident in ("c4-reflection", "c4-antipodal", "z3-self", "klein-self"):
        X = CATALOG[ident].space
        Z = square(X, "product")
        D = daleth(Z)
        G = X.group
        expect = mask_of(Z.product_info.join(X.act[g][x], x) for g in G.elements for x in range(X.n))
        assert D.members == expect
        assert diagonal(Z).members & ~D.members == 0


def test_daleth_of_trivial_action_is_diagonal():
    Z = square(spaces.circle(4), "product")
    assert daleth(Z).members == diagonal(Z).members


def test_fixed_sets_of_daleth_trivial_and_whole():
    X = CATALOG["z3-self"].space
    Z = square(X, "product")
    G2 = Z.group
    assert fixed_sets_of_daleth(Z, G2.trivial_subgroup()).members == daleth(Z).members
    assert fixed_sets_of_daleth(Z, G2.whole()).members == 0


def test_fixed_set_and_orbit_space():
    X = spaces.c4_reflection()
    XG = fixed_set(X, X.group.whole())
    assert sorted(XG.labels) == [0, 2]
    Q, q = orbit_space(X)
    assert Q.n == 3 and len(set(q.assignment)) == 3
    assert all(Q.leq(q.assignment[a], q.assignment[b]) for a in range(X.n) for b in range(X.n) if X.leq(a, b))


def test_connectivity_predicates():
    assert is_path_connected(spaces.circle(4))
    assert len(components(spaces.discrete(3))) == 3
    assert not is_G_path_connected(spaces.c4_reflection())   # X^G is two points
    assert is_G_path_connected(CATALOG["c4-reflection-cone"].space)


def test_rectangle_detection():
    X = spaces.circle(4)
    Z = square(X, "product")
    R = rectangle(Z, 0b0011, 0b0100)
    assert marked(Z, R.members).pair_key == R.pair_key
    assert marked(Z, diagonal(Z).members).pair_key is None
    assert isinstance(marked(X, 1), MarkedSubset)


def test_fat_sum_recursion():
    X = spaces.circle(4)
    A = MarkedSubset(X, 1, "pt")
    F = fat_sum(X, A, 3)
    assert isinstance(F, FatSum) and F.members() == F.recursion_members()
    assert len(F.members()) == 4 ** 3 - 3 ** 3


def test_power_labels():
    P = power(spaces.chain(2), 3)
    assert P.n == 8 and all(len(lab) == 3 for lab in P.labels)
