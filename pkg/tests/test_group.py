"""Group tables, subgroups and products."""
import pytest
from hypothesis import given, settings, strategies as st

from eqcat.group import (FiniteGroup, GroupError, Subgroup, direct_product, is_homomorphism, product_index,
                         projections)

GROUPS = {
    "trivial": FiniteGroup.trivial(),
    "z2": FiniteGroup.cyclic(2),
    "z3": FiniteGroup.cyclic(3),
    "z4": FiniteGroup.cyclic(4),
    "s3": FiniteGroup.symmetric(3),
    "klein": direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2)),
    "z2xz3": direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(3)),
}

group_names = st.sampled_from(sorted(GROUPS))


@st.composite
def group_and_elements(draw, k=3):
    G = GROUPS[draw(group_names)]
    return G, [draw(st.integers(0, G.order - 1)) for _ in range(k)]


@given(group_and_elements())
def test_group_axioms(data):
    G, (a, b, c) = data
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert G.mul(G.identity, a) == a == G.mul(a, G.identity)
    assert G.mul(a, G.inv(a)) == G.identity


@given(group_and_elements(k=2))
def test_conjugation_is_an_automorphism(data):
    G, (g, h) = data
    assert G.conj(g, G.identity) == G.identity
    assert G.conj(G.inv(g), G.conj(g, h)) == h


@given(group_and_elements(k=1))
@settings(max_examples=40)
def test_conjugate_subgroup_round_trip(data):
    G, (g,) = data
    for H in G.subgroups():
        back = G.conjugate_subgroup(g, G.conjugate_subgroup(G.inv(g), H))
        assert back == H


@pytest.mark.parametrize("name, count", [("trivial", 1), ("z2", 2), ("z4", 3), ("s3", 6), ("klein", 5),
                                         ("z2xz3", 4)])
def test_subgroup_counts(name, count):
    assert len(GROUPS[name].subgroups()) == count


def test_generated_subgroup():
    S3 = GROUPS["s3"]
    gens = [g for g in S3.elements if g != S3.identity and S3.mul(g, g) == S3.identity]
    assert len(gens) == 3
    assert len(S3.generated_subgroup(gens[:1])) == 2
    assert len(S3.generated_subgroup(gens[:2])) == 6


def test_abelian_and_order():
    assert GROUPS["klein"].is_abelian()
    assert not GROUPS["s3"].is_abelian()
    assert GROUPS["z2xz3"].order == 6


def test_projections_are_homomorphisms():
    G, H = FiniteGroup.cyclic(2), FiniteGroup.cyclic(3)
    GH = direct_product(G, H)
    p1, p2 = projections(G, H)
    assert is_homomorphism(p1, GH, G) and is_homomorphism(p2, GH, H)
    for g in G.elements:
        for h in H.elements:
            k = product_index(G, H, g, h)
            assert (p1[k], p2[k]) == (g, h)


def test_subgroup_as_group():
    Z4 = GROUPS["z4"]
    H = Z4.generated_subgroup([2])
    K, elems = H.as_group()
    assert K.order == 2 and set(elems) == set(H.members)


@pytest.mark.parametrize("table, err", [
    ([["e", "a"], ["a", "a"]], "inverse"),
    ([["e", "a"], ["a"]], "n x n"),
    ([["e", "b"], ["b", "e"]], "unknown element"),
])
def test_bad_tables_rejected(table, err):
    with pytest.raises(GroupError, match=err):
        FiniteGroup.from_table(["e", "a"], table, "e")


def test_subgroup_closure_enforced():
    Z4 = GROUPS["z4"]
    with pytest.raises(GroupError):
        Subgroup(Z4, frozenset({0, 1}))
