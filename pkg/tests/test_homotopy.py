"""Fence homotopy, compressibility and cores, checked against brute force."""
import pytest
from hypothesis import given, settings, strategies as st

from eqcat import spaces
from eqcat.gspace import MarkedSubset, bits, marked, rectangle, square
from eqcat.homotopy import (EquivariantMap, HomotopyEngine, RationalHomology, SearchBudgetExceeded,
                            constant_map, core_steps, equivariant_core, higher_homology_vanishes, homology_differs,
                            identity_map)
from eqcat.io import CATALOG

from oracles import circle_leq, order_preserving_maps, same_class

C4 = spaces.circle(4)
LEQ4 = circle_leq(4)
PTS4 = list(range(4))


def _maps_c4_to_c4():
    return [tuple(int(v) for v in row) for row in order_preserving_maps(PTS4, LEQ4, PTS4, LEQ4)]


MAPS = _maps_c4_to_c4()


def _em(values):
    # oracle indices are labels of C4, which coincide with point indices
    return EquivariantMap(C4, C4, tuple(C4.index(v) for v in values), (0,))


@given(st.sampled_from(MAPS), st.sampled_from(MAPS))
@settings(max_examples=80, deadline=None)
def test_homotopic_matches_oracle(f, g):
    fence = HomotopyEngine().homotopic(_em(f), _em(g))
    assert (fence is not None) == same_class(PTS4, LEQ4, PTS4, LEQ4, list(f), list(g))
    if fence is not None:
        assert fence.is_valid()
        assert fence.start.values == _em(f).values and fence.end.values == _em(g).values


@given(st.sampled_from(MAPS), st.sampled_from(MAPS), st.sampled_from(MAPS))
@settings(max_examples=30, deadline=None)
def test_homotopy_is_an_equivalence_relation(f, g, h):
    eng = HomotopyEngine()
    F, G, H = _em(f), _em(g), _em(h)
    assert eng.homotopic(F, F) is not None
    fg, gh = eng.homotopic(F, G), eng.homotopic(G, H)
    assert (fg is None) == (eng.homotopic(G, F) is None)
    if fg is not None and gh is not None:
        assert fg.then(gh).is_valid()
        assert eng.homotopic(F, H) is not None


def test_identity_of_circle_is_not_null_homotopic():
    ident = identity_map(C4)
    const = constant_map(C4, C4, 0)
    assert HomotopyEngine().homotopic(ident, const) is None
    H = RationalHomology(C4)
    assert homology_differs(C4, H, ident.values, const.values)
    assert len(HomotopyEngine().component(ident)) >= 1


def test_higher_homology():
    assert not higher_homology_vanishes(C4, C4.full)
    assert higher_homology_vanishes(C4, 0b0111)
    S2 = spaces.sphere(2)
    assert not higher_homology_vanishes(S2, S2.full)


def test_budget_is_enforced():
    X = spaces.circle(6)
    eng = HomotopyEngine(budget=3)
    with pytest.raises(SearchBudgetExceeded):
        eng.homotopic(constant_map(X, X, 0), constant_map(X, X, 3))


@pytest.mark.parametrize("ident, size", [("c4+beat", 4), ("chain3", 1), ("point", 1), ("c4", 4),
                                         ("c4-reflection-cone", 1)])
def test_core_sizes(ident, size):
    X = CATALOG[ident].space
    core = equivariant_core(X)
    assert core.core.n == size
    assert core.inclusion.is_valid() and core.retraction.is_valid()
    for a, b in zip(core.steps, core.steps[1:]):
        assert all(X.leq(u, v) for u, v in zip(b, a)) or all(X.leq(v, u) for u, v in zip(b, a))


def test_core_respects_preserved_subset():
    X = CATALOG["chain3"].space
    top = 1 << X.index(2)
    mask, _ = core_steps(X, preserve=(top,))
    assert mask & top


def _opens(X):
    return [U for U in range(1, 1 << X.n) if X.is_down_set(U) and X.is_invariant(U)]


@pytest.mark.parametrize("ident", ["c4", "c4-reflection", "c4-antipodal", "s2", "chain2xc4"])
def test_compressible_is_monotone(ident):
    loaded = CATALOG[ident].load()
    X = loaded.space
    eng = HomotopyEngine()
    opens = _opens(X)
    for name, A in loaded.subsets.items():
        if not A:
            continue
        A = MarkedSubset(X, A, name)
        good = [U for U in opens if eng.compressible(U, A) is not None]
        for U in good:
            cert = eng.compressible(U, A)
            assert cert.fence.is_valid()
            assert all(A.members >> y & 1 for y in cert.fence.maps[-1])
        for U in opens:
            if any(U & ~V == 0 for V in good):
                assert U in good


def test_rectangle_compression_matches_oracle():
    """A sample of open sets of C4 x C4 against rectangles {a} x {b}, versus coordinatewise brute force."""
    X = spaces.circle(4)
    Z = square(X, "trivial")
    eng = HomotopyEngine()
    leq = LEQ4

    def sleq(p, q):
        return leq(p[0], q[0]) and leq(p[1], q[1])

    opens = _opens(Z)[::15]
    for a in range(4):
        for b in (0, 1):
            R = rectangle(Z, 1 << a, 1 << b, "R")
            assert marked(Z, R.members).pair_key == R.pair_key
            for U in opens:
                dom = sorted(tuple(X.labels[i] for i in Z.product_info.split(z)) for z in bits(U))
                expect = all(same_class(dom, sleq, PTS4, leq, [p[c] for p in dom], [[a, b][c]] * len(dom))
                             for c in (0, 1))
                cert = eng.compressible(U, R)
                assert (cert is not None) == expect, (U, a, b)
                if cert is not None:
                    assert cert.fence.is_valid()
