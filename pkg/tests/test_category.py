"""Category values against brute-force oracles and hand analysis."""
import pytest

from eqcat import spaces
from eqcat.category import (ABOVE_BOUND, INFINITE, CategoryQuery, CategorySolver, catg_query, infinite_obstruction,
                            point_query, stc_query, subset_query, tc_query, tcg_query)
from eqcat.certificates import verify_certificate
from eqcat.gspace import rectangle, square
from eqcat.homotopy import HomotopyEngine
from eqcat.io import CATALOG

from oracles import (brute_force_cat_point, brute_force_cat_product_point, brute_force_tc, circle_leq,
                     orbit_union_tcg_z2_self)


def solve(query):
    cert = CategorySolver(HomotopyEngine(2_000_000)).cat_A(query)
    if cert.finite:
        assert verify_certificate(cert), "emitted certificate must replay"
    return cert


@pytest.fixture(scope="module")
def c4_oracles():
    pts, leq = list(range(4)), circle_leq(4)
    return {"tc": brute_force_tc(pts, leq), "cat0": brute_force_cat_point(pts, leq, 0),
            "cat1": brute_force_cat_point(pts, leq, 1), "prod0": brute_force_cat_product_point(pts, leq, 0)}


def test_tc_c4_matches_oracle(c4_oracles):
    assert c4_oracles["tc"] == 4
    assert solve(tc_query(spaces.circle(4))).value == c4_oracles["tc"]


@pytest.mark.parametrize("base", [0, 1])
def test_cat_c4_matches_oracle(c4_oracles, base):
    assert solve(point_query(spaces.circle(4), base)).value == c4_oracles[f"cat{base}"] == 2


def test_product_category_of_c4_matches_oracle(c4_oracles):
    """The point-relative category of C4 x C4 is 4, one more than the sum bound predicts."""
    X = spaces.circle(4)
    Z = square(X, "trivial")
    R = rectangle(Z, 1, 1, "pt x pt")
    assert solve(CategoryQuery(Z, R, "catA")).value == c4_oracles["prod0"] == 4


@pytest.mark.parametrize("ident", ["z2-self", "z3-self", "z4-self", "klein-self"])
def test_stc_of_group_on_itself_is_one(ident):
    cert = solve(stc_query(CATALOG[ident].space))
    assert cert.value == 1 and len(cert.sets) == 1


def test_tcg_of_z2_on_itself_is_infinite():
    X = CATALOG["z2-self"].space
    cert = solve(tcg_query(X))
    assert cert.value == INFINITE
    expect = orbit_union_tcg_z2_self()
    assert expect["compressible"] < expect["orbits"]
    Z = cert.query.space
    pair = tuple(X.labels[i] for i in Z.product_info.split(cert.witness))
    assert pair in [tuple(X.labels[X.index(v)] for v in p) for p in expect["uncovered"]]


def test_infinite_for_disconnected_spaces():
    X = spaces.discrete(2)
    assert infinite_obstruction(X) is not None
    assert solve(tc_query(X)).value == INFINITE
    assert infinite_obstruction(spaces.circle(4)) is None


def test_bound_is_reported():
    cert = solve(tc_query(spaces.circle(4), bound=3))
    assert cert.value == ABOVE_BOUND and cert.stats["value"] == 4


@pytest.mark.parametrize("ident, inv, value", [
    ("point", "tc", 1), ("chain3", "tc", 1), ("c4+beat", "tc", 4), ("c4xpoint", "tc", 4),
    ("c4-reflection", "tcg", INFINITE), ("c4-reflection-cone", "catG", 1), ("c8-antipodal", "stc", 4),
])
def test_catalog_values(ident, inv, value):
    X = CATALOG[ident].space
    q = {"tc": tc_query, "tcg": tcg_query, "stc": stc_query, "catG": catg_query}[inv](X)
    assert solve(q).value == value


def test_whitehead_agrees_on_contractible_and_differs_on_circle():
    solver = CategorySolver(HomotopyEngine(2_000_000))
    chain = spaces.chain(3)
    q = point_query(chain, 0)
    assert solver.whitehead_cat_A(q).value == solver.cat_A(q).value == 1
    C4 = spaces.circle(4)
    q = point_query(C4, 0)
    wh = solver.whitehead_cat_A(q)
    assert solver.cat_A(q).value == 2
    assert wh.value == INFINITE and verify_certificate(wh)


def test_whole_space_target_gives_one():
    X = spaces.circle(6)
    assert solve(subset_query(X, X.full, "all")).value == 1
