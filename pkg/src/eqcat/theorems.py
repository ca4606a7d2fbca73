"""Executable theorem suites over the builtin catalog.

Each suite evaluates one family of inequalities or identities on catalog
instances and records a tri-state verdict per instance: ``holds``, ``fails``
or ``skipped-unknown`` (some side could not be decided within budget).
``vacuous`` marks instances where the hypothesis does not apply.  A suite
fails only through a ``fails`` verdict on a non-exploratory check.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import certificates, spaces
from .category import (ABOVE_BOUND, INFINITE, UNKNOWN, CategoryQuery, CategorySolver, CoverCertificate,
                       catg_query, stc_query, tc_query, tcg_query)
from .covering import NotACovering, is_poset_covering, lift_certificate, project_certificate
from .group import FiniteGroup, projections
from .gspace import (FiniteGSpace, FormulaMismatch, QuotientNotT0, bits, daleth, fixed_set, fixed_sets_of_daleth,
                     is_G_path_connected, mask_of, marked, orbit_space, product, rectangle, square)
from .homotopy import HomotopyEngine, equivariant_core
from .io import CATALOG

HOLDS, FAILS, SKIPPED, VACUOUS = "holds", "fails", "skipped-unknown", "vacuous"
SUITE_BUDGET = 400_000


# --------------------------------------------------------------------------
# tri-state arithmetic on category values


def le(a, b, bound: int = 16):
    """a <= b for values int | INFINITE | ABOVE_BOUND | UNKNOWN; None when undecided."""
    if UNKNOWN in (a, b):
        return None
    if b == INFINITE:
        return True
    if a == INFINITE:
        return False
    if a == ABOVE_BOUND:
        return False if isinstance(b, int) and b <= bound else None
    if b == ABOVE_BOUND:
        return True if a <= bound else None
    return a <= b


def add(*vals, offset: int = 0):
    if any(v in (UNKNOWN, ABOVE_BOUND) for v in vals):
        return UNKNOWN
    if INFINITE in vals:
        return INFINITE
    return sum(vals) + offset


def mul(a, b):
    if UNKNOWN in (a, b) or ABOVE_BOUND in (a, b):
        return UNKNOWN
    if 0 in (a, b):
        return 0
    if INFINITE in (a, b):
        return INFINITE
    return a * b


# --------------------------------------------------------------------------
# reports


@dataclass
class Check:
    instance: str
    statement: str
    status: str
    values: dict = field(default_factory=dict)
    provenance: str = "PAPER"
    exploratory: bool = False
    certificates: list = field(default_factory=list)   # integrity digests of certificates used

    def as_dict(self) -> dict:
        return {"instance": self.instance, "statement": self.statement, "status": self.status,
                "values": {k: v for k, v in self.values.items()}, "provenance": self.provenance,
                "exploratory": self.exploratory, "certificates": self.certificates}


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    def counts(self) -> dict:
        out = {HOLDS: 0, FAILS: 0, SKIPPED: 0, VACUOUS: 0}
        for c in self.checks:
            if not c.exploratory:
                out[c.status] += 1
        return out

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c.status == FAILS and not c.exploratory]

    @property
    def passed(self) -> bool:
        return not self.failures

    def skipped_rate(self) -> float:
        cnt = self.counts()
        decided = cnt[HOLDS] + cnt[FAILS] + cnt[SKIPPED]
        return cnt[SKIPPED] / decided if decided else 0.0

    def as_dict(self) -> dict:
        self.checks.sort(key=lambda c: (c.instance, c.statement))
        return {"schema_version": certificates.SCHEMA_VERSION, "kind": "suite-report", "suite": self.suite,
                "counts": self.counts(), "passed": self.passed, "seconds": round(self.seconds, 3),
                "checks": [c.as_dict() for c in self.checks]}

    def summary(self) -> str:
        cnt = self.counts()
        verdict = "ok" if self.passed else "FAILED"
        return (f"{self.suite}: {verdict}  holds={cnt[HOLDS]} fails={cnt[FAILS]} "
                f"skipped={cnt[SKIPPED]} vacuous={cnt[VACUOUS]}  ({self.seconds:.1f}s)")


# --------------------------------------------------------------------------
# instances and a caching evaluator


@dataclass
class Instance:
    """A catalog space with expected values (each tagged PAPER / TRIVIAL / DERIVED)
    and the invariants small enough to compute (``feasible``)."""
    id: str
    space: FiniteGSpace
    subsets: dict
    expected: dict = field(default_factory=dict)      # invariant -> (value, provenance)
    feasible: frozenset = frozenset({"cat", "catG", "tc", "tcg", "stc", "sq"})


EXPECTED = {
    "point": {"tc": (1, "TRIVIAL"), "stc": (1, "TRIVIAL")},
    "discrete2": {"tc": (INFINITE, "TRIVIAL"), "catG": (2, "TRIVIAL")},
    "discrete3": {"catG": (3, "TRIVIAL")},
    "c4": {"tc": (4, "DERIVED"), "cat_orbit0": (2, "DERIVED")},
    "c4-reflection": {"tcg": (INFINITE, "DERIVED")},
    "z2-self": {"stc": (1, "PAPER"), "tcg": (INFINITE, "DERIVED")},
    "z3-self": {"stc": (1, "PAPER")},
    "z4-self": {"stc": (1, "PAPER")},
    "klein-self": {"stc": (1, "PAPER")},
    "c8-antipodal": {"stc": (4, "PAPER")},
    "z2-self-pair": {"stc": (1, "DERIVED")},
}

# invariants whose square is too large for an exhaustive search at suite budgets
_HEAVY = {"c8": {"tc", "tcg", "stc", "sq"}, "c8-antipodal": {"tc", "sq"}, "c8-rot2": {"tc", "sq"},
          "chain2xc4": {"sq"}}


def catalog_instances(ids=None) -> list[Instance]:
    out = []
    for ident, entry in CATALOG.items():
        if ids is not None and ident not in ids:
            continue
        L = entry.load()
        feas = frozenset({"cat", "catG", "tc", "tcg", "stc", "sq"} - _HEAVY.get(ident, set()))
        out.append(Instance(ident, L.space, L.subsets, EXPECTED.get(ident, {}), feas))
    return out


class Evaluator:
    """Computes and caches invariants; every finite certificate is replayed by the checker."""

    def __init__(self, budget: int = SUITE_BUDGET, bound: int = 16, verify: bool = True):
        self.solver = CategorySolver(HomotopyEngine(budget), bound)
        self.bound = bound
        self.verify = verify
        self.cache: dict = {}
        self.digests: dict = {}
        self.rejected: list = []

    def run(self, key, query: CategoryQuery) -> CoverCertificate:
        if key not in self.cache:
            cert = self.solver.cat_A(query)
            if self.verify:
                doc = certificates.to_json(cert)
                verdict = certificates.check(doc)
                self.digests[key] = doc["integrity"]
                if not verdict:
                    self.rejected.append((key, verdict.reason))
            self.cache[key] = cert
        return self.cache[key]

    def value(self, key, query: CategoryQuery):
        cert = self.run(key, query)
        if any(k == key for k, _ in self.rejected):
            return UNKNOWN
        return cert.value

    def ref(self, key) -> list:
        return [self.digests[key]] if key in self.digests else []

    # named invariants of a space, keyed by the caller's space id
    def tc(self, sid, X):
        return self.value((sid, "tc"), tc_query(X, self.bound))

    def tcg(self, sid, X):
        return self.value((sid, "tcg"), tcg_query(X, self.bound))

    def stc(self, sid, X):
        return self.value((sid, "stc"), stc_query(X, self.bound))

    def catg(self, sid, X):
        return self.value((sid, "catG"), catg_query(X, self.bound))

    def cat_A(self, sid, X, A: int, name: str = "A"):
        if X.n == 0:
            return 0
        return self.value((sid, "cat", A), CategoryQuery(X, marked(X, A, name), "catA", self.bound))


def _verdict(ok) -> str:
    return SKIPPED if ok is None else HOLDS if ok else FAILS


def _le_check(inst, statement, a, b, values, ev, keys=(), provenance="PAPER", exploratory=False):
    refs = [d for k in keys for d in ev.ref(k)]
    return Check(inst, statement, _verdict(le(a, b, ev.bound)), values, provenance, exploratory, refs)


def _need(inst: Instance, *kinds) -> bool:
    return all(k in inst.feasible for k in kinds)


# --------------------------------------------------------------------------
# suites


def suite_catalog_values(ev: Evaluator, instances) -> SuiteReport:
    """Expected values attached to catalog instances."""
    rep = SuiteReport("catalog-values")
    calls = {"tc": ev.tc, "tcg": ev.tcg, "stc": ev.stc, "catG": ev.catg}
    for inst in instances:
        for inv, (want, prov) in inst.expected.items():
            if inv.startswith("cat_"):
                got = ev.cat_A(inst.id, inst.space, inst.subsets[inv[4:]], inv[4:])
            else:
                got = calls[inv](inst.id, inst.space)
            status = SKIPPED if got == UNKNOWN else HOLDS if got == want else FAILS
            rep.checks.append(Check(inst.id, f"{inv} = {want}", status, {inv: got}, prov,
                                    certificates=ev.ref((inst.id, inv))))
    return rep


def _domination_pairs(instances):
    """(X, A) against its A-preserving equivariant core, both directions dominate."""
    for inst in instances:
        X = inst.space
        for name, A in sorted(inst.subsets.items()):
            res = equivariant_core(X, preserve=(A,))
            if res.core.n == X.n:
                continue
            yield inst, name, A, res


def suite_domination(ev: Evaluator, instances) -> SuiteReport:
    """Mutual domination of (X, A) and its core gives equal relative categories, TC_G and STC_G."""
    rep = SuiteReport("domination")
    seen_core = set()
    for inst, name, A, res in _domination_pairs(instances):
        X, K = inst.space, res.core
        B = K.from_parent_mask(A)
        kid = f"core({inst.id},{name})"
        a = ev.cat_A(inst.id, X, A, name)
        b = ev.cat_A(kid, K, B, name)
        vals = {"X": a, "core": b}
        keys = [(inst.id, "cat", A), (kid, "cat", B)]
        rep.checks.append(_le_check(inst.id, f"cat_{name}(X) >= cat(core)", b, a, vals, ev, keys))
        rep.checks.append(_le_check(inst.id, f"cat(core) >= cat_{name}(X)", a, b, vals, ev, keys))
        if inst.id in seen_core:
            continue
        seen_core.add(inst.id)
        full = equivariant_core(X)
        K2, kid2 = full.core, f"core({inst.id})"
        for inv, fn in (("tcg", ev.tcg), ("stc", ev.stc)):
            if not _need(inst, inv):
                rep.checks.append(Check(inst.id, f"{inv}(X) = {inv}(core)", SKIPPED, {}))
                continue
            x, k = fn(inst.id, X), fn(kid2, K2)
            vals = {"X": x, "core": k}
            keys = [(inst.id, inv), (kid2, inv)]
            rep.checks.append(_le_check(inst.id, f"{inv}(X) >= {inv}(core)", k, x, vals, ev, keys))
            rep.checks.append(_le_check(inst.id, f"{inv}(core) >= {inv}(X)", x, k, vals, ev, keys))
    # a point dominates nothing bigger, but a chain and a point dominate each other
    P, C = spaces.point(), spaces.chain(3)
    for inv, fn in (("tc", ev.tc), ("stc", ev.stc)):
        p, c = fn("point*", P), fn("chain3*", C)
        rep.checks.append(Check("point~chain3", f"{inv}(point) = {inv}(chain3)",
                                HOLDS if p == c == 1 else FAILS, {"point": p, "chain3": c}, "TRIVIAL"))
    return rep


def _pair_ids():
    return [("c4", "point"), ("c4", "chain2"), ("c4", "c4"), ("s2", "point"), ("c4", "discrete2"),
            ("c4-reflection", "c4-reflection"), ("z2-self", "z2-self"), ("z2-self", "c4-antipodal"),
            ("s2-reflection", "z2-self"), ("c4-antipodal", "c4-antipodal")]


def _gxh_pairs():
    return [("z2-self", "z2-self"), ("z2-self", "z3-self"), ("point", "z2-self"), ("c4", "z2-self"),
            ("c4-reflection", "point"), ("z2-self", "discrete2"), ("chain2", "c4")]


def suite_products(ev: Evaluator, instances=None) -> SuiteReport:
    """Product inequalities for relative categories, TC and STC."""
    rep = SuiteReport("products")
    load = {k: CATALOG[k].load() for k in CATALOG}
    # relative category of products, diagonal action (needs a common group)
    for xi, yi in _pair_ids():
        X, Y = load[xi].space, load[yi].space
        if X.group.table != Y.group.table:
            continue
        Z = product(X, Y, "diagonal")
        pid = f"{xi}x{yi}"
        for an, A in sorted(load[xi].subsets.items()):
            for bn, B in sorted(load[yi].subsets.items()):
                AB = rectangle(Z, A, B).members
                lhs = ev.cat_A(pid, Z, AB, f"{an}x{bn}")
                a, b = ev.cat_A(xi, X, A, an), ev.cat_A(yi, Y, B, bn)
                rhs = add(a, b, offset=-1)
                rep.checks.append(_le_check(pid, f"cat_{an}x{bn}(XxY) <= cat_{an}(X)+cat_{bn}(Y)-1", lhs, rhs,
                                            {"lhs": lhs, "X": a, "Y": b}, ev,
                                            [(pid, "cat", AB), (xi, "cat", A), (yi, "cat", B)]))
                if yi == "point" and an == "orbit0":
                    status = HOLDS if lhs == a else SKIPPED if UNKNOWN in (lhs, a) else FAILS
                    rep.checks.append(Check(pid, "cat_{Axpt}(X x pt) = cat_A(X)", status, {"lhs": lhs, "X": a},
                                            "TRIVIAL"))
        # TC_G of a diagonal product
        if Z.n <= 8:
            lhs, a, b = ev.tcg(pid, Z), ev.tcg(xi, X), ev.tcg(yi, Y)
            keys = [(pid, "tcg"), (xi, "tcg"), (yi, "tcg")]
            rep.checks.append(_le_check(pid, "TC_G(XxY) <= TC_G(X)+TC_G(Y)", lhs, add(a, b), {"lhs": lhs, "X": a, "Y": b},
                                        ev, keys))
            rep.checks.append(_le_check(pid, "TC_G(XxY) <= TC_G(X)+TC_G(Y)-1 (sharpened)", lhs,
                                        add(a, b, offset=-1), {"lhs": lhs, "X": a, "Y": b}, ev, keys,
                                        exploratory=True))
            sx, sy = ev.stc(pid, Z), ev.stc(yi, Y)
            rep.checks.append(_le_check(pid, "STC_G(XxY) <= TC_G(X)+STC_G(Y) (diagonal form)", sx,
                                        add(a, sy), {"lhs": sx, "TC_G(X)": a, "STC_G(Y)": sy}, ev,
                                        [(pid, "stc"), (xi, "tcg"), (yi, "stc")], exploratory=True))
    # G x H: relative category and STC
    for xi, yi in _gxh_pairs():
        X, Y = load[xi].space, load[yi].space
        Z = product(X, Y, "product")
        pid = f"{xi}*{yi}"
        for an, A in sorted(load[xi].subsets.items()):
            for bn, B in sorted(load[yi].subsets.items()):
                AB = rectangle(Z, A, B).members
                lhs = ev.cat_A(pid, Z, AB, f"{an}x{bn}")
                a, b = ev.cat_A(xi, X, A, an), ev.cat_A(yi, Y, B, bn)
                rep.checks.append(_le_check(pid, f"GxH: cat_{an}x{bn}(XxY) <= cat_{an}(X)+cat_{bn}(Y)-1", lhs,
                                            add(a, b, offset=-1), {"lhs": lhs, "X": a, "Y": b}, ev,
                                            [(pid, "cat", AB), (xi, "cat", A), (yi, "cat", B)]))
        ok, detail = daleth_of_product(X, Y)
        rep.checks.append(Check(pid, "daleth(XxY) = daleth(X) x daleth(Y)", HOLDS if ok else FAILS, detail,
                                "PAPER"))
        if not ok:
            continue
        if Z.n * Z.n > 64:
            rep.checks.append(Check(pid, "GxH: STC(XxY) <= STC(X)+STC(Y)-1", SKIPPED, {"size": Z.n ** 2}))
            continue
        lhs, a, b = ev.stc(pid, Z), ev.stc(xi, X), ev.stc(yi, Y)
        rep.checks.append(_le_check(pid, "GxH: STC(XxY) <= STC(X)+STC(Y)-1", lhs, add(a, b, offset=-1),
                                    {"lhs": lhs, "X": a, "Y": b}, ev, [(pid, "stc"), (xi, "stc"), (yi, "stc")]))
        t, tx, ty = ev.tcg(pid, Z), ev.tcg(xi, X), ev.tcg(yi, Y)
        rep.checks.append(_le_check(pid, "GxH: TC(XxY) <= TC_G(X)+TC_H(Y)", t, add(tx, ty),
                                    {"lhs": t, "X": tx, "Y": ty}, ev, [(pid, "tcg"), (xi, "tcg"), (yi, "tcg")]))
    return rep


def daleth_of_product(X: FiniteGSpace, Y: FiniteGSpace) -> tuple[bool, dict]:
    """Exact comparison of daleth(X x Y) with daleth(X) x daleth(Y), G x H acting on X x Y."""
    P = product(X, Y, "product")
    DP = daleth(square(P, "product")).members
    DX = daleth(square(X, "product")).members
    DY = daleth(square(Y, "product")).members
    m, n = Y.n, P.n
    expect = 0
    for p1 in range(n):
        x1, y1 = divmod(p1, m)
        for p2 in range(n):
            x2, y2 = divmod(p2, m)
            if DX >> (x1 * X.n + x2) & 1 and DY >> (y1 * m + y2) & 1:
                expect |= 1 << (p1 * n + p2)
    return DP == expect, {"points": bin(DP).count("1"), "expected": bin(expect).count("1")}


def _subgroups(G: FiniteGroup):
    return G.subgroups()


def suite_fixed_points(ev: Evaluator, instances) -> SuiteReport:
    """Fixed-point inequalities: relative categories, TC_H, STC_H and the TC of X^G."""
    rep = SuiteReport("fixed-points")
    for inst in instances:
        X, G = inst.space, inst.space.group
        for H in _subgroups(G):
            hid = f"{inst.id}^{sorted(H.members)}"
            XH = fixed_set(X, H)
            for name, A in sorted(inst.subsets.items()):
                if XH.n == 0:
                    rep.checks.append(Check(inst.id, f"H={sorted(H.members)}: cat_(A^H)(X^H) <= cat_{name}(X)",
                                            VACUOUS, {"X^H": 0}, "TRIVIAL"))
                    continue
                AH = XH.from_parent_mask(A & XH.to_parent_mask(XH.full))
                lhs = ev.cat_A(hid, XH, AH, name) if AH else INFINITE
                rhs = ev.cat_A(inst.id, X, A, name)
                rep.checks.append(_le_check(inst.id, f"H={sorted(H.members)}: cat_(A^H)(X^H) <= cat_{name}(X)",
                                            lhs, rhs, {"lhs": lhs, "rhs": rhs}, ev,
                                            [(hid, "cat", AH), (inst.id, "cat", A)]))
            if XH.n == 0:
                continue
            for inv, fn in (("tcg", ev.tcg), ("stc", ev.stc)):
                if not _need(inst, inv):
                    rep.checks.append(Check(inst.id, f"H={sorted(H.members)}: {inv}_H(X^H) <= {inv}_G(X)",
                                            SKIPPED, {}))
                    continue
                lhs, rhs = fn(hid, XH), fn(inst.id, X)
                rep.checks.append(_le_check(inst.id, f"H={sorted(H.members)}: {inv}_H(X^H) <= {inv}_G(X)", lhs,
                                            rhs, {"lhs": lhs, "rhs": rhs}, ev, [(hid, inv), (inst.id, inv)]))
            if _need(inst, "stc", "sq"):
                # the form that follows from the relative bound: target daleth(X)^(HxH), not daleth(X^H)
                Zh = square(XH, "product")
                par, act = XH.parent_index, X.act
                dh = mask_of(Zh.product_info.join(a, b) for a in range(XH.n) for b in range(XH.n)
                             if any(act[g][par[b]] == par[a] for g in G.elements))
                zid = f"{hid}^2[HxH]"
                lhs, rhs = ev.cat_A(zid, Zh, dh, "daleth(X)^HxH"), ev.stc(inst.id, X)
                rep.checks.append(_le_check(inst.id, f"H={sorted(H.members)}: cat_(daleth(X)^HxH)(X^H x X^H) "
                                            "<= stc_G(X)", lhs, rhs, {"lhs": lhs, "rhs": rhs}, ev,
                                            [(zid, "cat", dh), (inst.id, "stc")]))
        XG = fixed_set(X, G.whole())
        if XG.n == 0:
            rep.checks.append(Check(inst.id, "STC_G(X) >= TC(X^G)", VACUOUS, {"X^G": 0}))
            continue
        if not _need(inst, "stc"):
            rep.checks.append(Check(inst.id, "STC_G(X) >= TC(X^G)", SKIPPED, {}))
            continue
        gid = f"{inst.id}^G"
        lhs, rhs = ev.tc(gid, XG), ev.stc(inst.id, X)
        rep.checks.append(_le_check(inst.id, "STC_G(X) >= TC(X^G)", lhs, rhs, {"TC(X^G)": lhs, "STC": rhs}, ev,
                                    [(gid, "tc"), (inst.id, "stc")]))
    return rep


def suite_monotonicity(ev: Evaluator, instances) -> SuiteReport:
    """The four monotonicity properties of relative categories."""
    rep = SuiteReport("monotonicity")
    for inst in instances:
        X, G = inst.space, inst.space.group
        named = sorted(inst.subsets.items())
        for (an, A), (bn, B) in ((p, q) for p in named for q in named if p != q):
            if A & ~B:
                continue
            a, b = ev.cat_A(inst.id, X, A, an), ev.cat_A(inst.id, X, B, bn)
            keys = [(inst.id, "cat", A), (inst.id, "cat", B)]
            rep.checks.append(_le_check(inst.id, f"(1) cat_{bn} <= cat_{an}", b, a, {an: a, bn: b}, ev, keys))
            Bs = X.subspace(B)
            bid = f"{inst.id}|{bn}"
            AB = Bs.from_parent_mask(A)
            c = ev.cat_A(bid, Bs, AB, an)
            rep.checks.append(_le_check(inst.id, f"(2) cat_{an} <= cat_{bn} * cat_{an}({bn})", a, mul(b, c),
                                        {an: a, bn: b, "inner": c}, ev, keys + [(bid, "cat", AB)]))
        try:
            Q, q = orbit_space(X)
        except QuotientNotT0:
            rep.checks.append(Check(inst.id, "(3) quotient", VACUOUS, {"reason": "quotient not T0"}))
            Q = None
        for name, A in named:
            a = ev.cat_A(inst.id, X, A, name)
            if Q is not None:
                qa = mask_of(q.assignment[x] for x in bits(A))
                lhs = ev.cat_A(f"{inst.id}/G", Q, qa, name)
                rep.checks.append(_le_check(inst.id, f"(3) cat_{name}/G(X/G) <= cat_{name}(X)", lhs, a,
                                            {"lhs": lhs, "rhs": a}, ev,
                                            [(f"{inst.id}/G", "cat", qa), (inst.id, "cat", A)]))
            for H in _subgroups(G):
                if len(H) == G.order:
                    continue
                XH = X.restrict_group(H)
                hid = f"{inst.id}|H{sorted(H.members)}"
                lhs = ev.cat_A(hid, XH, A, name)
                rep.checks.append(_le_check(inst.id, f"(4) H={sorted(H.members)}: cat_{name},H <= cat_{name},G",
                                            lhs, a, {"lhs": lhs, "rhs": a}, ev,
                                            [(hid, "cat", A), (inst.id, "cat", A)]))
    return rep


def suite_symmetric_bounds(ev: Evaluator, instances) -> SuiteReport:
    """Upper and lower bounds on STC_G and TC_G via orbit spaces, orbits of daleth and categories of X x X."""
    rep = SuiteReport("symmetric-bounds")
    for inst in instances:
        X = inst.space
        if not _need(inst, "stc"):
            rep.checks.append(Check(inst.id, "TC(X/G) <= STC_G(X)", SKIPPED, {}))
            continue
        s = ev.stc(inst.id, X)
        try:
            Q, _ = orbit_space(X)
            t = ev.tc(f"{inst.id}/G", Q)
            rep.checks.append(_le_check(inst.id, "TC(X/G) <= STC_G(X)", t, s, {"TC(X/G)": t, "STC": s}, ev,
                                        [(f"{inst.id}/G", "tc"), (inst.id, "stc")]))
        except QuotientNotT0:
            rep.checks.append(Check(inst.id, "TC(X/G) <= STC_G(X)", VACUOUS, {"reason": "quotient not T0"}))
        Z = square(X, "product")
        D = daleth(Z)
        zid = f"{inst.id}^2[GxG]"
        Dsp = Z.subspace(D.members)
        did = f"{inst.id}:daleth"
        for o, omask in enumerate(Z.orbits.masks):
            if omask & ~D.members:
                continue
            oc = ev.cat_A(zid, Z, omask, f"O{o}")
            rep.checks.append(_le_check(inst.id, f"STC_G(X) <= cat_O(XxX), O=orbit{o}", s, oc,
                                        {"STC": s, "cat_O": oc}, ev, [(inst.id, "stc"), (zid, "cat", omask)]))
            inner = ev.cat_A(did, Dsp, Dsp.from_parent_mask(omask), f"O{o}")
            rep.checks.append(_le_check(inst.id, f"cat_O(XxX) <= STC_G(X) * cat_O(daleth), O=orbit{o}", oc,
                                        mul(s, inner), {"cat_O": oc, "STC": s, "inner": inner}, ev,
                                        [(zid, "cat", omask), (inst.id, "stc")]))
        if not is_G_path_connected(X):
            rep.checks.append(Check(inst.id, "TC_G(X) <= cat_G(XxX)", VACUOUS, {"reason": "not G-path-connected"}))
            rep.checks.append(Check(inst.id, "STC_G(X) <= cat_OxO(XxX)", VACUOUS,
                                    {"reason": "not G-path-connected"}))
            continue
        if not _need(inst, "sq", "tcg"):
            rep.checks.append(Check(inst.id, "TC_G(X) <= cat_G(XxX)", SKIPPED, {}))
            continue
        Zd = square(X, "diagonal")
        t, c = ev.tcg(inst.id, X), ev.catg(f"{inst.id}^2[G]", Zd)
        rep.checks.append(_le_check(inst.id, "TC_G(X) <= cat_G(XxX)", t, c, {"TC_G": t, "cat_G": c}, ev,
                                    [(inst.id, "tcg"), (f"{inst.id}^2[G]", "catG")]))
        for o, omask in enumerate(X.orbits.masks):
            OO = rectangle(Z, omask, omask).members
            c = ev.cat_A(zid, Z, OO, f"O{o}xO{o}")
            rep.checks.append(_le_check(inst.id, f"STC_G(X) <= cat_OxO(XxX), O=orbit{o}", s, c,
                                        {"STC": s, "cat_OxO": c}, ev, [(inst.id, "stc"), (zid, "cat", OO)]))
    return rep


def _product_group_projections(G: FiniteGroup):
    """If G is literally a direct product built by ``direct_product``, its two factor orders."""
    labels = G.labels
    if not labels or not all(isinstance(l, tuple) and len(l) == 2 for l in labels):
        return None
    left = sorted({l[0] for l in labels}, key=repr)
    right = sorted({l[1] for l in labels}, key=repr)
    if len(left) * len(right) != G.order:
        return None
    return len(left), len(right)


def suite_daleth(ev: Evaluator, instances) -> SuiteReport:
    """Set identities for daleth and its fixed sets, plus a proper inclusion of fixed sets."""
    rep = SuiteReport("daleth-identities")
    witness = None
    for inst in instances:
        X = inst.space
        G = X.group
        Z = square(X, "product")
        try:
            D = daleth(Z)
        except FormulaMismatch as exc:
            rep.checks.append(Check(inst.id, "daleth = {(gx, x)}", FAILS, {"error": str(exc)}))
            continue
        rep.checks.append(Check(inst.id, "daleth = {(gx, x)}", HOLDS, {"points": bin(D.members).count("1")}))
        ok = all(X.fixed_mask(G.generated_subgroup([h, k]).members) == X.fixed_mask([h]) & X.fixed_mask([k])
                 for h in G.elements for k in G.elements)
        rep.checks.append(Check(inst.id, "X^h & X^h' = X^<h,h'>", HOLDS if ok else FAILS, {}))
        GG = Z.group
        p1, p2 = projections(G, G)
        bad = []
        for H in GG.subgroups():
            try:
                DH = fixed_sets_of_daleth(Z, H).members
            except FormulaMismatch as exc:
                bad.append(str(exc))
                continue
            hat = GG.generated_subgroup([a * G.order + b for a in {p1[h] for h in H.members}
                                         for b in {p2[h] for h in H.members}])
            if D.members & Z.fixed_mask(hat.members) != DH:
                bad.append(f"daleth^Hhat != daleth^H for H={sorted(H.members)}")
        rep.checks.append(Check(inst.id, "fixed sets of daleth: formula and daleth^Hhat = daleth^H",
                                FAILS if bad else HOLDS, {"errors": bad[:3], "subgroups": len(GG.subgroups())},
                                "DERIVED"))
        if witness is None:
            witness = proper_inclusion_witness(inst.id, X)
    # on daleth itself the two fixed sets always agree; the witness comes from a non-product G x G space
    rep.checks.append(Check(witness[0] if witness else "-", "some A^Hhat is a proper subset of A^H",
                            HOLDS if witness else FAILS, witness[1] if witness else {}, "PAPER"))
    return rep


def proper_inclusion_witness(ident: str, X: FiniteGSpace):
    """A subgroup H of G = G1 x G2 with X^Hhat a proper subset of X^H, for A = X."""
    dims = _product_group_projections(X.group)
    if dims is None:
        return None
    m = dims[1]
    G = X.group
    for H in G.subgroups():
        hat = G.generated_subgroup([a * m + b for a in {h // m for h in H.members}
                                    for b in {h % m for h in H.members}])
        fh, fhat = X.fixed_mask(H.members), X.fixed_mask(hat.members)
        if fhat != fh:
            assert fhat & ~fh == 0
            return ident, {"H": sorted(H.members), "Hhat": sorted(hat.members),
                           "A^H": [X.labels[x] for x in bits(fh)], "A^Hhat": [X.labels[x] for x in bits(fhat)]}
    return None


def suite_free_action(ev: Evaluator, instances) -> SuiteReport:
    """TC(X/G) = STC_G(X) for poset coverings, by certificate transport both ways."""
    rep = SuiteReport("free-action")
    for inst in instances:
        X = inst.space
        if X.group.order == 1 or not X.is_free:
            continue
        Q, q = orbit_space(X)
        if not is_poset_covering(q):
            rep.checks.append(Check(inst.id, "TC(X/G) = STC_G(X)", VACUOUS,
                                    {"reason": "free action that is not a poset covering"}))
            continue
        qid = f"{inst.id}/G"
        tq = ev.run((qid, "tc"), tc_query(Q, ev.bound))
        if not tq.finite:
            rep.checks.append(Check(inst.id, "TC(X/G) = STC_G(X)", SKIPPED, {"TC(X/G)": tq.value}))
            continue
        try:
            up = lift_certificate(tq, X)
            down = project_certificate(up, X)
        except (NotACovering, FormulaMismatch, ValueError) as exc:
            rep.checks.append(Check(inst.id, "lift/project", FAILS, {"error": str(exc)}))
            continue
        vu = certificates.check(certificates.to_json(up))
        vd = certificates.check(certificates.to_json(down))
        ok = bool(vu) and bool(vd) and len(up.sets) == len(down.sets) == tq.value
        refs = [certificates.to_json(c)["integrity"] for c in (tq, up, down)]
        rep.checks.append(Check(inst.id, "lifted and projected certificates check, same size",
                                HOLDS if ok else FAILS, {"TC(X/G)": tq.value, "lift": len(up.sets),
                                                         "project": len(down.sets), "lift_check": vu.reason,
                                                         "project_check": vd.reason}, "PAPER", certificates=refs))
        s = ev.run((inst.id, "stc"), stc_query(X, ev.bound)) if _need(inst, "stc") else None
        if s is None or not s.finite:
            rep.checks.append(Check(inst.id, "TC(X/G) = STC_G(X) (direct search)", SKIPPED,
                                    {"STC": None if s is None else s.value}))
            continue
        ps = project_certificate(s, X)
        vp = certificates.check(certificates.to_json(ps))
        ok = s.value == tq.value and bool(vp) and len(ps.sets) == s.value
        rep.checks.append(Check(inst.id, "TC(X/G) = STC_G(X) (direct search)", HOLDS if ok else FAILS,
                                {"TC(X/G)": tq.value, "STC": s.value, "projected_check": vp.reason}, "PAPER",
                                certificates=ev.ref((inst.id, "stc"))))
    return rep


SUITES = {
    "catalog-values": suite_catalog_values,
    "domination": suite_domination,
    "products": suite_products,
    "fixed-points": suite_fixed_points,
    "monotonicity": suite_monotonicity,
    "symmetric-bounds": suite_symmetric_bounds,
    "daleth-identities": suite_daleth,
    "free-action": suite_free_action,
}


def run_suite(name: str, ev: Evaluator | None = None, instances=None) -> SuiteReport:
    ev = ev or Evaluator()
    instances = catalog_instances() if instances is None else instances
    t0 = time.perf_counter()
    rep = SUITES[name](ev, instances)
    rep.seconds = time.perf_counter() - t0
    for key, reason in ev.rejected:
        rep.checks.append(Check(str(key[0]), f"certificate for {key[1]} passes check", FAILS, {"reason": reason}))
    ev.rejected.clear()
    return rep


def run_all(ev: Evaluator | None = None, names=None) -> list[SuiteReport]:
    ev = ev or Evaluator()
    instances = catalog_instances()
    return [run_suite(n, ev, instances) for n in (names or SUITES)]


__all__ = ["Check", "Evaluator", "Instance", "SuiteReport", "SUITES", "catalog_instances", "daleth_of_product",
           "le", "proper_inclusion_witness", "run_all", "run_suite"]
