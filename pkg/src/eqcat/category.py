"""Relative equivariant LS category by exact minimum cover, and the invariants built on it.

``cat_A`` is the least number of invariant open sets, each compressible into
``A``, covering the space.  Compressibility passes to invariant open subsets,
so only the maximal compressible invariant open sets matter; these are found
by growing down-sets of the orbit poset one orbit at a time, and a branch and
bound set cover then gives the exact minimum together with the family that
proves no smaller cover exists.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .gspace import (FiniteGSpace, FormulaMismatch, MarkedSubset, bits, components, daleth, diagonal, mask_of,
                     marked, popcount, power, product, square)
from .homotopy import EquivariantMap, HomotopyEngine, SearchBudgetExceeded, identity_map
from .setcover import min_set_cover

INFINITE = "infinite"
UNKNOWN = "unknown"
ABOVE_BOUND = ">bound"
DEFAULT_BOUND = 16


@dataclass
class CategoryQuery:
    """``subset`` is A.  ``alternatives`` lets each cover member pick its own target
    (used for cat_G, where a set may compress into any one orbit)."""
    space: FiniteGSpace
    subset: MarkedSubset
    label: str = "catA"
    search_bound: int = DEFAULT_BOUND
    alternatives: tuple = ()

    def __post_init__(self):
        for T in self.targets:
            if T.space is not self.space:
                raise ValueError("subset must live in the query space")
            if not self.space.is_invariant(T.members):
                raise ValueError("subset must be invariant under the acting group")

    @property
    def targets(self) -> tuple:
        return (self.subset,) + tuple(self.alternatives)


@dataclass
class CoverCertificate:
    query: CategoryQuery
    value: object                     # int, INFINITE, ABOVE_BOUND or UNKNOWN
    sets: list = field(default_factory=list)          # CompressionCertificate per cover member
    family: list = field(default_factory=list)        # maximal compressible invariant opens (point masks)
    witness: int | None = None        # uncovered point when value is INFINITE
    digest: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def finite(self) -> bool:
        return isinstance(self.value, int)


def family_digest(masks: list[int]) -> str:
    return hashlib.sha256(json.dumps(sorted(masks)).encode()).hexdigest()


class CategorySolver:
    """Exact ``cat_A`` computations sharing one homotopy engine (and its memo)."""

    def __init__(self, engine: HomotopyEngine | None = None, bound: int = DEFAULT_BOUND):
        self.engine = engine or HomotopyEngine()
        self.bound = bound

    # family of maximal compressible sets ---------------------------------------

    def maximal_family(self, A: MarkedSubset) -> tuple[list[int], dict]:
        """Maximal invariant open sets compressible into A, as point masks, plus stats.

        Dualize and advance: every compressible down-set not inside a known
        maximal set contains the down-closure of a minimal transversal of the
        complements of the known maximal sets.  Testing those transversals
        either finds a new compressible set (extended greedily to a maximal
        one) or proves the list complete.
        """
        Z = A.space
        od = Z.orbits
        k = len(od)
        full = (1 << k) - 1
        odown = [od.points_to_orbit_mask(Z.down[r]) for r in od.reps]
        # a linear extension of the orbit poset, used for greedy growth
        order = sorted(range(k), key=lambda o: (popcount(odown[o]), o))
        memo: dict[int, bool] = {0: True}
        negatives: list[int] = []
        stats = {"tested": 0}

        def closure(omask: int) -> int:
            out = 0
            for o in bits(omask):
                out |= odown[o]
            return out

        def is_comp(I: int) -> bool:
            if I not in memo:
                if any(n & ~I == 0 for n in negatives):
                    memo[I] = False
                else:
                    stats["tested"] += 1
                    U = od.orbit_mask_to_points(I)
                    memo[I] = self.engine.compressible(U, A) is not None
                    if not memo[I]:
                        negatives.append(I)
            return memo[I]

        def grow(I: int) -> int:
            for o in order:
                if not I >> o & 1:
                    J = I | odown[o]
                    if is_comp(J):
                        I = J
            return I

        maximal: list[int] = []
        transversals = [0]
        tested_t: set[int] = set()
        while True:
            new = None
            for T in transversals:
                if T in tested_t:
                    continue
                tested_t.add(T)
                I = closure(T)
                if is_comp(I):
                    new = grow(I)
                    break
            if new is None:
                break
            maximal.append(new)
            transversals = _add_hyperedge(transversals, full & ~new)
        fam = sorted(od.orbit_mask_to_points(I) for I in maximal)
        stats.update({"maximal": len(fam), "negatives": len(negatives)})
        return fam, stats

    def _family(self, query: CategoryQuery) -> tuple[list[int], list, dict]:
        """Maximal compressible sets over all targets of the query, each with its target."""
        owner: dict[int, MarkedSubset] = {}
        stats: dict = {"tested": 0, "negatives": 0}
        for T in query.targets:
            if not T.members:
                continue
            fam, st = self.maximal_family(T)
            stats["tested"] += st["tested"]
            stats["negatives"] += st["negatives"]
            for U in fam:
                owner.setdefault(U, T)
        masks = [U for U in owner if not any(U != V and U & ~V == 0 for V in owner)]
        masks.sort()
        stats["maximal"] = len(masks)
        return masks, [owner[U] for U in masks], stats

    # the category ----------------------------------------------------------

    def cat_A(self, query: CategoryQuery) -> CoverCertificate:
        Z = query.space
        if Z.n == 0:
            return CoverCertificate(query, 0)
        if not any(T.members for T in query.targets):
            return CoverCertificate(query, INFINITE, witness=0)
        try:
            fam, owners, stats = self._family(query)
        except SearchBudgetExceeded as exc:
            return CoverCertificate(query, UNKNOWN, stats={"reason": str(exc)})
        digest = family_digest(fam)
        union = 0
        for s in fam:
            union |= s
        if union != Z.full:
            witness = next(bits(Z.full & ~union))
            return CoverCertificate(query, INFINITE, family=fam, witness=witness, digest=digest, stats=stats)
        od = Z.orbits
        ofam = [od.points_to_orbit_mask(s) for s in fam]
        cover = min_set_cover((1 << len(od)) - 1, ofam)
        n = len(cover)
        stats["value"] = n
        if n > query.search_bound:
            return CoverCertificate(query, ABOVE_BOUND, family=fam, digest=digest, stats=stats)
        certs = [self.engine.compressible(fam[i], owners[i]) for i in sorted(cover)]
        return CoverCertificate(query, n, sets=certs, family=fam, digest=digest, stats=stats)

    # Whitehead formulation ------------------------------------------------

    def whitehead_cat_A(self, query: CategoryQuery) -> "WhiteheadCertificate":
        """Least n with an equivariant X -> X^n homotopic to the diagonal and landing in the fat sum.

        The homotopy class of Delta_n is C^n for C the class of id_X, so a map
        (c_1, ..., c_n) in it lands in F^n_A(X) iff the sets {x : c_i(x) in A}
        cover X.  The search is therefore a cover problem over the class of id_X.
        """
        X, A = query.space, query.subset
        if query.alternatives:
            raise ValueError("Whitehead formulation needs a single subset A")
        try:
            C = self.engine.component(identity_map(X))
        except SearchBudgetExceeded as exc:
            return WhiteheadCertificate(query, UNKNOWN, stats={"reason": str(exc)})
        best: dict[int, tuple] = {}
        for c in sorted(C, key=lambda m: m.values):
            S = mask_of(x for x in range(X.n) if A.members >> c.values[x] & 1)
            best.setdefault(S, c.values)
        masks = sorted(S for S in best if not any(S != T and S & ~T == 0 for T in best))
        stats = {"component": len(C), "sets": len(masks)}
        digest = family_digest(masks)
        union = 0
        for S in masks:
            union |= S
        if union != X.full:
            witness = next(bits(X.full & ~union))
            return WhiteheadCertificate(query, INFINITE, family=masks, witness=witness, digest=digest, stats=stats)
        cover = min_set_cover(X.full, masks)
        n = len(cover)
        stats["value"] = n
        if n > query.search_bound:
            return WhiteheadCertificate(query, ABOVE_BOUND, family=masks, digest=digest, stats=stats)
        xi = [best[masks[i]] for i in sorted(cover)]
        ident = identity_map(X)
        fence = [tuple(ident.values for _ in xi)]
        relations = []
        for i, c in enumerate(xi):
            path = self.engine.homotopic(ident, EquivariantMap(X, X, c, ident.hom))
            for f, rel in zip(path.maps[1:], path.relations):
                step = list(fence[-1])
                step[i] = f
                fence.append(tuple(step))
                relations.append(rel)
        return WhiteheadCertificate(query, n, xi=xi, fence=fence, relations=relations, family=masks,
                                    digest=digest, stats=stats)


@dataclass
class WhiteheadCertificate:
    """``fence`` is a list of n-tuples of self-maps of X (a fence of maps X -> X^n) from Delta_n to ``xi``."""
    query: CategoryQuery
    value: object
    xi: list = field(default_factory=list)
    fence: list = field(default_factory=list)
    relations: list = field(default_factory=list)
    family: list = field(default_factory=list)
    witness: int | None = None
    digest: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def finite(self) -> bool:
        return isinstance(self.value, int)


# --------------------------------------------------------------------------
# named invariants


def tc_query(X: FiniteGSpace, bound: int = DEFAULT_BOUND) -> CategoryQuery:
    Z = square(X, "trivial")
    return CategoryQuery(Z, diagonal(Z), "tc", bound)


def tcg_query(X: FiniteGSpace, bound: int = DEFAULT_BOUND) -> CategoryQuery:
    Z = square(X, "diagonal")
    return CategoryQuery(Z, diagonal(Z), "tcg", bound)


def stc_query(X: FiniteGSpace, bound: int = DEFAULT_BOUND) -> CategoryQuery:
    Z = square(X, "product")
    return CategoryQuery(Z, daleth(Z), "stc", bound)


def point_query(X: FiniteGSpace, base: int, bound: int = DEFAULT_BOUND, label: str = "cat") -> CategoryQuery:
    A = marked(X, X.saturate(1 << base), f"orbit({X.labels[base]})")
    return CategoryQuery(X, A, label, bound)


def subset_query(X: FiniteGSpace, members: int, name: str = "A", bound: int = DEFAULT_BOUND) -> CategoryQuery:
    return CategoryQuery(X, marked(X, members, name), "catA", bound)


def catg_query(X: FiniteGSpace, bound: int = DEFAULT_BOUND, label: str = "catG") -> CategoryQuery:
    """cat_G: each cover member compresses into some single orbit (its own choice)."""
    orbs = [marked(X, m, f"orbit{i}") for i, m in enumerate(X.orbits.masks)]
    return CategoryQuery(X, orbs[0], label, bound, tuple(orbs[1:]))


def infinite_obstruction(X: FiniteGSpace) -> tuple[int, int] | None:
    """A pair of points in different path components (forces TC-type invariants to be infinite)."""
    comps = components(X)
    if len(comps) < 2:
        return None
    return next(bits(comps[0])), next(bits(comps[1]))


def _add_hyperedge(transversals: list[int], edge: int) -> list[int]:
    """One step of Berge's algorithm: minimal transversals after adding ``edge``.

    Old transversals meeting ``edge`` stay minimal.  A new candidate T | e can
    only contain an old transversal S with S & edge == e, and two new
    candidates never contain each other unless equal.
    """
    kept = [T for T in transversals if T & edge]
    by_elem: dict[int, list[int]] = {}
    for S in kept:
        hit = S & edge
        if hit & (hit - 1) == 0:
            by_elem.setdefault(hit, []).append(S)
    new = set()
    for T in transversals:
        if T & edge:
            continue
        for e in bits(edge):
            cand = T | (1 << e)
            if not any(S & ~cand == 0 for S in by_elem.get(1 << e, ())):
                new.add(cand)
    return kept + sorted(new)


# --------------------------------------------------------------------------
# fat sums of products, base cases


class UnsupportedCase(NotImplementedError):
    """Only the (n, 1) and (1, m) cases of the fat-sum product map are implemented."""


def fat_sum_product_map(X: FiniteGSpace, A: MarkedSubset, Y: FiniteGSpace, B: MarkedSubset,
                        n: int, m: int) -> EquivariantMap:
    """F^n_A(X) x F^m_B(Y) -> F^(n+m-1)_(AxB)(X x Y) for min(n, m) = 1.

    (n, 1): ((x_1..x_n), b) -> ((x_1, b), ..., (x_n, b)); (1, m) symmetrically.
    Source and target are built as subspaces of the ambient powers, so a
    value outside the target fat sum raises FormulaMismatch.
    """
    if min(n, m) != 1:
        raise UnsupportedCase(f"fat-sum product map for (n, m) = ({n}, {m})")
    k = n + m - 1
    XY = product(X, Y, "diagonal")
    AB = mask_of(XY.product_info.join(a, b) for a in bits(A.members) for b in bits(B.members))
    Xn, Ym, XYk = power(X, n), power(Y, m), power(XY, k)

    def digits(idx: int, base: int, length: int) -> tuple:
        out = []
        for _ in range(length):
            idx, r = divmod(idx, base)
            out.append(r)
        return tuple(reversed(out))

    def encode(tup, base):
        idx = 0
        for t in tup:
            idx = idx * base + t
        return idx

    amb = product(Xn, Ym, "diagonal")
    src_mask, values = 0, {}
    for z in range(amb.n):
        p, q = amb.product_info.split(z)
        xs, ys = digits(p, X.n, n), digits(q, Y.n, m)
        if not (any(A.members >> x & 1 for x in xs) and any(B.members >> y & 1 for y in ys)):
            continue
        src_mask |= 1 << z
        pairs = [(x, ys[0]) for x in xs] if m == 1 else [(xs[0], y) for y in ys]
        values[z] = encode([XY.product_info.join(a, b) for a, b in pairs], XY.n)
    tgt_mask = 0
    for w in range(XYk.n):
        if any(AB >> c & 1 for c in digits(w, XY.n, k)):
            tgt_mask |= 1 << w
    if any(not tgt_mask >> v & 1 for v in values.values()):
        raise FormulaMismatch("fat-sum product map leaves the target fat sum")
    S = amb.subspace(src_mask, name=f"F{n}x F{m}")
    T = XYk.subspace(tgt_mask, name=f"F{k}(XxY)")
    tpos = {w: i for i, w in enumerate(T.parent_index)}
    vals = tuple(tpos[values[z]] for z in S.parent_index)
    return EquivariantMap(S, T, vals, tuple(X.group.elements))
