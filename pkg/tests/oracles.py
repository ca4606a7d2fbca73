"""Brute-force oracles, deliberately sharing no code with the package.

Posets are given as a list of points and a ``leq`` predicate.  Homotopy
classes of maps U -> Y are computed by listing every order-preserving map
and joining any two that are pointwise comparable (union-find over all
pairs).  A set U in X x X compresses into the diagonal iff the two
projections restricted to U are homotopic.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product

import numpy as np


def circle_leq(m: int):
    """C_m: even points minimal, i < i +- 1 for even i."""
    def leq(a, b):
        return a == b or (a % 2 == 0 and b % 2 == 1 and (b - a) % m in (1, m - 1))
    return leq


def down_sets(points: list, leq) -> list[frozenset]:
    """Every down-set, by brute force over all subsets."""
    out = []
    n = len(points)
    below = [[j for j in range(n) if leq(points[j], points[i])] for i in range(n)]
    for bits in range(1 << n):
        if all(all(bits >> j & 1 for j in below[i]) for i in range(n) if bits >> i & 1):
            out.append(frozenset(points[i] for i in range(n) if bits >> i & 1))
    return out


def order_preserving_maps(dom: list, dleq, cod: list, cleq) -> np.ndarray:
    """All order-preserving maps dom -> cod as rows of codomain indices (backtracking)."""
    n = len(dom)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j and dleq(dom[i], dom[j])]
    before = {j: [(i, j2) for (i, j2) in pairs if max(i, j2) == j] for j in range(n)}
    out = []
    cur = [0] * n

    def rec(j):
        if j == n:
            out.append(list(cur))
            return
        for v in range(len(cod)):
            cur[j] = v
            if all(cleq(cod[cur[a]], cod[cur[b]]) for a, b in before[j]):
                rec(j + 1)

    rec(0)
    return np.array(out, dtype=np.int64).reshape(len(out), n)


@lru_cache(maxsize=256)
def class_labels(dom: tuple, dleq, cod: tuple, cleq) -> dict:
    """Map -> class id for every order-preserving map dom -> cod (maps as tuples of codomain indices)."""
    maps = order_preserving_maps(list(dom), dleq, list(cod), cleq)
    le = np.array([[cleq(a, b) for b in cod] for a in cod], dtype=bool)
    parent = list(range(len(maps)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(len(maps)):
        below = le[maps[i][None, :], maps].all(axis=1)   # maps[i] <= maps[k]
        for k in np.flatnonzero(below):
            ra, rb = find(i), find(int(k))
            if ra != rb:
                parent[ra] = rb
    return {tuple(r): find(i) for i, r in enumerate(maps.tolist())}


def same_class(dom: list, dleq, cod: list, cleq, f: list[int], g: list[int]) -> bool:
    labels = class_labels(tuple(dom), dleq, tuple(cod), cleq)
    return labels[tuple(f)] == labels[tuple(g)]


def brute_force_tc(points: list, leq, limit: int = 8):
    """TC of a small poset: least number of opens of X x X, each with p1 ~ p2, covering it."""
    sq = [(a, b) for a in points for b in points]

    def sleq(p, q):
        return leq(p[0], q[0]) and leq(p[1], q[1])

    opens = sorted(down_sets(sq, sleq), key=len)
    good: list[frozenset] = []
    bad: list[frozenset] = []
    for U in opens:
        if not U:
            continue
        if any(B <= U for B in bad):
            bad.append(U)
            continue
        dom = sorted(U)
        f = [points.index(a) for a, _ in dom]
        g = [points.index(b) for _, b in dom]
        if same_class(dom, sleq, points, leq, f, g):
            good.append(U)
        else:
            bad.append(U)
    maximal = [U for U in good if not any(U < V for V in good)]
    full = frozenset(sq)
    for k in range(1, limit + 1):
        for combo in combinations(maximal, k):
            if frozenset().union(*combo) == full:
                return k
    return None


def brute_force_cat_point(points: list, leq, base) -> int | None:
    """cat of a connected poset relative to one point: opens whose inclusion is homotopic to a constant."""
    opens = [U for U in down_sets(points, leq) if U]
    good = []
    for U in opens:
        dom = sorted(U)
        incl = [points.index(x) for x in dom]
        const = [points.index(base)] * len(dom)
        if same_class(dom, leq, points, leq, incl, const):
            good.append(U)
    full = frozenset(points)
    for k in range(1, len(points) + 1):
        for combo in combinations(good, k):
            if frozenset().union(*combo) == full:
                return k
    return None


def orbit_union_tcg_z2_self() -> dict:
    """Z/2 acting on itself: the diagonal-action orbits of {0,1}^2 and which of them touch the diagonal.

    In a discrete space fences are constant, so an invariant open set compresses
    into the diagonal only if it already lies inside it.
    """
    pts = list(product([0, 1], repeat=2))
    orbits = {frozenset({(a, b), ((a + 1) % 2, (b + 1) % 2)}) for a, b in pts}
    inside = [O for O in orbits if all(a == b for a, b in O)]
    uncovered = set(pts) - set().union(*inside)
    return {"orbits": len(orbits), "compressible": len(inside), "uncovered": sorted(uncovered)}


def brute_force_cat_product_point(points: list, leq, base, limit: int = 6) -> int | None:
    """Category of X x X relative to the point (base, base), trivial action.

    Homotopy in a product is coordinatewise, so an open U qualifies iff both
    projections restricted to U are homotopic to the constant map at ``base``.
    """
    sq = [(a, b) for a in points for b in points]

    def sleq(p, q):
        return leq(p[0], q[0]) and leq(p[1], q[1])

    opens = sorted((U for U in down_sets(sq, sleq) if U), key=len)
    good: list[frozenset] = []
    bad: list[frozenset] = []
    for U in opens:
        if any(B <= U for B in bad):
            bad.append(U)
            continue
        dom = sorted(U)
        const = [points.index(base)] * len(dom)
        ok = all(same_class(dom, sleq, points, leq, [points.index(p[c]) for p in dom], const) for c in (0, 1))
        (good if ok else bad).append(U)
    maximal = [U for U in good if not any(U < V for V in good)]
    full = frozenset(sq)
    for k in range(1, limit + 1):
        for combo in combinations(maximal, k):
            if frozenset().union(*combo) == full:
                return k
    return None
