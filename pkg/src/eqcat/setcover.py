"""Exact minimum set cover by branch and bound over bitmask sets."""
from __future__ import annotations

from .gspace import bits, popcount


def _lower_bound(uncovered: int, containing: dict) -> int:
    # elements whose covering families are pairwise disjoint need distinct sets
    used = 0
    count = 0
    for e in bits(uncovered):
        fam = containing[e]
        if not fam & used:
            used |= fam
            count += 1
    return count


def min_set_cover(universe: int, sets: list[int], limit: int | None = None) -> list[int] | None:
    """Indices of a minimum cover of ``universe`` by ``sets``; None if no cover exists
    (or none with at most ``limit`` sets when ``limit`` is given).

    Ties are broken by input order, so the result is deterministic.
    """
    if universe == 0:
        return []
    sets = [s & universe for s in sets]
    union = 0
    for s in sets:
        union |= s
    if union != universe:
        return None
    # containing[e]: bitmask over set indices
    containing = {e: 0 for e in bits(universe)}
    for i, s in enumerate(sets):
        for e in bits(s):
            containing[e] |= 1 << i

    best = _greedy(universe, sets)
    best_len = len(best) if limit is None else min(len(best), limit + 1)
    if limit is not None and len(best) > limit:
        best = None
    state = {"best": best, "best_len": best_len}

    def rec(covered: int, chosen: list[int]):
        uncovered = universe & ~covered
        if not uncovered:
            if len(chosen) < state["best_len"]:
                state["best"], state["best_len"] = list(chosen), len(chosen)
            return
        if len(chosen) + _lower_bound(uncovered, containing) >= state["best_len"]:
            return
        # branch on the uncovered element with the fewest candidate sets
        e = min(bits(uncovered), key=lambda x: (popcount(containing[x]), x))
        cands = sorted(bits(containing[e]), key=lambda i: (-popcount(sets[i] & uncovered), i))
        for i in cands:
            chosen.append(i)
            rec(covered | sets[i], chosen)
            chosen.pop()

    rec(0, [])
    return state["best"]


def _greedy(universe: int, sets: list[int]) -> list[int]:
    covered, chosen = 0, []
    while covered != universe:
        i = max(range(len(sets)), key=lambda j: (popcount(sets[j] & ~covered), -j))
        chosen.append(i)
        covered |= sets[i]
    return chosen


def has_cover_of_size(universe: int, sets: list[int], k: int) -> bool:
    """Plain depth-first feasibility check, kept independent of ``min_set_cover``."""
    sets = [s & universe for s in sets]

    def rec(uncovered: int, budget: int) -> bool:
        if not uncovered:
            return True
        if budget == 0:
            return False
        low = uncovered & -uncovered
        return any(rec(uncovered & ~s, budget - 1) for s in sets if s & low)

    return rec(universe, k)
