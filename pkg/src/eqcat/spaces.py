"""Standard finite models: chains, discrete sets, fence circles, minimal spheres, groups acting on themselves."""
from __future__ import annotations

from .group import FiniteGroup, direct_product
from .gspace import FiniteGSpace


def point(name: str = "point") -> FiniteGSpace:
    return FiniteGSpace.from_relations(["*"], [], name=name)


def chain(k: int, name: str = "") -> FiniteGSpace:
    pts = list(range(k))
    return FiniteGSpace.from_relations(pts, [(i, i + 1) for i in range(k - 1)], name=name or f"chain{k}")


def discrete(k: int, group: FiniteGroup | None = None, action: dict | None = None,
             name: str = "") -> FiniteGSpace:
    return FiniteGSpace.from_relations(list(range(k)), [], group, action, name=name or f"discrete{k}")


def circle_relations(m: int) -> list[tuple[int, int]]:
    """C_m (m even, m >= 4): even points minimal, odd points maximal, i < i +- 1."""
    if m < 4 or m % 2:
        raise ValueError("fence circle needs an even number of points >= 4")
    rel = []
    for i in range(0, m, 2):
        rel.append((i, (i + 1) % m))
        rel.append((i, (i - 1) % m))
    return rel


def circle(m: int, group: FiniteGroup | None = None, action: dict | None = None,
           name: str = "") -> FiniteGSpace:
    return FiniteGSpace.from_relations(list(range(m)), circle_relations(m), group, action,
                                       name=name or f"C{m}")


def circle_rotation(m: int, step: int, name: str = "") -> FiniteGSpace:
    """Cyclic group generated by i -> i + step (step even) acting on C_m."""
    if step % 2:
        raise ValueError("rotation must preserve parity")
    order = m // _gcd(m, step)
    G = FiniteGroup.cyclic(order)
    action = {k: {i: (i + k * step) % m for i in range(m)} for k in range(order)}
    return circle(m, G, action, name=name or f"C{m}-rot{step}")


def circle_antipodal(m: int, name: str = "") -> FiniteGSpace:
    if m % 4:
        raise ValueError("antipodal map on C_m preserves the order only if 4 | m")
    G = FiniteGroup.cyclic(2)
    return circle(m, G, {1: {i: (i + m // 2) % m for i in range(m)}}, name=name or f"C{m}-antipodal")


def c4_reflection(name: str = "C4-reflection") -> FiniteGSpace:
    """Z/2 on C4 swapping the two maximal points and fixing both minimal points."""
    return circle(4, FiniteGroup.cyclic(2), {1: {1: 3, 3: 1}}, name=name)


def sphere(dim: int, action: str | None = None, name: str = "") -> FiniteGSpace:
    """Minimal finite model of S^dim: levels {(k, 0), (k, 1)} for k = 0..dim, each below the next level.

    ``action``: None, "reflection" (swap the top pair, fixing a model of S^(dim-1))
    or "antipodal" (swap every pair).
    """
    pts = [(k, s) for k in range(dim + 1) for s in (0, 1)]
    rel = [((k, s), (k + 1, t)) for k in range(dim) for s in (0, 1) for t in (0, 1)]
    if action is None:
        return FiniteGSpace.from_relations(pts, rel, name=name or f"S{dim}")
    G = FiniteGroup.cyclic(2)
    if action == "reflection":
        swap = {(dim, 0): (dim, 1), (dim, 1): (dim, 0)}
    elif action == "antipodal":
        swap = {(k, s): (k, 1 - s) for k in range(dim + 1) for s in (0, 1)}
    else:
        raise ValueError(f"unknown sphere action {action!r}")
    return FiniteGSpace.from_relations(pts, rel, G, {1: swap}, name=name or f"S{dim}-{action}")


def group_on_itself(G: FiniteGroup, name: str = "") -> FiniteGSpace:
    """Discrete space G with left translation."""
    labels = list(G.labels)
    action = {G.labels[g]: {G.labels[h]: G.labels[G.mul(g, h)] for h in G.elements} for g in G.elements}
    return FiniteGSpace.from_relations(labels, [], G, action, name=name or f"G{G.order}-self")


def klein() -> FiniteGroup:
    return direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))


def with_beat_point(X: FiniteGSpace, below: object, name: str = "") -> FiniteGSpace:
    """X with one new point whose only upper cover is ``below``, so it is a beat point; trivial group only."""
    if X.group.order != 1:
        raise ValueError("with_beat_point supports trivially acted spaces")
    new = ("beat", below)
    rel = [(X.labels[a], X.labels[b]) for a, b in X.covers()] + [(new, below)]
    return FiniteGSpace.from_relations(list(X.labels) + [new], rel, name=name or f"{X.name}+beat")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
