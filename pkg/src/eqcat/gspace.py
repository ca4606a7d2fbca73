"""Finite G-spaces: finite posets with a group acting by order automorphisms.

Topology convention: open sets are down-sets, the minimal open neighbourhood
of ``x`` is ``U_x = {y <= x}``, and continuous maps are order-preserving maps.
Subsets of points are Python ints used as bitmasks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Hashable, Iterable, Iterator, Sequence

from .group import FiniteGroup, Subgroup, direct_product, is_homomorphism, projections


class SpaceError(ValueError):
    pass


class GroupMismatch(SpaceError):
    pass


class QuotientNotT0(SpaceError):
    pass


class PowerTooLarge(SpaceError):
    pass


class FormulaMismatch(AssertionError):
    """Two independent formulas for the same set disagree (an action bug)."""


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class ProductInfo:
    """Records that a space is ``left x right``; point (x, y) has index ``x*|right| + y``.

    ``hom_left``/``hom_right`` map the product's group onto the factor groups so
    that both projections are equivariant.
    """
    left: "FiniteGSpace"
    right: "FiniteGSpace"
    hom_left: tuple
    hom_right: tuple
    mode: str  # "diagonal" or "product"

    def split(self, z: int) -> tuple[int, int]:
        return divmod(z, self.right.n)

    def join(self, x: int, y: int) -> int:
        return x * self.right.n + y


class FiniteGSpace:
    """A finite poset with a group action by order automorphisms."""

    def __init__(self, labels: Sequence[Hashable], down: Sequence[int], group: FiniteGroup,
                 act: Sequence[Sequence[int]], name: str = "", product_info: ProductInfo | None = None,
                 check: bool = True):
        self.labels = tuple(labels)
        self.n = len(self.labels)
        self.down = tuple(down)
        self.group = group
        self.act = tuple(tuple(row) for row in act)
        self.name = name
        self.product_info = product_info
        self.full = (1 << self.n) - 1
        up = [0] * self.n
        for x in range(self.n):
            for y in bits(self.down[x]):
                up[y] |= 1 << x
        self.up = tuple(up)
        if check:
            self._validate()
        self._lower_covers = None
        self._upper_covers = None
        self._orbits = None
        self._index = None

    # construction -------------------------------------------------------

    @classmethod
    def from_relations(cls, labels: Sequence[Hashable], relations: Iterable[tuple[Hashable, Hashable]],
                       group: FiniteGroup | None = None, action: dict | None = None,
                       name: str = "") -> "FiniteGSpace":
        """Build from ``(lower, upper)`` pairs; the order is their reflexive-transitive closure.

        ``action`` maps group labels to dicts ``point -> point``; missing group
        elements act trivially only if the group is trivial.
        """
        labels = tuple(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise SpaceError("duplicate point labels")
        n = len(labels)
        down = [1 << i for i in range(n)]
        try:
            for lo, hi in relations:
                down[index[hi]] |= 1 << index[lo]
        except KeyError as exc:
            raise SpaceError(f"unknown point {exc.args[0]!r} in relation") from None
        down = _transitive_closure(down)
        group = group or FiniteGroup.trivial()
        act = []
        for g in group.elements:
            if action is None or group.labels[g] not in action:
                if g != group.identity and action is not None:
                    raise SpaceError(f"action missing for group element {group.labels[g]!r}")
                act.append(tuple(range(n)))
                continue
            table = action[group.labels[g]]
            try:
                act.append(tuple(index[table.get(lab, lab)] for lab in labels))
            except KeyError as exc:
                raise SpaceError(f"unknown point {exc.args[0]!r} in action") from None
        return cls(labels, down, group, act, name=name)

    def _validate(self):
        n = self.n
        for x in range(n):
            if not self.down[x] >> x & 1:
                raise SpaceError("order is not reflexive")
            for y in bits(self.down[x]):
                if y != x and self.down[y] >> x & 1:
                    raise SpaceError(f"order is not antisymmetric at {self.labels[x]!r}, {self.labels[y]!r}")
                if self.down[y] & ~self.down[x]:
                    raise SpaceError("order is not transitive")
        G = self.group
        if len(self.act) != G.order:
            raise SpaceError("action must list every group element")
        for g in G.elements:
            perm = self.act[g]
            if sorted(perm) != list(range(n)):
                raise SpaceError(f"group element {G.labels[g]!r} does not act by a bijection")
            for x in range(n):
                if mask_of(perm[y] for y in bits(self.down[x])) != self.down[perm[x]]:
                    raise SpaceError(f"group element {G.labels[g]!r} is not an order automorphism")
        if self.act[G.identity] != tuple(range(n)):
            raise SpaceError("identity must act trivially")
        for g in G.elements:
            for h in G.elements:
                gh = G.mul(g, h)
                if any(self.act[g][self.act[h][x]] != self.act[gh][x] for x in range(n)):
                    raise SpaceError("action is not a homomorphism")

    # basic structure ----------------------------------------------------

    def leq(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)

    def comparable(self, x: int, y: int) -> bool:
        return bool((self.down[y] | self.up[y]) >> x & 1)

    def index(self, label) -> int:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        try:
            return self._index[label]
        except KeyError:
            raise SpaceError(f"unknown point {label!r}") from None

    @property
    def lower_covers(self) -> tuple:
        if self._lower_covers is None:
            lc = []
            for x in range(self.n):
                strict = self.down[x] & ~(1 << x)
                below = 0
                for y in bits(strict):
                    below |= self.down[y] & ~(1 << y)
                lc.append(tuple(bits(strict & ~below)))
            self._lower_covers = tuple(lc)
            uc = [[] for _ in range(self.n)]
            for x in range(self.n):
                for y in lc[x]:
                    uc[y].append(x)
            self._upper_covers = tuple(tuple(u) for u in uc)
        return self._lower_covers

    @property
    def upper_covers(self) -> tuple:
        self.lower_covers
        return self._upper_covers

    def covers(self) -> list[tuple[int, int]]:
        return [(y, x) for x in range(self.n) for y in self.lower_covers[x]]

    def minimal_points(self, mask: int | None = None) -> list[int]:
        mask = self.full if mask is None else mask
        return [x for x in bits(mask) if not (self.down[x] & mask & ~(1 << x))]

    def maximal_points(self, mask: int | None = None) -> list[int]:
        mask = self.full if mask is None else mask
        return [x for x in bits(mask) if not (self.up[x] & mask & ~(1 << x))]

    def down_closure(self, mask: int) -> int:
        out = 0
        for x in bits(mask):
            out |= self.down[x]
        return out

    def up_closure(self, mask: int) -> int:
        out = 0
        for x in bits(mask):
            out |= self.up[x]
        return out

    def is_down_set(self, mask: int) -> bool:
        return self.down_closure(mask) == mask

    def is_up_set(self, mask: int) -> bool:
        return self.up_closure(mask) == mask

    # group action -------------------------------------------------------

    def act_mask(self, g: int, mask: int) -> int:
        perm = self.act[g]
        return mask_of(perm[x] for x in bits(mask))

    def is_invariant(self, mask: int) -> bool:
        return all(self.act_mask(g, mask) == mask for g in self.group.elements)

    def saturate(self, mask: int) -> int:
        out = 0
        for g in self.group.elements:
            out |= self.act_mask(g, mask)
        return out

    @property
    def orbits(self) -> "OrbitData":
        if self._orbits is None:
            self._orbits = OrbitData.build(self)
        return self._orbits

    def stabilizer(self, x: int) -> frozenset:
        return frozenset(g for g in self.group.elements if self.act[g][x] == x)

    def fixed_mask(self, elements: Iterable[int]) -> int:
        elements = list(elements)
        return mask_of(x for x in range(self.n) if all(self.act[g][x] == x for g in elements))

    def is_free(self) -> bool:
        e = self.group.identity
        return all(self.act[g][x] != x for g in self.group.elements if g != e for x in range(self.n))

    def is_trivial_action(self) -> bool:
        return all(row == tuple(range(self.n)) for row in self.act)

    # derived spaces -----------------------------------------------------

    def subspace(self, mask: int, group: FiniteGroup | None = None, elems: Sequence[int] | None = None,
                 name: str = "") -> "SubSpace":
        """Induced subposet on ``mask``, acted on by ``group`` whose element i is ``elems[i]`` of self.group.

        Default: the whole group (``mask`` must then be invariant).
        """
        if group is None:
            group, elems = self.group, tuple(self.group.elements)
        pts = list(bits(mask))
        pos = {x: i for i, x in enumerate(pts)}
        down = [mask_of(pos[y] for y in bits(self.down[x] & mask)) for x in pts]
        act = []
        for g in elems:
            perm = self.act[g]
            try:
                act.append(tuple(pos[perm[x]] for x in pts))
            except KeyError:
                raise SpaceError("subset is not invariant under the subgroup") from None
        return SubSpace([self.labels[x] for x in pts], down, group, act, name=name or self.name,
                        parent=self, parent_index=tuple(pts), group_map=tuple(elems))

    def restrict_group(self, H: Subgroup) -> "SubSpace":
        Hg, elems = H.as_group()
        return self.subspace(self.full, Hg, elems, name=f"{self.name}|H")

    def __repr__(self):
        return f"FiniteGSpace({self.name or '?'}, n={self.n}, |G|={self.group.order})"

    def describe(self) -> dict:
        """JSON-ready description (the space file schema)."""
        G = self.group
        lab = [_jsonable(p) for p in self.labels]
        glab = [_jsonable(g) for g in G.labels]
        return {
            "name": self.name,
            "points": lab,
            "covers": [[lab[a], lab[b]] for a, b in self.covers()],
            "group": {
                "elements": glab,
                "table": [[glab[G.mul(a, b)] for b in G.elements] for a in G.elements],
                "identity": glab[G.identity],
            },
            "action": {
                str(glab[g]) if not isinstance(glab[g], str) else glab[g]:
                    {_key(lab[x]): lab[self.act[g][x]] for x in range(self.n) if self.act[g][x] != x}
                for g in G.elements if g != G.identity
            },
        }


class SubSpace(FiniteGSpace):
    """A subposet of ``parent`` with a (sub)group action and index maps back to the parent."""

    def __init__(self, labels, down, group, act, name="", parent=None, parent_index=(), group_map=()):
        super().__init__(labels, down, group, act, name=name)
        self.parent = parent
        self.parent_index = tuple(parent_index)
        self.group_map = tuple(group_map)

    def to_parent_mask(self, mask: int) -> int:
        return mask_of(self.parent_index[i] for i in bits(mask))

    def from_parent_mask(self, mask: int) -> int:
        pos = {x: i for i, x in enumerate(self.parent_index)}
        return mask_of(pos[x] for x in bits(mask) if x in pos)


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def _key(v):
    return v if isinstance(v, str) else repr(v) if not isinstance(v, (int, list)) else str(v)


def _transitive_closure(down: list[int]) -> list[int]:
    down = list(down)
    changed = True
    while changed:
        changed = False
        for x in range(len(down)):
            acc = down[x]
            for y in bits(down[x]):
                acc |= down[y]
            if acc != down[x]:
                down[x] = acc
                changed = True
    return down


@dataclass
class OrbitData:
    orbit_of: tuple          # point -> orbit index
    orbits: tuple            # orbit index -> sorted tuple of points
    reps: tuple              # orbit index -> representative (smallest point)
    to_rep: tuple            # point -> group element k with point = k . rep
    masks: tuple             # orbit index -> bitmask of points

    @classmethod
    def build(cls, X: FiniteGSpace) -> "OrbitData":
        orbit_of = [-1] * X.n
        orbits, reps, masks = [], [], []
        to_rep = [None] * X.n
        for x in range(X.n):
            if orbit_of[x] >= 0:
                continue
            k = len(orbits)
            pts = set()
            for g in X.group.elements:
                y = X.act[g][x]
                if to_rep[y] is None:
                    to_rep[y] = g
                pts.add(y)
                orbit_of[y] = k
            orbits.append(tuple(sorted(pts)))
            reps.append(x)
            masks.append(mask_of(pts))
        return cls(tuple(orbit_of), tuple(orbits), tuple(reps), tuple(to_rep), tuple(masks))

    def __len__(self):
        return len(self.orbits)

    def orbit_mask_to_points(self, omask: int) -> int:
        out = 0
        for o in bits(omask):
            out |= self.masks[o]
        return out

    def points_to_orbit_mask(self, mask: int) -> int:
        return mask_of(self.orbit_of[x] for x in bits(mask))


@dataclass(frozen=True)
class MarkedSubset:
    """A named subset of a space.  ``pair_key`` optionally describes a subset of a
    product ``X x Y`` as ``{(x, y) : key_left[x] == key_right[y] is not None}``."""
    space: FiniteGSpace
    members: int
    name: str = ""
    pair_key: tuple | None = field(default=None, compare=False)

    @property
    def is_open(self) -> bool:
        return self.space.is_down_set(self.members)

    @property
    def is_closed(self) -> bool:
        return self.space.is_up_set(self.members)

    @property
    def is_invariant(self) -> bool:
        return self.space.is_invariant(self.members)

    @property
    def kind(self) -> str:
        if self.is_invariant:
            if self.is_closed:
                return "closed-invariant"
            if self.is_open:
                return "open-invariant"
        return "arbitrary"

    def points(self) -> list[int]:
        return list(bits(self.members))

    def __len__(self):
        return popcount(self.members)


# --------------------------------------------------------------------------
# constructions


def product(X: FiniteGSpace, Y: FiniteGSpace, action_mode: str = "diagonal", name: str = "") -> FiniteGSpace:
    """X x Y with componentwise order.

    ``diagonal``: X and Y share a group G acting by g(x, y) = (gx, gy).
    ``product``: G x H acts by (g, h)(x, y) = (gx, hy).
    """
    m = Y.n
    labels = [(a, b) for a in X.labels for b in Y.labels]
    down = []
    for x in range(X.n):
        ys = list(bits(X.down[x]))
        for y in range(m):
            ym = Y.down[y]
            acc = 0
            for x2 in ys:
                acc |= ym << (x2 * m)
            down.append(acc)
    if action_mode == "diagonal":
        if X.group is not Y.group and not _same_group(X.group, Y.group):
            raise GroupMismatch("diagonal product needs a common group")
        G = X.group
        act = [tuple(X.act[g][x] * m + Y.act[g][y] for x in range(X.n) for y in range(m)) for g in G.elements]
        ident = tuple(G.elements)
        info = ProductInfo(X, Y, ident, ident, "diagonal")
    elif action_mode == "product":
        G = direct_product(X.group, Y.group)
        p1, p2 = projections(X.group, Y.group)
        act = [tuple(X.act[p1[k]][x] * m + Y.act[p2[k]][y] for x in range(X.n) for y in range(m))
               for k in G.elements]
        info = ProductInfo(X, Y, p1, p2, "product")
    else:
        raise ValueError(f"unknown action mode {action_mode!r}")
    return FiniteGSpace(labels, down, G, act, name=name or f"{X.name}x{Y.name}", product_info=info,
                        check=False)


def _same_group(G: FiniteGroup, H: FiniteGroup) -> bool:
    return G.order == H.order and G.table == H.table and G.identity == H.identity


def square(X: FiniteGSpace, action_mode: str) -> FiniteGSpace:
    """X x X with the diagonal action of G, the G x G action, or the trivial group."""
    if action_mode == "trivial":
        return product(trivialize(X), trivialize(X), "diagonal", name=f"{X.name}^2")
    return product(X, X, action_mode, name=f"{X.name}^2[{action_mode}]")


def trivialize(X: FiniteGSpace) -> FiniteGSpace:
    if X.group.order == 1:
        return X
    cached = getattr(X, "_trivialized", None)
    if cached is None:
        cached = FiniteGSpace(X.labels, X.down, FiniteGroup.trivial(), [tuple(range(X.n))],
                              name=X.name, check=False)
        X._trivialized = cached
    return cached


def point_space(name: str = "pt", group: FiniteGroup | None = None) -> FiniteGSpace:
    group = group or FiniteGroup.trivial()
    return FiniteGSpace(["*"], [1], group, [(0,)] * group.order, name=name)


def _square_factor(Z: FiniteGSpace) -> FiniteGSpace:
    info = Z.product_info
    if info is None or info.left.n != info.right.n or info.left.down != info.right.down:
        raise SpaceError("expected a space of the form X x X")
    return info.left


def diagonal(Z: FiniteGSpace) -> MarkedSubset:
    """Delta(X) inside Z = X x X."""
    X = _square_factor(Z)
    members = mask_of(Z.product_info.join(x, x) for x in range(X.n))
    key = tuple(range(X.n))
    return MarkedSubset(Z, members, "diagonal", pair_key=(key, key))


def daleth(Z: FiniteGSpace, check: bool = True) -> MarkedSubset:
    """(G x G)-saturation of the diagonal in Z = X x X (product action).

    Computed both as the saturation and as {(g x, x)}; the two must agree.
    """
    info = Z.product_info
    X = _square_factor(Z)
    if info.mode != "product":
        raise SpaceError("daleth needs the G x G action on X x X")
    sat = Z.saturate(diagonal(Z).members)
    gx = mask_of(info.join(X.act[g][x], x) for g in X.group.elements for x in range(X.n))
    if check and sat != gx:
        raise FormulaMismatch("saturation of the diagonal differs from {(gx, x)}")
    key = X.orbits.orbit_of
    return MarkedSubset(Z, sat, "daleth", pair_key=(key, key))


def rectangle(Z: FiniteGSpace, left_mask: int, right_mask: int, name: str = "") -> MarkedSubset:
    info = Z.product_info
    if info is None:
        raise SpaceError("rectangle needs a product space")
    members = mask_of(info.join(x, y) for x in bits(left_mask) for y in bits(right_mask))
    kl = tuple(0 if left_mask >> x & 1 else None for x in range(info.left.n))
    kr = tuple(0 if right_mask >> y & 1 else None for y in range(info.right.n))
    return MarkedSubset(Z, members, name, pair_key=(kl, kr))


def marked(Z: FiniteGSpace, members: int, name: str = "") -> MarkedSubset:
    """A named subset, tagged as a rectangle when Z is a product and ``members`` is one."""
    info = Z.product_info
    if info is not None and members:
        pairs = [info.split(z) for z in bits(members)]
        left, right = mask_of(a for a, _ in pairs), mask_of(b for _, b in pairs)
        if popcount(left) * popcount(right) == len(pairs):
            return rectangle(Z, left, right, name)
    return MarkedSubset(Z, members, name)


def fixed_set(X: FiniteGSpace, H: Subgroup) -> SubSpace:
    """X^H as a subposet with the residual H-action."""
    mask = X.fixed_mask(H.members)
    Hg, elems = H.as_group()
    return X.subspace(mask, Hg, elems, name=f"{X.name}^H")


@dataclass
class OrbitMap:
    source: FiniteGSpace
    target: FiniteGSpace
    assignment: tuple  # point -> orbit point


def orbit_space(X: FiniteGSpace) -> tuple[FiniteGSpace, OrbitMap]:
    """X/G with the quotient preorder (trivial group)."""
    od = X.orbits
    k = len(od)
    down = []
    for o in range(k):
        acc = 0
        for x in od.orbits[o]:
            acc |= od.points_to_orbit_mask(X.down[x])
        down.append(acc)
    for o in range(k):
        for p in bits(down[o]):
            if p != o and down[p] >> o & 1:
                raise QuotientNotT0(f"orbits {o} and {p} are identified by the quotient preorder")
    labels = [X.labels[od.reps[o]] for o in range(k)]
    Q = FiniteGSpace(labels, down, FiniteGroup.trivial(), [tuple(range(k))], name=f"{X.name}/G")
    return Q, OrbitMap(X, Q, od.orbit_of)


def fixed_sets_of_daleth(Z: FiniteGSpace, H: Subgroup) -> MarkedSubset:
    """daleth(X)^H computed directly and by the fixed-point formula; both must agree."""
    info = Z.product_info
    X = _square_factor(Z)
    G = X.group
    D = daleth(Z)
    direct = D.members & Z.fixed_mask(H.members)
    pairs = [(info.hom_left[h], info.hom_right[h]) for h in H.members]
    formula = 0
    for g in G.elements:
        # h1 fixes g x  <=>  g^-1 h1 g fixes x
        gens = [h2 for _, h2 in pairs] + [G.conj(G.inv(g), h1) for h1, _ in pairs]
        K = G.generated_subgroup(gens)
        for x in bits(X.fixed_mask(K.members)):
            formula |= 1 << info.join(X.act[g][x], x)
    if direct != formula:
        raise FormulaMismatch("daleth fixed set differs from the union of X^<...> pieces")
    return MarkedSubset(Z, direct, "daleth^H")


# --------------------------------------------------------------------------
# connectivity and dimension


def components(X: FiniteGSpace, mask: int | None = None) -> list[int]:
    """Path components (= components of the comparability graph) of the subposet on mask."""
    mask = X.full if mask is None else mask
    out, seen = [], 0
    for x in bits(mask):
        if seen >> x & 1:
            continue
        comp, frontier = 1 << x, 1 << x
        while frontier:
            nxt = 0
            for y in bits(frontier):
                nxt |= (X.down[y] | X.up[y]) & mask
            frontier = nxt & ~comp
            comp |= nxt
        out.append(comp)
        seen |= comp
    return out


def is_path_connected(X: FiniteGSpace, mask: int | None = None) -> bool:
    return len(components(X, mask)) == 1


def is_G_path_connected(X: FiniteGSpace) -> bool:
    for H in X.group.subgroups():
        fix = X.fixed_mask(H.members)
        if not fix or not is_path_connected(X, fix):
            return False
    return True


def height(X: FiniteGSpace) -> int:
    if X.n == 0:
        return -1
    memo = {}

    def longest(x):
        if x not in memo:
            memo[x] = 1 + max((longest(y) for y in X.lower_covers[x]), default=0)
        return memo[x]

    return max(longest(x) for x in range(X.n)) - 1


def equivariant_dimension(X: FiniteGSpace) -> int:
    return height(orbit_space(X)[0])


# --------------------------------------------------------------------------
# fat sums


@dataclass
class FatSum:
    """F^n_A(X) = tuples in X^n with at least one coordinate in A."""
    base: FiniteGSpace
    marked: MarkedSubset
    n: int

    def contains(self, tup: Sequence[int]) -> bool:
        A = self.marked.members
        return any(A >> x & 1 for x in tup)

    def members(self) -> set[tuple]:
        X, n = self.base, self.n
        return {t for t in iproduct(range(X.n), repeat=n) if self.contains(t)}

    def recursion_members(self) -> set[tuple]:
        """The pushout recursion F^1 = A, F^k = (A x X^(k-1)) u (X x F^(k-1))."""
        X, A = self.base, list(bits(self.marked.members))
        layer = {(a,) for a in A}
        for k in range(2, self.n + 1):
            left = {(a,) + t for a in A for t in iproduct(range(X.n), repeat=k - 1)}
            right = {(x,) + t for x in range(X.n) for t in layer}
            layer = left | right
        return layer


def fat_sum(X: FiniteGSpace, A: MarkedSubset, n: int, bound: int = 10 ** 6) -> FatSum:
    if n < 1:
        raise ValueError("n must be >= 1")
    if X.n ** n > bound:
        raise PowerTooLarge(f"|X|^n = {X.n ** n} exceeds bound {bound}")
    if not A.is_invariant:
        raise SpaceError("fat sum needs an invariant subset")
    F = FatSum(X, A, n)
    if X.n ** n <= 20000 and F.members() != F.recursion_members():
        raise FormulaMismatch("fat sum membership differs from the pushout recursion")
    return F


def power(X: FiniteGSpace, n: int) -> FiniteGSpace:
    """X^n with the diagonal action, labels flattened to n-tuples."""
    P = X
    for _ in range(n - 1):
        P = product(P, X, "diagonal")
    if n > 1:
        flat = [tuple(_flatten(lab, n)) for lab in P.labels]
        P = FiniteGSpace(flat, P.down, P.group, P.act, name=f"{X.name}^{n}", check=False)
    return P


def _flatten(lab, n):
    out = []
    for _ in range(n - 1):
        lab, last = lab
        out.append(last)
    out.append(lab)
    return reversed(out)


def check_homomorphism(phi, G, H):
    if not is_homomorphism(phi, G, H):
        raise SpaceError("not a group homomorphism")
