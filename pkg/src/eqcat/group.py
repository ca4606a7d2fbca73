"""Finite groups given by explicit multiplication tables.

Elements are stored as integer indices ``0..n-1`` in input order; ``labels``
keeps the user-facing names.  Everything set-valued is returned sorted by
index so results are deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Hashable, Iterable, Sequence

MAX_SUBGROUP_ENUM = 24


class GroupError(ValueError):
    pass


class GroupTooLarge(GroupError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    labels: tuple
    table: tuple  # table[a][b] = a*b
    identity: int
    inverses: tuple = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.labels)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise GroupError("multiplication table must be n x n")
        if not 0 <= self.identity < n:
            raise GroupError("identity out of range")
        inv = []
        for a in range(n):
            found = [b for b in range(n) if self.table[a][b] == self.identity]
            if len(found) != 1 or self.table[found[0]][a] != self.identity:
                raise GroupError(f"element {self.labels[a]!r} has no two-sided inverse")
            inv.append(found[0])
        object.__setattr__(self, "inverses", tuple(inv))
        e = self.identity
        for a in range(n):
            if self.table[e][a] != a or self.table[a][e] != a:
                raise GroupError("identity is not two-sided")
        for a, b, c in product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise GroupError("table is not associative")

    # construction -------------------------------------------------------

    @classmethod
    def from_table(cls, labels: Sequence[Hashable], table: Sequence[Sequence[Hashable]],
                   identity: Hashable) -> "FiniteGroup":
        """Build from a label-valued table (``table[i][j]`` is the label of ``labels[i]*labels[j]``)."""
        labels = tuple(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise GroupError("duplicate element labels")
        try:
            tab = tuple(tuple(index[v] for v in row) for row in table)
            ident = index[identity]
        except KeyError as exc:
            raise GroupError(f"unknown element {exc.args[0]!r} in table") from None
        return cls(labels, tab, ident)

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls(("e",), ((0,),), 0)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls(tuple(range(n)), tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0)

    @classmethod
    def symmetric(cls, k: int) -> "FiniteGroup":
        """S_k acting on ``0..k-1``; product is composition ``(p*q)(i) = p(q(i))``."""
        perms = sorted(permutations(range(k)))
        index = {p: i for i, p in enumerate(perms)}
        table = tuple(tuple(index[tuple(p[q[i]] for i in range(k))] for q in perms) for p in perms)
        return cls(tuple(perms), table, index[tuple(range(k))])

    # basic algebra ------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, h: int) -> int:
        """g h g^-1"""
        t = self.table
        return t[t[g][h]][self.inverses[g]]

    def index(self, label: Hashable) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GroupError(f"unknown element {label!r}") from None

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in self.elements)

    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(self.elements))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, frozenset([self.identity]))

    def generated_subgroup(self, gens: Iterable[int]) -> "Subgroup":
        members = {self.identity}
        frontier = list(members)
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = self.table[a][g]
                    if c not in members:
                        members.add(c)
                        nxt.append(c)
            frontier = nxt
        return Subgroup(self, frozenset(members))

    def subgroups(self, max_order: int = MAX_SUBGROUP_ENUM) -> list["Subgroup"]:
        """All subgroups, sorted by (order, sorted member indices)."""
        if self.order > max_order:
            raise GroupTooLarge(f"|G| = {self.order} exceeds subgroup enumeration bound {max_order}")
        found = {frozenset(self.generated_subgroup([g]).members) for g in self.elements}
        frontier = list(found)
        cyclic = list(found)
        while frontier:
            nxt = []
            for H in frontier:
                for C in cyclic:
                    if C <= H:
                        continue
                    J = frozenset(self.generated_subgroup(H | C).members)
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
            frontier = nxt
        return sorted((Subgroup(self, m) for m in found), key=lambda s: (len(s.members), sorted(s.members)))

    def conjugate_subgroup(self, g: int, H: "Subgroup") -> "Subgroup":
        return Subgroup(self, frozenset(self.conj(g, h) for h in H.members))

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: frozenset

    def __post_init__(self):
        G = self.parent
        if G.identity not in self.members:
            raise GroupError("subgroup must contain the identity")
        for a in self.members:
            if G.inv(a) not in self.members:
                raise GroupError("subgroup not closed under inverse")
            for b in self.members:
                if G.mul(a, b) not in self.members:
                    raise GroupError("subgroup not closed under multiplication")

    def __len__(self):
        return len(self.members)

    def __contains__(self, a):
        return a in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.members == self.members

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def as_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """Standalone group on the members plus the inclusion as a list of parent indices."""
        elems = tuple(sorted(self.members))
        pos = {a: i for i, a in enumerate(elems)}
        G = self.parent
        table = tuple(tuple(pos[G.mul(a, b)] for b in elems) for a in elems)
        return FiniteGroup(tuple(G.labels[a] for a in elems), table, pos[G.identity]), elems


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with pairs ordered lexicographically; index of (g, h) is g*|H| + h."""
    m = H.order
    labels = tuple((a, b) for a in G.labels for b in H.labels)
    table = tuple(
        tuple(G.mul(g1, g2) * m + H.mul(h1, h2) for g2 in G.elements for h2 in H.elements)
        for g1 in G.elements for h1 in H.elements
    )
    return FiniteGroup(labels, table, G.identity * m + H.identity)


def product_index(G: FiniteGroup, H: FiniteGroup, g: int, h: int) -> int:
    return g * H.order + h


def projections(G: FiniteGroup, H: FiniteGroup) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Homomorphisms G x H -> G and G x H -> H as index lists."""
    m = H.order
    p1 = tuple(k // m for k in range(G.order * m))
    p2 = tuple(k % m for k in range(G.order * m))
    return p1, p2


def is_homomorphism(phi: Sequence[int], G: FiniteGroup, H: FiniteGroup) -> bool:
    if len(phi) != G.order:
        return False
    return all(phi[G.mul(a, b)] == H.mul(phi[a], phi[b]) for a in G.elements for b in G.elements)
