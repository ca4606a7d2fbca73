"""Equivariant homotopy of maps between finite G-spaces.

Two equivariant maps are homotopic iff they are joined by a fence
``f0 <= f1 >= f2 <= ...`` of equivariant order-preserving maps.  If
``f <= g`` the two are also joined by a chain in which consecutive maps
differ on a single orbit (change ``f`` to ``g`` on the orbit of a maximal
point where they differ), so the connected components of the graph
"differ on one orbit and are pointwise comparable" are exactly the homotopy
classes.  All searches below walk that graph breadth-first.
"""
from __future__ import annotations

import heapq
from collections import deque

import numpy as np
from dataclasses import dataclass, field

from .gspace import FiniteGSpace, MarkedSubset, SubSpace, bits, mask_of

DEFAULT_BUDGET = 10 ** 7


class SearchBudgetExceeded(RuntimeError):
    """The map search visited more maps than allowed; the answer is unknown."""


@dataclass(frozen=True)
class EquivariantMap:
    source: FiniteGSpace
    target: FiniteGSpace
    values: tuple
    hom: tuple  # source group index -> target group index

    def __call__(self, x: int) -> int:
        return self.values[x]

    def is_order_preserving(self) -> bool:
        S, T, v = self.source, self.target, self.values
        return all(T.leq(v[y], v[x]) for x in range(S.n) for y in S.lower_covers[x])

    def is_equivariant(self) -> bool:
        S, T, v, phi = self.source, self.target, self.values, self.hom
        return all(v[S.act[g][x]] == T.act[phi[g]][v[x]] for g in S.group.elements for x in range(S.n))

    def is_valid(self) -> bool:
        return len(self.values) == self.source.n and self.is_order_preserving() and self.is_equivariant()

    def image(self) -> int:
        return mask_of(self.values)

    def compose(self, other: "EquivariantMap") -> "EquivariantMap":
        """self after other."""
        return EquivariantMap(other.source, self.target, tuple(self.values[v] for v in other.values),
                              tuple(self.hom[h] for h in other.hom))


def identity_map(X: FiniteGSpace) -> EquivariantMap:
    return EquivariantMap(X, X, tuple(range(X.n)), tuple(X.group.elements))


def inclusion_map(U: SubSpace) -> EquivariantMap:
    return EquivariantMap(U, U.parent, U.parent_index, U.group_map)


def constant_map(S: FiniteGSpace, T: FiniteGSpace, y: int, hom: tuple | None = None) -> EquivariantMap:
    hom = tuple(S.group.elements) if hom is None else hom
    return EquivariantMap(S, T, (y,) * S.n, hom)


@dataclass
class FenceHomotopy:
    """maps[i] relations[i] maps[i+1] holds pointwise, relations in {'<=', '>='}."""
    source: FiniteGSpace
    target: FiniteGSpace
    hom: tuple
    maps: list = field(default_factory=list)
    relations: list = field(default_factory=list)

    @property
    def start(self) -> EquivariantMap:
        return EquivariantMap(self.source, self.target, self.maps[0], self.hom)

    @property
    def end(self) -> EquivariantMap:
        return EquivariantMap(self.source, self.target, self.maps[-1], self.hom)

    def __len__(self):
        return len(self.relations)

    def reversed(self) -> "FenceHomotopy":
        flip = {"<=": ">=", ">=": "<="}
        return FenceHomotopy(self.source, self.target, self.hom, self.maps[::-1],
                             [flip[r] for r in self.relations[::-1]])

    def then(self, other: "FenceHomotopy") -> "FenceHomotopy":
        if self.maps[-1] != other.maps[0]:
            raise ValueError("fences do not meet")
        return FenceHomotopy(self.source, self.target, self.hom, self.maps + other.maps[1:],
                             self.relations + other.relations)

    def is_valid(self) -> bool:
        T = self.target
        for f in self.maps:
            if not EquivariantMap(self.source, T, f, self.hom).is_valid():
                return False
        for f, r, g in zip(self.maps, self.relations, self.maps[1:]):
            lo, hi = (f, g) if r == "<=" else (g, f)
            if r not in ("<=", ">=") or not all(T.leq(a, b) for a, b in zip(lo, hi)):
                return False
        return len(self.maps) == len(self.relations) + 1


class MapGraph:
    """Equivariant order-preserving maps S -> T (via ``hom``) stored by their values on orbit representatives."""

    def __init__(self, S: FiniteGSpace, T: FiniteGSpace, hom: tuple):
        self.S, self.T, self.hom = S, T, tuple(hom)
        od = S.orbits
        self.k = len(od)
        Tact = T.act
        # point z = g . rep(j)  =>  f(z) = hom(g) . f(rep j)
        self.expand = tuple((od.orbit_of[z], Tact[self.hom[od.to_rep[z]]]) for z in range(S.n))
        lower, upper, fix = [], [], []
        for j, r in enumerate(od.reps):
            lower.append(tuple(self.expand[l] for l in S.lower_covers[r]))
            upper.append(tuple(self.expand[u] for u in S.upper_covers[r]))
            stab = [self.hom[g] for g in S.group.elements if S.act[g][r] == r]
            fix.append(T.fixed_mask(stab))
        self.lower, self.upper, self.fix = tuple(lower), tuple(upper), tuple(fix)

    def reps_of(self, values) -> tuple:
        return tuple(values[r] for r in self.S.orbits.reps)

    def full(self, state) -> tuple:
        return tuple(perm[state[j]] for j, perm in self.expand)

    def neighbours(self, state):
        T_up, T_down = self.T.up, self.T.down
        for j in range(self.k):
            y = state[j]
            cand = (T_up[y] | T_down[y]) & self.fix[j] & ~(1 << y)
            if not cand:
                continue
            for jj, perm in self.lower[j]:
                cand &= T_up[perm[state[jj]]]
            for jj, perm in self.upper[j]:
                cand &= T_down[perm[state[jj]]]
            for y2 in bits(cand):
                yield state[:j] + (y2,) + state[j + 1:]


class ComponentSearch:
    """Incremental breadth-first exploration of one homotopy class."""

    def __init__(self, graph: MapGraph, start: tuple, counter: list, budget: int):
        self.graph = graph
        self.parent = {start: None}
        self.queue = deque([start])
        self.counter, self.budget = counter, budget

    @property
    def done(self) -> bool:
        return not self.queue

    def step(self) -> list:
        state = self.queue.popleft()
        new = []
        for nb in self.graph.neighbours(state):
            if nb not in self.parent:
                self.parent[nb] = state
                self.queue.append(nb)
                new.append(nb)
        self.counter[0] += len(new)
        if self.counter[0] > self.budget:
            raise SearchBudgetExceeded(f"visited more than {self.budget} maps")
        return new

    def path_to(self, state) -> list:
        out = []
        while state is not None:
            out.append(state)
            state = self.parent[state]
        return out[::-1]


def _relations(T: FiniteGSpace, full_maps: list) -> list:
    rels = []
    for f, g in zip(full_maps, full_maps[1:]):
        rels.append("<=" if all(T.leq(a, b) for a, b in zip(f, g)) else ">=")
    return rels


@dataclass
class CompressionCertificate:
    open_set: MarkedSubset
    target_subset: MarkedSubset
    fence: FenceHomotopy


def _chains(S: FiniteGSpace, mask: int | None = None) -> list[list[tuple]]:
    """Strictly increasing chains of S (inside ``mask``) by length: result[k] holds the k-simplices."""
    mask = (1 << S.n) - 1 if mask is None else mask
    out = [[(x,) for x in bits(mask)]]
    while out[-1]:
        nxt = []
        for ch in out[-1]:
            top = ch[-1]
            for y in bits(S.up[top] & mask & ~(1 << top)):
                nxt.append(ch + (y,))
        out.append(nxt)
    return out[:-1]


def _boundary(simplices: list[tuple], faces: dict) -> np.ndarray:
    B = np.zeros((len(faces), len(simplices)))
    for j, ch in enumerate(simplices):
        for i in range(len(ch)):
            B[faces[ch[:i] + ch[i + 1:]], j] += (-1.0) ** i
    return B


def _null_space(M: np.ndarray) -> np.ndarray:
    if M.size == 0:
        return np.eye(M.shape[1])
    _, sv, vt = np.linalg.svd(M, full_matrices=True)
    rank = int((sv > 1e-9).sum())
    return vt[rank:].T


def higher_homology_vanishes(Y: FiniteGSpace, mask: int) -> bool:
    """True if the subposet on ``mask`` has zero rational homology in every degree >= 1."""
    chains = _chains(Y, mask)
    index = [{ch: i for i, ch in enumerate(level)} for level in chains]
    ranks = [0] + [np.linalg.matrix_rank(_boundary(chains[k], index[k - 1])) if chains[k] else 0
                   for k in range(1, len(chains))] + [0]
    return all(len(chains[k]) - ranks[k] - ranks[k + 1] == 0 for k in range(1, len(chains)))


class RationalHomology:
    """Rational homology of the order complex of a target poset, as a homotopy invariant.

    Homotopic maps induce the same maps on homology, so comparing the images
    of all cycles of the source proves two maps non-homotopic without any
    search.  It is only a rejection test: equal images decide nothing.
    """

    def __init__(self, Y: FiniteGSpace):
        chains = _chains(Y)
        self.index = [{ch: i for i, ch in enumerate(level)} for level in chains]
        self.dual = []
        for k in range(len(chains)):
            if k + 1 < len(chains):
                B = _boundary(chains[k + 1], self.index[k])
                # c is a boundary iff it is orthogonal to ker(B^T)
                self.dual.append(_null_space(B.T).T)
            else:
                self.dual.append(np.eye(len(chains[k])))

    def image(self, k: int, simplices: list[tuple], cycle: np.ndarray, values: tuple) -> np.ndarray:
        if k >= len(self.index):
            return np.zeros(0)
        vec = np.zeros(len(self.index[k]))
        idx = self.index[k]
        for coeff, ch in zip(cycle, simplices):
            if abs(coeff) < 1e-12:
                continue
            im = tuple(values[x] for x in ch)
            if len(set(im)) == len(im):
                vec[idx[im]] += coeff
        return self.dual[k] @ vec


def homology_differs(S: FiniteGSpace, H: RationalHomology, f: tuple, g: tuple) -> bool:
    """True if f and g (maps S -> target of H) differ on rational homology in some degree >= 1."""
    chains = _chains(S)
    index = [{ch: i for i, ch in enumerate(level)} for level in chains]
    for k in range(1, len(chains)):
        Z = _null_space(_boundary(chains[k], index[k - 1]))
        for j in range(Z.shape[1]):
            diff = H.image(k, chains[k], Z[:, j], f) - H.image(k, chains[k], Z[:, j], g)
            if diff.size and np.abs(diff).max() > 1e-6:
                return True
    return False


class HomotopyEngine:
    """Fence searches with a shared visit budget and a compressibility memo."""

    def __init__(self, budget: int = DEFAULT_BUDGET):
        self.budget = budget
        self.memo: dict = {}
        self.visited = 0
        self.homology_rejections = 0
        self._homology: dict = {}

    def _homology_differs(self, S: FiniteGSpace, Y: FiniteGSpace, f: tuple, g: tuple) -> bool:
        H = self._homology.get(id(Y))
        if H is None:
            H = self._homology[id(Y)] = RationalHomology(Y)
        return homology_differs(S, H, f, g)

    # plain homotopy ---------------------------------------------------------

    def homotopic(self, f: EquivariantMap, g: EquivariantMap) -> FenceHomotopy | None:
        if f.source is not g.source or f.target is not g.target or f.hom != g.hom:
            raise ValueError("maps must share source, target and group homomorphism")
        graph = MapGraph(f.source, f.target, f.hom)
        start, goal = graph.reps_of(f.values), graph.reps_of(g.values)
        search = ComponentSearch(graph, start, [0], self.budget)
        while goal not in search.parent and not search.done:
            search.step()
        self.visited += len(search.parent)
        if goal not in search.parent:
            return None
        full = [graph.full(s) for s in search.path_to(goal)]
        return FenceHomotopy(f.source, f.target, f.hom, full, _relations(f.target, full))

    def component(self, f: EquivariantMap) -> list[EquivariantMap]:
        graph = MapGraph(f.source, f.target, f.hom)
        search = ComponentSearch(graph, graph.reps_of(f.values), [0], self.budget)
        while not search.done:
            search.step()
        self.visited += len(search.parent)
        return [EquivariantMap(f.source, f.target, graph.full(s), f.hom) for s in search.parent]

    # compressibility ----------------------------------------------------------

    def compressible(self, U: int, A: MarkedSubset) -> CompressionCertificate | None:
        """Certificate that the invariant open set ``U`` of ``A.space`` is compressible into ``A``, or None.

        Raises SearchBudgetExceeded when the answer cannot be decided.
        """
        Z = A.space
        key = (id(Z), A.members, U)
        if key in self.memo:
            res = self.memo[key]
            if isinstance(res, SearchBudgetExceeded):
                raise res
            return res
        try:
            res = self._compressible(U, A)
        except SearchBudgetExceeded as exc:
            self.memo[key] = exc
            raise
        self.memo[key] = res
        return res

    def _compressible(self, U: int, A: MarkedSubset):
        Z = A.space
        if not Z.is_down_set(U) or not Z.is_invariant(U):
            raise ValueError("U must be an invariant open (down-)set")
        S = Z.subspace(U)
        hom = S.group_map
        if U & ~A.members == 0:
            fence = FenceHomotopy(S, Z, hom, [S.parent_index], [])
            return CompressionCertificate(MarkedSubset(Z, U, "U"), A, fence)
        if not A.members:
            return None
        # U deformation retracts onto its core K; U is compressible iff K is
        K, steps = core_steps(Z, U)
        core_path = self._core_path(K, A)
        if core_path is None:
            return None
        pts = S.parent_index
        maps = [tuple(st[z] for z in pts) for st in steps]
        kpos = {z: i for i, z in enumerate(bits(K))}
        last = steps[-1]
        maps += [tuple(h[kpos[last[z]]] for z in pts) for h in core_path[1:]]
        return CompressionCertificate(MarkedSubset(Z, U, "U"), A,
                                      FenceHomotopy(S, Z, hom, maps, _relations(Z, maps)))

    def _core_path(self, K: int, A: MarkedSubset):
        key = ("core", id(A.space), A.members, K)
        if key in self.memo:
            return self.memo[key]
        S = A.space.subspace(K)
        if K & ~A.members == 0:
            path = [S.parent_index]
        elif A.space.product_info is not None and A.pair_key is not None:
            path = self._factored(S, A)
        else:
            path = self._direct(S, A)
        self.memo[key] = path
        return path

    def _direct(self, S: SubSpace, A: MarkedSubset):
        Z = A.space
        start_full = S.parent_index
        if self._outside_by_homology(S, Z, A.members, start_full):
            self.homology_rejections += 1
            return None
        graph = MapGraph(S, Z, S.group_map)
        path = self._goal_first(graph, graph.reps_of(start_full), A.members)
        return None if path is None else [graph.full(s) for s in path]

    def _outside_by_homology(self, S: SubSpace, Y: FiniteGSpace, mask: int, f: tuple) -> bool:
        """True if f: S -> Y provably cannot be deformed into ``mask``.

        A map into a subposet without higher homology is zero on homology in
        degrees >= 1, and so is anything homotopic to it.
        """
        key = ("acyclic", id(Y), mask)
        flat = self._homology.get(key)
        if flat is None:
            flat = self._homology[key] = higher_homology_vanishes(Y, mask)
        return flat and self._homology_differs(S, Y, tuple(f), (f[0],) * len(f))

    def _goal_first(self, graph: MapGraph, start: tuple, mask: int):
        """Exhaustive search of the class of ``start`` for a map into ``mask``, fewest stray values first."""
        def stray(st):
            return sum(not mask >> y & 1 for y in st)

        parent = {start: None}
        heap = [(stray(start), 0, start)]
        tick = 0
        try:
            while heap:
                h, _, st = heapq.heappop(heap)
                if h == 0:
                    out = []
                    while st is not None:
                        out.append(st)
                        st = parent[st]
                    return out[::-1]
                for nb in graph.neighbours(st):
                    if nb not in parent:
                        parent[nb] = st
                        tick += 1
                        heapq.heappush(heap, (stray(nb), tick, nb))
                if len(parent) > self.budget:
                    raise SearchBudgetExceeded(f"visited more than {self.budget} maps")
        finally:
            self.visited += len(parent)
        return None

    def _best_first(self, graph: MapGraph, start: tuple, goal: tuple):
        """Exhaustive search of the class of ``start`` for ``goal``, nearest (Hamming) states first."""
        parent = {start: None}
        heap = [(0, 0, start)]
        tick = 0
        try:
            while heap:
                _, _, st = heapq.heappop(heap)
                if st == goal:
                    out = []
                    while st is not None:
                        out.append(st)
                        st = parent[st]
                    return out[::-1]
                for nb in graph.neighbours(st):
                    if nb not in parent:
                        parent[nb] = st
                        tick += 1
                        dist = sum(a != b for a, b in zip(nb, goal))
                        heapq.heappush(heap, (dist, tick, nb))
                if len(parent) > self.budget:
                    raise SearchBudgetExceeded(f"visited more than {self.budget} maps")
        finally:
            self.visited += len(parent)
        return None

    def _factored(self, S: SubSpace, A: MarkedSubset):
        """Search the two coordinate maps separately.

        For Z = X x Y the homotopy class of a map into Z is the product of the
        classes of its coordinates, and membership in A only depends on the
        pair of keys, so it suffices to find coordinate maps with equal key
        signatures.
        """
        Z = A.space
        info = Z.product_info
        key_l, key_r = A.pair_key
        hom_l = tuple(info.hom_left[g] for g in S.group_map)
        hom_r = tuple(info.hom_right[g] for g in S.group_map)
        g_l = MapGraph(S, info.left, hom_l)
        g_r = MapGraph(S, info.right, hom_r)
        split = [info.split(z) for z in S.parent_index]
        injective = key_l == key_r and None not in key_l and len(set(key_l)) == len(key_l)
        if injective and info.left is info.right:
            # a match means p1 ~ p2 on S; different images in homology rule that out
            f, g = tuple(a for a, _ in split), tuple(b for _, b in split)
            if self._homology_differs(S, info.left, f, g):
                self.homology_rejections += 1
                return None
            graph = MapGraph(S, info.left, hom_l)
            path = self._best_first(graph, graph.reps_of(f), graph.reps_of(g))
            if path is None:
                return None
            return [tuple(info.join(a, b) for a, b in zip(graph.full(st), g)) for st in path]
        if all(v in (0, None) for v in key_l + key_r):
            # a rectangle: each coordinate must deform into its own factor
            sides = ((g_l, key_l, tuple(a for a, _ in split)), (g_r, key_r, tuple(b for _, b in split)))
            masks = [sum(1 << y for y, v in enumerate(key) if v is not None) for _, key, _ in sides]
            for (graph, _, f), mask in zip(sides, masks):
                if self._outside_by_homology(S, graph.T, mask, f):
                    self.homology_rejections += 1
                    return None
            paths = []
            for (graph, _, f), mask in zip(sides, masks):
                path = self._goal_first(graph, graph.reps_of(f), mask)
                if path is None:
                    return None
                paths.append([graph.full(s) for s in path])
            return self._join_paths(info, *paths)
        s_l = ComponentSearch(g_l, g_l.reps_of([a for a, _ in split]), [0], self.budget)
        s_r = ComponentSearch(g_r, g_r.reps_of([b for _, b in split]), s_l.counter, self.budget)
        sigs = ({}, {})

        def sig(key, st):
            out = tuple(key[y] for y in st)
            return None if None in out else out

        def register(side, states, key):
            for st in states:
                s = sig(key, st)
                if s is None:
                    continue
                if s in sigs[1 - side]:
                    return (st, sigs[1 - side][s]) if side == 0 else (sigs[1 - side][s], st)
                sigs[side].setdefault(s, st)
            return None

        hit = register(0, [next(iter(s_l.parent))], key_l) or register(1, [next(iter(s_r.parent))], key_r)
        # with an injective common key a match means equal maps, so the two
        # components are equal or disjoint and one exhausted side settles it
        try:
            while hit is None and not (s_l.done and s_r.done):
                if injective and (s_l.done or s_r.done):
                    break
                if not s_l.done:
                    hit = register(0, s_l.step(), key_l)
                if hit is None and not s_r.done:
                    hit = register(1, s_r.step(), key_r)
        finally:
            self.visited += len(s_l.parent) + len(s_r.parent)
        if hit is None:
            return None
        end_l, end_r = hit
        path_l = [g_l.full(s) for s in s_l.path_to(end_l)]
        path_r = [g_r.full(s) for s in s_r.path_to(end_r)]
        return self._join_paths(info, path_l, path_r)

    @staticmethod
    def _join_paths(info, path_l: list, path_r: list) -> list:
        """Move the left coordinate first, then the right one."""
        join = info.join
        maps = [tuple(join(a, b) for a, b in zip(pl, path_r[0])) for pl in path_l]
        maps += [tuple(join(a, b) for a, b in zip(path_l[-1], pr)) for pr in path_r[1:]]
        return maps


_default_engine = HomotopyEngine()


def homotopic(f: EquivariantMap, g: EquivariantMap, engine: HomotopyEngine | None = None):
    return (engine or _default_engine).homotopic(f, g)


def compressible(U: int, A: MarkedSubset, engine: HomotopyEngine | None = None):
    return (engine or _default_engine).compressible(U, A)


# --------------------------------------------------------------------------
# equivariant cores


@dataclass
class CoreResult:
    core: SubSpace
    inclusion: EquivariantMap
    retraction: EquivariantMap
    steps: list  # successive retractions X -> X (index tuples), first is the identity


def _beat_target(X: FiniteGSpace, mask: int, x: int):
    """The point x retracts onto if x is a beat point of the subposet on mask, else None."""
    below = X.down[x] & mask & ~(1 << x)
    if below:
        tops = [y for y in bits(below) if not (X.up[y] & below & ~(1 << y))]
        if len(tops) == 1:
            return tops[0]
    above = X.up[x] & mask & ~(1 << x)
    if above:
        bots = [y for y in bits(above) if not (X.down[y] & above & ~(1 << y))]
        if len(bots) == 1:
            return bots[0]
    return None


def core_steps(X: FiniteGSpace, mask: int | None = None, preserve: tuple = ()) -> tuple[int, list]:
    """Remove orbits of beat points from the invariant subset ``mask`` until none is left.

    Returns the core mask and the successive retractions as index tuples over
    all of X (identity off ``mask``).  Consecutive retractions are pointwise
    comparable, so together they form a fence from the identity.  An orbit is
    only removed if the retraction maps every subset in ``preserve`` into itself.
    """
    mask = X.full if mask is None else mask
    current = list(range(X.n))
    steps = [tuple(current)]
    changed = True
    while changed:
        changed = False
        for x in bits(mask):
            y = _beat_target(X, mask, x)
            if y is None:
                continue
            moves = {X.act[g][x]: X.act[g][y] for g in X.group.elements}
            if any((A >> a & 1) and not (A >> b & 1) for A in preserve for a, b in moves.items()):
                continue
            for a in moves:
                mask &= ~(1 << a)
            current = [moves.get(v, v) for v in current]
            steps.append(tuple(current))
            changed = True
            break
    return mask, steps


def equivariant_core(X: FiniteGSpace, preserve: tuple = ()) -> CoreResult:
    """Equivariant core: the inclusion and retraction G-dominate each other."""
    mask, steps = core_steps(X, X.full, preserve)
    core = X.subspace(mask, name=f"core({X.name})")
    pos = {p: i for i, p in enumerate(core.parent_index)}
    ident_hom = tuple(X.group.elements)
    inc = EquivariantMap(core, X, core.parent_index, ident_hom)
    ret = EquivariantMap(X, core, tuple(pos[v] for v in steps[-1]), ident_hom)
    return CoreResult(core, inc, ret, steps)
