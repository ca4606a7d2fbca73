"""Space files and the builtin catalog.

A space file is a JSON object::

    {"points": [ids], "covers": [[lower, upper], ...],
     "group": {"elements": [...], "table": [[...]], "identity": id},
     "action": {element: {point: point}}, "subsets": {name: [ids]}}

``group``, ``action`` and ``subsets`` are optional.  Ids are strings or
integers; action keys are matched against ``str(id)``.  The order is the
reflexive-transitive closure of ``covers``.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field

from . import spaces
from .group import FiniteGroup, GroupError
from .gspace import FiniteGSpace, SpaceError, bits, mask_of, product


class SpaceFileError(ValueError):
    """A malformed space file; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{line}:{column}: {message}" if line else message)
        self.message, self.line, self.column = message, line, column


@dataclass
class LoadedSpace:
    space: FiniteGSpace
    subsets: dict = field(default_factory=dict)   # name -> point mask
    metadata: dict = field(default_factory=dict)


def label_id(label) -> str | int:
    """Canonical file id of a point or group label."""
    if isinstance(label, (str, int)) and not isinstance(label, bool):
        return label
    return json.dumps(_plain(label), separators=(",", ":"))


def _plain(v):
    if isinstance(v, tuple):
        return [_plain(x) for x in v]
    return v


def _locate(text: str, token) -> tuple[int, int]:
    """Best-effort position of a JSON token in the source (first occurrence)."""
    needle = json.dumps(token)
    i = text.find(needle)
    if i < 0:
        return 0, 0
    line = text.count("\n", 0, i) + 1
    return line, i - (text.rfind("\n", 0, i) + 1) + 1


def parse_space(text: str, name: str = "") -> LoadedSpace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpaceFileError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise SpaceFileError("top level must be an object", 1, 1)

    def fail(msg, token=None):
        line, col = _locate(text, token) if token is not None else (0, 0)
        raise SpaceFileError(msg, line, col)

    unknown = set(doc) - {"name", "points", "covers", "group", "action", "subsets", "metadata"}
    if unknown:
        fail(f"unknown field {sorted(unknown)[0]!r}", sorted(unknown)[0])
    points = doc.get("points")
    if not isinstance(points, list) or not all(isinstance(p, (str, int)) for p in points):
        fail("'points' must be a list of string or integer ids", "points")
    by_key = {str(p): p for p in points}
    if len(by_key) != len(points):
        fail("duplicate point ids", "points")

    def pt(p, where):
        if str(p) not in by_key:
            fail(f"undefined point {p!r} in {where}", p)
        return by_key[str(p)]

    covers = doc.get("covers", [])
    if not isinstance(covers, list):
        fail("'covers' must be a list of pairs", "covers")
    rel = []
    for c in covers:
        if not isinstance(c, list) or len(c) != 2:
            fail("each cover must be a [lower, upper] pair", "covers")
        rel.append((pt(c[0], "covers"), pt(c[1], "covers")))

    group = None
    gdoc = doc.get("group")
    if gdoc is not None:
        try:
            elems = gdoc["elements"]
            gkey = {str(e): e for e in elems}
            table = [[gkey[str(v)] for v in row] for row in gdoc["table"]]
            group = FiniteGroup.from_table(elems, table, gkey[str(gdoc["identity"])])
        except (KeyError, TypeError) as exc:
            fail(f"malformed group: {exc}", "group")
        except GroupError as exc:
            fail(f"invalid group: {exc}", "group")
    action = None
    adoc = doc.get("action")
    if adoc is not None:
        if group is None:
            fail("'action' given without 'group'", "action")
        gkey = {str(e): e for e in group.labels}
        action = {}
        for g, perm in adoc.items():
            if g not in gkey:
                fail(f"undefined group element {g!r} in action", g)
            if not isinstance(perm, dict):
                fail("each action entry must map points to points", g)
            action[gkey[g]] = {pt(a, "action"): pt(b, "action") for a, b in perm.items()}
        for g in group.labels:
            if g != group.labels[group.identity] and g not in action:
                action[g] = {}
    try:
        X = FiniteGSpace.from_relations(points, rel, group, action, name=doc.get("name", name))
    except SpaceError as exc:
        fail(f"invalid space: {exc}", "points")
    subsets = {}
    for sname, members in (doc.get("subsets") or {}).items():
        if not isinstance(members, list):
            fail(f"subset {sname!r} must be a list", sname)
        subsets[sname] = mask_of(X.index(pt(p, f"subset {sname!r}")) for p in members)
    return LoadedSpace(X, subsets, doc.get("metadata", {}))


def load_space(path: str) -> LoadedSpace:
    with open(path, encoding="utf-8") as fh:
        return parse_space(fh.read(), name=os.path.splitext(os.path.basename(path))[0])


def serialize_space(X: FiniteGSpace, subsets: dict | None = None) -> dict:
    G = X.group
    ids = [label_id(p) for p in X.labels]
    gids = [label_id(g) for g in G.labels]
    doc = {
        "name": X.name,
        "points": ids,
        "covers": [[ids[a], ids[b]] for a, b in X.covers()],
        "group": {"elements": gids,
                  "table": [[gids[G.mul(a, b)] for b in G.elements] for a in G.elements],
                  "identity": gids[G.identity]},
        "action": {str(gids[g]): {str(ids[x]): ids[X.act[g][x]] for x in range(X.n) if X.act[g][x] != x}
                   for g in G.elements if g != G.identity},
    }
    if subsets:
        doc["subsets"] = {k: [ids[x] for x in bits(m)] for k, m in subsets.items()}
    return doc


def same_space(X: FiniteGSpace, Y: FiniteGSpace) -> bool:
    """Equality up to relabelling that keeps point and group element positions."""
    return X.n == Y.n and X.down == Y.down and X.act == Y.act and X.group.table == Y.group.table \
        and X.group.identity == Y.group.identity


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` in one rename, so readers never see a partial file."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --------------------------------------------------------------------------
# catalog


@dataclass
class CatalogEntry:
    id: str
    build: object                   # () -> FiniteGSpace
    note: str = ""
    subsets: object = None          # (X) -> {name: mask}
    _cache: list = field(default_factory=list, repr=False)

    def load(self) -> LoadedSpace:
        if not self._cache:
            X = self.build()
            X.name = self.id
            named = default_subsets(X)
            if self.subsets:
                named.update(self.subsets(X))
            self._cache.append(LoadedSpace(X, named, {"note": self.note}))
        return self._cache[0]

    @property
    def space(self) -> FiniteGSpace:
        return self.load().space


def default_subsets(X: FiniteGSpace) -> dict:
    """Named invariant subsets every instance carries: the whole space and the first orbit."""
    out = {"all": X.full}
    if X.n:
        out["orbit0"] = X.orbits.masks[0]
    fixed = X.fixed_mask(X.group.elements)
    if fixed and fixed != X.full:
        out["fixed"] = fixed
    return out


def _c4_beat() -> FiniteGSpace:
    return spaces.with_beat_point(spaces.circle(4), 1)


def _z2_pair() -> FiniteGSpace:
    """Two discrete Z/2 self-actions as a Z/2 x Z/2 space."""
    X = spaces.group_on_itself(FiniteGroup.cyclic(2))
    return product(X, X, "product")


def _reflection_cone() -> FiniteGSpace:
    """C4 with the reflection, plus a fixed top point: an equivariantly contractible space."""
    X = spaces.c4_reflection()
    rel = [(X.labels[a], X.labels[b]) for a, b in X.covers()] + [(1, "top"), (3, "top")]
    return FiniteGSpace.from_relations(list(X.labels) + ["top"], rel, X.group, {1: {1: 3, 3: 1}})


def _klein_cosets() -> FiniteGSpace:
    """Z/2 x Z/2 acting on the two cosets of its diagonal subgroup."""
    G = spaces.klein()
    swap = {0: 1, 1: 0}
    return spaces.discrete(2, G, {(0, 1): swap, (1, 0): swap, (1, 1): {}})


def _c4_min_max(X: FiniteGSpace) -> dict:
    return {"minima": mask_of(X.minimal_points()), "maxima": mask_of(X.maximal_points())}


def _build_catalog() -> dict:
    z2, z3, z4 = (FiniteGroup.cyclic(k) for k in (2, 3, 4))
    entries = [
        CatalogEntry("point", lambda: spaces.point(), "one point"),
        CatalogEntry("chain2", lambda: spaces.chain(2), "two-point chain (contractible)"),
        CatalogEntry("chain3", lambda: spaces.chain(3), "three-point chain"),
        CatalogEntry("discrete2", lambda: spaces.discrete(2), "two points, no relations",
                     lambda X: {"a": 1}),
        CatalogEntry("discrete3", lambda: spaces.discrete(3), "three points, no relations"),
        CatalogEntry("c4", lambda: spaces.circle(4), "minimal finite circle", _c4_min_max),
        CatalogEntry("c6", lambda: spaces.circle(6), "six-point circle"),
        CatalogEntry("c8", lambda: spaces.circle(8), "eight-point circle"),
        CatalogEntry("s2", lambda: spaces.sphere(2), "minimal six-point 2-sphere"),
        CatalogEntry("c4+beat", _c4_beat, "C4 with one beat point attached"),
        CatalogEntry("c4-reflection", lambda: spaces.c4_reflection(), "C4, Z/2 reflection with two fixed points",
                     _c4_min_max),
        CatalogEntry("c4-reflection-cone", _reflection_cone, "cone on the C4 reflection, fixed apex"),
        CatalogEntry("c4-antipodal", lambda: spaces.circle_antipodal(4), "C4, Z/2 rotation by half a turn"),
        CatalogEntry("c8-antipodal", lambda: spaces.circle_antipodal(8), "C8, free antipodal Z/2 (covering of C4)"),
        CatalogEntry("c8-rot2", lambda: spaces.circle_rotation(8, 2), "C8, Z/4 rotation, free but not a covering"),
        CatalogEntry("s2-reflection", lambda: spaces.sphere(2, "reflection"), "S2 model, Z/2 swapping the poles"),
        CatalogEntry("s2-antipodal", lambda: spaces.sphere(2, "antipodal"), "S2 model, free antipodal Z/2"),
        CatalogEntry("z2-self", lambda: spaces.group_on_itself(z2), "Z/2 acting on itself"),
        CatalogEntry("z3-self", lambda: spaces.group_on_itself(z3), "Z/3 acting on itself"),
        CatalogEntry("z4-self", lambda: spaces.group_on_itself(z4), "Z/4 acting on itself"),
        CatalogEntry("klein-self", lambda: spaces.group_on_itself(spaces.klein()), "Z/2 x Z/2 acting on itself"),
        CatalogEntry("klein-cosets", _klein_cosets, "Z/2 x Z/2 on the cosets of its diagonal"),
        CatalogEntry("z2-self-pair", _z2_pair, "product of two Z/2 self-actions under Z/2 x Z/2"),
        CatalogEntry("c4xpoint", lambda: product(spaces.circle(4), spaces.point()), "C4 times a point"),
        CatalogEntry("chain2xc4", lambda: product(spaces.chain(2), spaces.circle(4)), "contractible times C4"),
    ]
    return {e.id: e for e in entries}


CATALOG = _build_catalog()


def catalog_entry(ident: str) -> CatalogEntry:
    try:
        return CATALOG[ident]
    except KeyError:
        raise KeyError(f"unknown catalog id {ident!r}; see 'catalog list'") from None


__all__ = ["CATALOG", "CatalogEntry", "LoadedSpace", "SpaceFileError", "catalog_entry", "default_subsets",
           "load_space", "parse_space", "same_space", "serialize_space", "write_atomic"]
