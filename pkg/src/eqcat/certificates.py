"""Certificate files and an independent checker.

A certificate is a JSON document carrying the ambient space by indices, the
claimed value and the evidence for it.  ``check`` replays that evidence with
its own small poset routines; it shares no code with the searches.  An
integrity digest over the canonical JSON makes any edit of a stored
certificate detectable even where the edited field is not otherwise
load-bearing (labels, stats).
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any

from .category import CoverCertificate, WhiteheadCertificate
from .gspace import FiniteGSpace, bits
from .homotopy import CompressionCertificate

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = "ok"

    def __bool__(self):
        return self.ok


# --------------------------------------------------------------------------
# serialization


def space_record(X: FiniteGSpace) -> dict:
    G = X.group
    return {
        "name": X.name,
        "labels": [_plain(p) for p in X.labels],
        "n": X.n,
        "covers": [list(c) for c in X.covers()],
        "group": {"order": G.order, "identity": G.identity,
                  "table": [[G.mul(a, b) for b in G.elements] for a in G.elements]},
        "action": [list(row) for row in X.act],
    }


def _plain(v):
    if isinstance(v, tuple):
        return [_plain(x) for x in v]
    return v if isinstance(v, (str, int, float, bool)) or v is None else repr(v)


def _points(mask: int) -> list[int]:
    return list(bits(mask))


def _fence_record(cert: CompressionCertificate, targets: list[int]) -> dict:
    return {
        "open": _points(cert.open_set.members),
        "target": targets.index(cert.target_subset.members),
        "fence": [list(f) for f in cert.fence.maps],
        "relations": list(cert.fence.relations),
    }


def seal(doc: dict) -> dict:
    body = {k: v for k, v in doc.items() if k != "integrity"}
    out = dict(body)
    out["integrity"] = digest(body)
    return out


def digest(obj: Any) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def cover_to_json(cert: CoverCertificate) -> dict:
    q = cert.query
    targets = [T.members for T in q.targets]
    value = cert.value
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "cover",
        "invariant": q.label,
        "space": space_record(q.space),
        "targets": [_points(t) for t in targets],
        "target_names": [T.name for T in q.targets],
        "bound": q.search_bound,
        "value": value,
        "sets": [_fence_record(c, targets) for c in cert.sets],
        "family": [_points(m) for m in cert.family],
        "family_digest": cert.digest,
        "witness": cert.witness,
        "refutation": {"size": value - 1, "infeasible": True} if isinstance(value, int) and value > 0 else None,
        "stats": {k: v for k, v in cert.stats.items() if isinstance(v, (int, str))},
    }
    return seal(doc)


def whitehead_to_json(cert: WhiteheadCertificate) -> dict:
    q = cert.query
    value = cert.value
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "whitehead",
        "invariant": "whitehead",
        "space": space_record(q.space),
        "targets": [_points(q.subset.members)],
        "target_names": [q.subset.name],
        "bound": q.search_bound,
        "value": value,
        "xi": [list(c) for c in cert.xi],
        "fence": [[list(f) for f in step] for step in cert.fence],
        "relations": list(cert.relations),
        "family": [_points(m) for m in cert.family],
        "family_digest": cert.digest,
        "witness": cert.witness,
        "refutation": {"size": value - 1, "infeasible": True} if isinstance(value, int) and value > 0 else None,
        "stats": {k: v for k, v in cert.stats.items() if isinstance(v, (int, str))},
    }
    return seal(doc)


def to_json(cert) -> dict:
    if isinstance(cert, CoverCertificate):
        return cover_to_json(cert)
    if isinstance(cert, WhiteheadCertificate):
        return whitehead_to_json(cert)
    if isinstance(cert, CompressionCertificate):
        Z = cert.open_set.space
        targets = [cert.target_subset.members]
        return seal({
            "schema_version": SCHEMA_VERSION,
            "kind": "compression",
            "space": space_record(Z),
            "targets": [_points(targets[0])],
            "sets": [_fence_record(cert, targets)],
        })
    raise TypeError(f"cannot serialize {type(cert).__name__}")


def dumps(cert) -> str:
    return json.dumps(to_json(cert), indent=1, sort_keys=True)


# --------------------------------------------------------------------------
# independent checking


class _Poset:
    """Order, group and action rebuilt from a certificate's space record."""

    def __init__(self, rec: dict):
        n = rec["n"]
        if not isinstance(n, int) or n < 0:
            raise ValueError("bad point count")
        le = [[i == j for j in range(n)] for i in range(n)]
        for a, b in rec["covers"]:
            le[a][b] = True
        for k in range(n):
            for i in range(n):
                if le[i][k]:
                    row_k = le[k]
                    row_i = le[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if le[i][j] and le[j][i]:
                    raise ValueError("order is not antisymmetric")
        self.n, self.le = n, le
        grp = rec["group"]
        k, e, table = grp["order"], grp["identity"], grp["table"]
        if len(table) != k or any(len(r) != k for r in table):
            raise ValueError("group table has the wrong shape")
        if any(table[e][a] != a or table[a][e] != a for a in range(k)):
            raise ValueError("identity is not two-sided")
        for a in range(k):
            if not any(table[a][b] == e and table[b][a] == e for b in range(k)):
                raise ValueError("element without inverse")
            for b in range(k):
                for c in range(k):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise ValueError("group table is not associative")
        act = rec["action"]
        if len(act) != k or any(sorted(row) != list(range(n)) for row in act):
            raise ValueError("action rows are not permutations")
        if act[e] != list(range(n)):
            raise ValueError("identity acts nontrivially")
        for a in range(k):
            for b in range(k):
                if any(act[table[a][b]][x] != act[a][act[b][x]] for x in range(n)):
                    raise ValueError("action is not a group action")
            for x in range(n):
                for y in range(n):
                    if le[x][y] and not le[act[a][x]][act[a][y]]:
                        raise ValueError("group does not act by order automorphisms")
        self.k, self.act = k, act

    def invariant(self, pts: set) -> bool:
        return all(self.act[g][x] in pts for g in range(self.k) for x in pts)

    def down_set(self, pts: set) -> bool:
        return all(y in pts for x in pts for y in range(self.n) if self.le[y][x])

    def valid_map(self, dom: list[int], vals: list[int], pos: dict | None = None) -> bool:
        """Order-preserving and equivariant map dom -> X given by vals (aligned with dom)."""
        if len(vals) != len(dom) or any(not isinstance(v, int) or not 0 <= v < self.n for v in vals):
            return False
        pos = pos if pos is not None else {x: i for i, x in enumerate(dom)}
        le = self.le
        for i, x in enumerate(dom):
            for j, y in enumerate(dom):
                if le[x][y] and not le[vals[i]][vals[j]]:
                    return False
            for g in range(self.k):
                gx = self.act[g][x]
                if gx not in pos or vals[pos[gx]] != self.act[g][vals[i]]:
                    return False
        return True

    def comparable(self, f: list[int], g: list[int], rel: str) -> bool:
        if rel == "<=":
            return all(self.le[a][b] for a, b in zip(f, g))
        if rel == ">=":
            return all(self.le[b][a] for a, b in zip(f, g))
        return False


def _check_fence(P: _Poset, dom: list[int], fence: list, relations: list, start: list[int]) -> str | None:
    if not fence or len(relations) != len(fence) - 1:
        return "fence length mismatch"
    if list(fence[0]) != list(start):
        return "fence does not start at the required map"
    pos = {x: i for i, x in enumerate(dom)}
    for f in fence:
        if not P.valid_map(dom, list(f), pos):
            return "fence map is not order-preserving and equivariant"
    for f, r, g in zip(fence, relations, fence[1:]):
        if not P.comparable(f, g, r):
            return "consecutive fence maps are not comparable as stated"
    return None


def _mask(pts) -> int:
    m = 0
    for p in pts:
        m |= 1 << p
    return m


def check(doc: dict) -> Verdict:
    """Replay every claim of a certificate document.  Never raises on malformed input."""
    try:
        return _check(doc)
    except (KeyError, TypeError, ValueError, IndexError, AttributeError) as exc:
        return Verdict(False, f"malformed certificate: {type(exc).__name__}: {exc}")


def _check(doc: dict) -> Verdict:
    if not isinstance(doc, dict):
        return Verdict(False, "not a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        return Verdict(False, "unsupported schema version")
    body = {k: v for k, v in doc.items() if k != "integrity"}
    if doc.get("integrity") != digest(body):
        return Verdict(False, "integrity digest mismatch")
    P = _Poset(doc["space"])
    targets = [set(t) for t in doc["targets"]]
    for t in targets:
        if not t <= set(range(P.n)) or not P.invariant(t):
            return Verdict(False, "target subset is not invariant")
    why = _target_meaning(P, doc, targets)
    if why:
        return Verdict(False, why)
    kind = doc["kind"]
    if kind == "compression":
        return _check_sets(P, doc["sets"], targets)
    if kind == "cover":
        return _check_cover(P, doc, targets)
    if kind == "whitehead":
        return _check_whitehead(P, doc, targets[0])
    return Verdict(False, f"unknown certificate kind {kind!r}")


def _target_meaning(P: _Poset, doc: dict, targets: list[set]) -> str | None:
    """Named invariants fix their targets: the saturated diagonal for TC types, the orbits for cat_G."""
    inv = doc.get("invariant")
    if inv in ("tc", "tcg", "stc"):
        labels = doc["space"]["labels"]
        if len(labels) != P.n:
            return "label count differs from the point count"
        diag = {i for i, lab in enumerate(labels) if isinstance(lab, list) and len(lab) == 2 and lab[0] == lab[1]}
        sat = {P.act[g][x] for g in range(P.k) for x in diag}
        if len(targets) != 1 or targets[0] != sat:
            return "target is not the saturated diagonal"
    elif inv == "catG":
        orbits = {frozenset(P.act[g][x] for g in range(P.k)) for x in range(P.n)}
        if len(targets) != len(orbits) or {frozenset(t) for t in targets} != orbits:
            return "targets are not the orbits"
    return None


def _check_sets(P: _Poset, sets: list, targets: list[set]) -> Verdict:
    for s in sets:
        dom = list(s["open"])
        if dom != sorted(set(dom)) or any(not 0 <= x < P.n for x in dom):
            return Verdict(False, "open set is not a sorted list of points")
        pts = set(dom)
        if not P.down_set(pts) or not P.invariant(pts):
            return Verdict(False, "cover member is not an invariant open set")
        why = _check_fence(P, dom, s["fence"], s["relations"], dom)
        if why:
            return Verdict(False, why)
        target = targets[s["target"]]
        if not set(s["fence"][-1]) <= target:
            return Verdict(False, "fence does not end in the target subset")
    return Verdict(True)


def _check_family(P: _Poset, doc: dict) -> tuple[list[int], Verdict | None]:
    fam = [_mask(f) for f in doc["family"]]
    if doc["family_digest"] != hashlib.sha256(json.dumps(sorted(fam)).encode()).hexdigest():
        return fam, Verdict(False, "family digest mismatch")
    return fam, None


def _check_cover(P: _Poset, doc: dict, targets: list[set]) -> Verdict:
    value = doc["value"]
    fam, bad = _check_family(P, doc)
    if bad:
        return bad
    for f in doc["family"]:
        if not P.down_set(set(f)) or not P.invariant(set(f)):
            return Verdict(False, "family member is not an invariant open set")
    full = (1 << P.n) - 1
    if value == "infinite":
        w = doc["witness"]
        if not isinstance(w, int) or not 0 <= w < P.n:
            return Verdict(False, "infinite value without a witness point")
        if any(m >> w & 1 for m in fam) and any(targets):
            return Verdict(False, "witness point lies in a compressible set")
        return Verdict(True)
    if value in (">bound", "unknown"):
        return Verdict(True)
    if not isinstance(value, int) or isinstance(value, bool):
        return Verdict(False, "value is not an integer")
    sets = doc["sets"]
    if len(sets) != value:
        return Verdict(False, "number of cover members differs from the value")
    union = 0
    for s in sets:
        union |= _mask(s["open"])
    if union != full:
        return Verdict(False, "cover members do not cover the space")
    res = _check_sets(P, sets, targets)
    if not res:
        return res
    for s in sets:
        m = _mask(s["open"])
        if not any(m & ~f == 0 for f in fam):
            return Verdict(False, "cover member not contained in the maximal family")
    ref = doc["refutation"]
    if value > 0 and (ref is None or ref.get("size") != value - 1):
        return Verdict(False, "missing lower-bound refutation")
    if value > 0 and has_cover_of_size(full, fam, value - 1):
        return Verdict(False, "a smaller cover exists in the family")
    return Verdict(True)


def _check_whitehead(P: _Poset, doc: dict, A: set) -> Verdict:
    value = doc["value"]
    fam, bad = _check_family(P, doc)
    if bad:
        return bad
    full = (1 << P.n) - 1
    if value == "infinite":
        w = doc["witness"]
        if not isinstance(w, int) or not 0 <= w < P.n or any(m >> w & 1 for m in fam):
            return Verdict(False, "bad infinity witness")
        return Verdict(True)
    if value in (">bound", "unknown"):
        return Verdict(True)
    if not isinstance(value, int) or isinstance(value, bool):
        return Verdict(False, "value is not an integer")
    xi, fence, rels = doc["xi"], doc["fence"], doc["relations"]
    if len(xi) != value:
        return Verdict(False, "xi has the wrong number of coordinates")
    dom = list(range(P.n))
    ident = [dom] * value
    if not fence or [list(c) for c in fence[0]] != ident:
        return Verdict(False, "fence does not start at the diagonal")
    if [list(c) for c in fence[-1]] != [list(c) for c in xi]:
        return Verdict(False, "fence does not end at xi")
    if len(rels) != len(fence) - 1:
        return Verdict(False, "fence length mismatch")
    for step in fence:
        if len(step) != value or not all(P.valid_map(dom, list(c)) for c in step):
            return Verdict(False, "fence map is not order-preserving and equivariant")
    for f, r, g in zip(fence, rels, fence[1:]):
        if not all(P.comparable(a, b, r) for a, b in zip(f, g)):
            return Verdict(False, "consecutive fence maps are not comparable as stated")
    for x in range(P.n):
        if not any(c[x] in A for c in xi):
            return Verdict(False, "xi leaves the fat sum")
    if value > 0 and has_cover_of_size(full, fam, value - 1):
        return Verdict(False, "a smaller cover exists in the family")
    return Verdict(True)


def has_cover_of_size(universe: int, sets: list[int], k: int) -> bool:
    """Depth-first feasibility: can ``k`` of ``sets`` cover ``universe``?"""
    sets = [s & universe for s in sets]

    def rec(uncovered: int, budget: int) -> bool:
        if not uncovered:
            return True
        if budget == 0:
            return False
        low = uncovered & -uncovered
        return any(rec(uncovered & ~s, budget - 1) for s in sets if s & low)

    return rec(universe, k)


def verify_certificate(cert) -> Verdict:
    """Check an in-memory certificate by serializing it and replaying the document."""
    return check(to_json(cert))
