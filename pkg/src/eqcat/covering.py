"""Poset coverings and certificate transport between X x X and (X/G) x (X/G).

A free action is a poset covering when every minimal open neighbourhood
U_x is moved off itself by each g != e.  Then for every point z over q and
every q' >= q (or q' <= q) there is exactly one point over q' above (below)
z, so fences downstairs lift uniquely once the starting map is fixed.  This
turns a TC(X/G) certificate into an STC_G(X) certificate and back.
"""
from __future__ import annotations

from .category import CoverCertificate, family_digest, stc_query, tc_query
from .gspace import FiniteGSpace, FormulaMismatch, MarkedSubset, OrbitMap, bits, daleth, diagonal, mask_of, \
    orbit_space, square
from .homotopy import CompressionCertificate, FenceHomotopy


class NotACovering(ValueError):
    """The quotient map is not a poset covering (or a lift is not unique)."""


def is_poset_covering(q: OrbitMap) -> bool:
    X = q.source
    if not X.is_free:
        return False
    G = X.group
    for x in range(X.n):
        U = X.down[x]
        for g in G.elements:
            if g != G.identity and X.act_mask(g, U) & U:
                return False
    return True


def _pair_projection(X: FiniteGSpace, Q: FiniteGSpace, q: OrbitMap, Z: FiniteGSpace, ZQ: FiniteGSpace):
    """z in X x X -> (pi x, pi y) in Q x Q as an index tuple."""
    info, infoq = Z.product_info, ZQ.product_info
    out = []
    for z in range(Z.n):
        a, b = info.split(z)
        out.append(infoq.join(q.assignment[a], q.assignment[b]))
    return tuple(out)


def _spaces(X: FiniteGSpace):
    Q, q = orbit_space(X)
    Z = square(X, "product")
    ZQ = square(Q, "trivial")
    return Q, q, Z, ZQ, _pair_projection(X, Q, q, Z, ZQ)


def _same_square(ZQ: FiniteGSpace, ZQ2: FiniteGSpace) -> bool:
    return ZQ.n == ZQ2.n and ZQ.down == ZQ2.down


def lift_certificate(cert: CoverCertificate, X: FiniteGSpace) -> CoverCertificate:
    """TC(X/G) certificate -> STC_G(X) certificate of the same size (upper bound transport)."""
    Q, q, Z, ZQ, pi2 = _spaces(X)
    if not is_poset_covering(q):
        raise NotACovering(f"{X.name} -> {Q.name} is not a poset covering")
    if not isinstance(cert.value, int):
        raise ValueError("only finite certificates can be transported")
    src = cert.query.space
    if not _same_square(src, ZQ):
        raise ValueError("certificate does not live on (X/G) x (X/G)")
    D = daleth(Z)
    pre_diag = mask_of(z for z in range(Z.n) if diagonal(ZQ).members >> pi2[z] & 1)
    if pre_diag != D.members:
        raise FormulaMismatch("preimage of the quotient diagonal differs from daleth")

    def preimage(mask: int) -> int:
        return mask_of(z for z in range(Z.n) if mask >> pi2[z] & 1)

    def step_lift(w: int, target: int, rel: str) -> int:
        cone = Z.up[w] if rel == "<=" else Z.down[w]
        hits = [v for v in bits(cone) if pi2[v] == target]
        if len(hits) != 1:
            raise NotACovering(f"{len(hits)} lifts of a fence step")
        return hits[0]

    sets = []
    for c in cert.sets:
        V = c.open_set.members
        vpos = {v: i for i, v in enumerate(bits(V))}
        U = preimage(V)
        S = Z.subspace(U)
        current = list(S.parent_index)
        maps = [tuple(current)]
        for h, rel in zip(c.fence.maps[1:], c.fence.relations):
            current = [step_lift(w, h[vpos[pi2[z]]], rel) for w, z in zip(current, S.parent_index)]
            maps.append(tuple(current))
        fence = FenceHomotopy(S, Z, S.group_map, maps, list(c.fence.relations))
        sets.append(CompressionCertificate(MarkedSubset(Z, U, "U"), D, fence))
    fam = sorted(preimage(m) for m in cert.family)
    query = stc_query(X, cert.query.search_bound)
    query = type(query)(Z, D, query.label, query.search_bound)
    stats = {"transported": "lift", "value": cert.value}
    return CoverCertificate(query, cert.value, sets=sets, family=fam, digest=family_digest(fam), stats=stats)


def project_certificate(cert: CoverCertificate, X: FiniteGSpace) -> CoverCertificate:
    """STC_G(X) certificate -> TC(X/G) certificate of the same size."""
    Q, q, Z, ZQ, pi2 = _spaces(X)
    if not isinstance(cert.value, int):
        raise ValueError("only finite certificates can be transported")
    if not _same_square(cert.query.space, Z) or cert.query.space.group.order != Z.group.order:
        raise ValueError("certificate does not live on X x X with the G x G action")
    Dq = diagonal(ZQ)
    if mask_of(pi2[z] for z in bits(daleth(Z).members)) != Dq.members:
        raise FormulaMismatch("image of daleth differs from the quotient diagonal")

    def image(mask: int) -> int:
        return mask_of(pi2[z] for z in bits(mask))

    sets = []
    for c in cert.sets:
        U = c.open_set.members
        upts = list(bits(U))
        V = image(U)
        S = ZQ.subspace(V)
        first = {}
        for i, z in enumerate(upts):
            first.setdefault(pi2[z], i)
        maps = []
        for h in c.fence.maps:
            down = tuple(pi2[h[first[v]]] for v in S.parent_index)
            for i, z in enumerate(upts):
                if pi2[h[i]] != down[S.parent_index.index(pi2[z])]:
                    raise ValueError("fence map is not equivariant; cannot push it down")
            maps.append(down)
        fence = FenceHomotopy(S, ZQ, S.group_map, maps, list(c.fence.relations))
        sets.append(CompressionCertificate(MarkedSubset(ZQ, V, "V"), Dq, fence))
    fam = sorted(image(m) for m in cert.family)
    fam = [m for m in fam if not any(m != o and m & ~o == 0 for o in fam)]
    fam = sorted(set(fam))
    base = tc_query(Q, cert.query.search_bound)
    query = type(base)(ZQ, Dq, base.label, base.search_bound)
    stats = {"transported": "project", "value": cert.value}
    return CoverCertificate(query, cert.value, sets=sets, family=fam, digest=family_digest(fam), stats=stats)
