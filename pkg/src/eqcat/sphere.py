"""Symmetric motion planners on spheres, evaluated numerically.

Z/2 acts on S^n by reflecting the last coordinate (tau).  For even n two
domains are used: U1, where both points are replaced by their upper
hemisphere representatives and joined by the shortest arc, and U2, a band
around pairs of distinct equator points, where the path runs through the
equator and turns around using the tangent field nu(p) = J p.  Each path is
cut in two halves (gamma, delta).  Paths are sampled at K points.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

K_SAMPLES = 257
DELTA0 = 0.1       # U2: |last coordinate| < DELTA0
DELTA1 = 0.05      # U2: angle between equator projections > DELTA1
EPS_U1 = 0.0       # U1 excludes only the exact closed set
SLERP_EPS = 1e-8
H_MAX = 1e-3
BOUNDARY_MARGIN = 1e-2


class BadDomain(ValueError):
    """The pair is outside the domain of the requested section."""


class ValidationFailed(AssertionError):
    def __init__(self, message: str, sample=None):
        super().__init__(message)
        self.sample = sample


@dataclass
class SymmetricSection:
    domain: str
    x: np.ndarray
    y: np.ndarray
    gamma: np.ndarray   # K x (n+1)
    delta: np.ndarray


# --------------------------------------------------------------------------
# basic geometry (vectorized over a leading batch axis)


def tau(p: np.ndarray) -> np.ndarray:
    q = np.array(p, dtype=float, copy=True)
    q[..., -1] *= -1.0
    return q


def normalize(p: np.ndarray) -> np.ndarray:
    return p / np.linalg.norm(p, axis=-1, keepdims=True)


def angle(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    # atan2 form is accurate near 0 and pi
    cross = np.linalg.norm(p - q, axis=-1)
    summ = np.linalg.norm(p + q, axis=-1)
    return 2.0 * np.arctan2(cross, summ)


def slerp(p: np.ndarray, q: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Points on the shortest arc from p to q at parameters t; batch (B, d), t (T,) -> (B, T, d)."""
    p, q = np.atleast_2d(p), np.atleast_2d(q)
    t = np.asarray(t, dtype=float)
    om = angle(p, q)[:, None, None]
    tt = t[None, :, None]
    small = om < SLERP_EPS
    so = np.where(small, 1.0, np.sin(om))
    a = np.where(small, 1.0 - tt, np.sin((1.0 - tt) * om) / so)
    b = np.where(small, tt, np.sin(tt * om) / so)
    out = a * p[:, None, :] + b * q[:, None, :]
    return out / np.linalg.norm(out, axis=-1, keepdims=True)


def equator_projection(p: np.ndarray) -> np.ndarray:
    q = np.array(p, dtype=float, copy=True)
    q[..., -1] = 0.0
    with np.errstate(invalid="ignore", divide="ignore"):
        return normalize(q)  # NaN at the poles, which lie outside U2


def nu(p: np.ndarray) -> np.ndarray:
    """Unit tangent field on the equator S^(n-1): rotate coordinate pairs (1,2), (3,4), ..."""
    out = np.zeros_like(p)
    m = p.shape[-1] - 1
    if m % 2:
        raise ValueError("the equator has no nonvanishing field of this form for odd dimension")
    out[..., 0:m:2] = -p[..., 1:m:2]
    out[..., 1:m:2] = p[..., 0:m:2]
    return out


def random_sphere(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    return normalize(rng.standard_normal((count, n + 1)))


# --------------------------------------------------------------------------
# domains and sections


def in_U1(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    excluded = (np.abs(x[..., -1]) <= EPS_U1) & (np.abs(y[..., -1]) <= EPS_U1) & (angle(x, -y) <= EPS_U1)
    return ~excluded


def in_U2(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    band = (np.abs(x[..., -1]) < DELTA0) & (np.abs(y[..., -1]) < DELTA0)
    return band & (angle(equator_projection(x), equator_projection(y)) > DELTA1)


def boundary_distance_U1(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Distance proxy to the closed set removed from U1 (antipodal equator pairs)."""
    return np.maximum(np.maximum(np.abs(x[..., -1]), np.abs(y[..., -1])), 0.5 * np.linalg.norm(x + y, axis=-1))


def boundary_distance_U2(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    gap = angle(equator_projection(x), equator_projection(y)) - DELTA1
    return np.minimum(np.minimum(DELTA0 - np.abs(x[..., -1]), DELTA0 - np.abs(y[..., -1])), gap)


def _times(k: int) -> np.ndarray:
    return np.linspace(0.0, 1.0, k)


def section_U1_batch(x: np.ndarray, y: np.ndarray, k: int = K_SAMPLES) -> tuple[np.ndarray, np.ndarray]:
    if not np.all(in_U1(x, y)):
        raise BadDomain("pair outside U1")
    a1 = x[:, -1] < 0.0
    a2 = y[:, -1] < 0.0
    u = np.where(a1[:, None], tau(x), x)
    v = np.where(a2[:, None], tau(y), y)
    if np.any(angle(u, v) > np.pi - 1e-12):
        raise AssertionError("antipodal upper-hemisphere representatives on U1")
    t = _times(k)
    gam = slerp(u, v, t / 2.0)
    dlt = slerp(u, v, (1.0 + t) / 2.0)
    gam = np.where(a1[:, None, None], tau(gam), gam)
    dlt = np.where(a2[:, None, None], tau(dlt), dlt)
    # endpoints are the inputs themselves
    gam[:, 0, :] = x
    dlt[:, -1, :] = y
    return gam, dlt


def section_U2_batch(x: np.ndarray, y: np.ndarray, k: int = K_SAMPLES) -> tuple[np.ndarray, np.ndarray]:
    if not np.all(in_U2(x, y)):
        raise BadDomain("pair outside U2")
    px, py = equator_projection(x), equator_projection(y)
    t = _times(k)
    # gamma = legs 1 and 2 (first half), delta = legs 3 and 4 (second half), equal quarters
    s = 2.0 * t
    first = s <= 1.0
    u1 = np.where(first, s, 1.0)
    u2 = np.where(first, 0.0, s - 1.0)
    leg1 = slerp(x, px, u1)
    leg2 = slerp(px, -py, u2)
    gam = np.where(first[None, :, None], leg1, leg2)
    p = py
    w = nu(p)
    u3 = np.where(first, s, 1.0)
    leg3 = -p[:, None, :] * np.cos(np.pi * u3)[None, :, None] + w[:, None, :] * np.sin(np.pi * u3)[None, :, None]
    u4 = np.where(first, 0.0, s - 1.0)
    leg4 = slerp(py, y, u4)
    dlt = np.where(first[None, :, None], leg3, leg4)
    gam[:, 0, :] = x
    dlt[:, -1, :] = y
    return gam, dlt


def section_U1(x, y, k: int = K_SAMPLES) -> SymmetricSection:
    g, d = section_U1_batch(np.atleast_2d(x), np.atleast_2d(y), k)
    return SymmetricSection("U1", np.asarray(x, float), np.asarray(y, float), g[0], d[0])


def section_U2(x, y, k: int = K_SAMPLES) -> SymmetricSection:
    g, d = section_U2_batch(np.atleast_2d(x), np.atleast_2d(y), k)
    return SymmetricSection("U2", np.asarray(x, float), np.asarray(y, float), g[0], d[0])


def free_transitive_section(x, y, k: int = K_SAMPLES) -> SymmetricSection:
    """Rotations act transitively on S^1, so constant paths already match orbits."""
    x, y = np.asarray(x, float), np.asarray(y, float)
    return SymmetricSection("full", x, y, np.repeat(x[None, :], k, 0), np.repeat(y[None, :], k, 0))


def plan(x, y, k: int = K_SAMPLES) -> SymmetricSection:
    x, y = np.asarray(x, float), np.asarray(y, float)
    if in_U1(x, y):
        return section_U1(x, y, k)
    if in_U2(x, y):
        return section_U2(x, y, k)
    raise BadDomain("pair is in neither domain")


# --------------------------------------------------------------------------
# validation


@dataclass
class PlannerReport:
    n: int
    samples: int
    adversarial: int
    seed: int
    domain_count: int = 2
    coverage: float = 0.0
    in_U1: int = 0
    in_U2_only: int = 0
    endpoint_residual: float = 0.0
    orbit_residual: float = 0.0
    equivariance_residual: float = 0.0
    sphere_residual: float = 0.0
    max_gap: float = 0.0
    hemisphere_violation: float = 0.0
    continuity_constant: float = 0.0
    continuity_pairs: int = 0
    per_family: dict = field(default_factory=dict)
    worst: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (self.coverage == 1.0 and self.endpoint_residual <= 1e-9 and self.orbit_residual <= 1e-9
                and self.equivariance_residual <= 1e-9 and self.continuity_constant <= 100.0
                and self.sphere_residual <= 1e-12 * 10 and self.max_gap <= np.pi / 8)

    def as_dict(self) -> dict:
        out = {k: v for k, v in self.__dict__.items()}
        out["passed"] = self.passed
        return out


def adversarial_pairs(rng: np.random.Generator, count: int, n: int) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Equator and antipodal families, split evenly."""
    m = max(count // 5, 1)

    def equator(c):
        p = random_sphere(rng, c, n)
        p[:, -1] = 0.0
        return normalize(p)

    fam = {}
    e = equator(m)
    fam["equator-antipodal"] = (e, -e)
    e = equator(m)
    jitter = 10.0 ** rng.uniform(-6, -1, size=(m, 1)) * rng.standard_normal((m, n + 1))
    fam["near-antipodal"] = (e, normalize(-e + jitter))
    fam["equator-equator"] = (equator(m), equator(m))
    fam["equator-generic"] = (equator(m), random_sphere(rng, m, n))
    x = random_sphere(rng, m, n)
    kind = rng.integers(0, 3, size=m)
    y = np.where((kind == 0)[:, None], x, np.where((kind == 1)[:, None], tau(x), -x))
    poles = rng.random(m) < 0.2
    x[poles] = 0.0
    x[poles, -1] = 1.0
    fam["coincident-reflected"] = (x, y)
    return fam


def _sections(x, y, dom):
    g = np.empty((len(x), K_SAMPLES, x.shape[1]))
    d = np.empty_like(g)
    if dom.any():
        g[dom], d[dom] = section_U1_batch(x[dom], y[dom])
    if (~dom).any():
        g[~dom], d[~dom] = section_U2_batch(x[~dom], y[~dom])
    return g, d


def _check_chunk(rep: PlannerReport, x: np.ndarray, y: np.ndarray, family: str, rng: np.random.Generator,
                 continuity: bool):
    u1, u2 = in_U1(x, y), in_U2(x, y)
    covered = u1 | u2
    fam = rep.per_family.setdefault(family, {"pairs": 0, "covered": 0, "equivariance": 0.0, "continuity": 0.0})
    fam["pairs"] += len(x)
    fam["covered"] += int(covered.sum())
    rep.in_U1 += int(u1.sum())
    rep.in_U2_only += int((u2 & ~u1).sum())
    x, y, u1 = x[covered], y[covered], u1[covered]
    if not len(x):
        return
    g, d = _sections(x, y, u1)
    end = np.maximum(np.linalg.norm(g[:, 0] - x, axis=1), np.linalg.norm(d[:, -1] - y, axis=1))
    orb = np.minimum(np.linalg.norm(d[:, 0] - g[:, -1], axis=1), np.linalg.norm(d[:, 0] - tau(g[:, -1]), axis=1))
    norms = np.abs(np.linalg.norm(np.concatenate([g, d], axis=1), axis=2) - 1.0).max()
    gaps = max(angle(g[:, 1:], g[:, :-1]).max(), angle(d[:, 1:], d[:, :-1]).max())
    rep.endpoint_residual = max(rep.endpoint_residual, float(end.max()))
    rep.orbit_residual = max(rep.orbit_residual, float(orb.max()))
    rep.sphere_residual = max(rep.sphere_residual, float(norms))
    rep.max_gap = max(rep.max_gap, float(gaps))
    # U1 arcs between upper representatives stay in the closed upper hemisphere
    if u1.any():
        a1 = x[u1, -1] < 0
        up = np.where(a1[:, None, None], tau(g[u1]), g[u1])
        rep.hemisphere_violation = max(rep.hemisphere_violation, float(np.maximum(-up[..., -1], 0).max()))
    # equivariance for all four group pairs (domains are invariant)
    for g1 in (False, True):
        for g2 in (False, True):
            if not (g1 or g2):
                continue
            xx = tau(x) if g1 else x
            yy = tau(y) if g2 else y
            g_, d_ = _sections(xx, yy, in_U1(xx, yy))
            eg = tau(g) if g1 else g
            ed = tau(d) if g2 else d
            res = np.maximum(np.abs(g_ - eg).max(axis=(1, 2)), np.abs(d_ - ed).max(axis=(1, 2)))
            worst = int(res.argmax())
            if res[worst] > rep.equivariance_residual:
                rep.equivariance_residual = float(res[worst])
                rep.worst["equivariance"] = {"family": family, "x": x[worst].tolist(), "y": y[worst].tolist(),
                                             "group": [int(g1), int(g2)], "residual": float(res[worst])}
            fam["equivariance"] = max(fam["equivariance"], float(res.max()))
    if not continuity:
        return
    # continuity: perturb both points by chordal distance <= H_MAX, same domain, away from its boundary
    h = H_MAX * rng.random((len(x), 1))
    x2 = normalize(x + h * normalize(rng.standard_normal(x.shape)))
    y2 = normalize(y + h * normalize(rng.standard_normal(y.shape)))
    dist = np.maximum(np.linalg.norm(x - x2, axis=1), np.linalg.norm(y - y2, axis=1))
    for dom, member, bdist in (("U1", in_U1, boundary_distance_U1), ("U2", in_U2, boundary_distance_U2)):
        own = u1 if dom == "U1" else (~u1)
        ok = own & member(x2, y2) & (bdist(x, y) >= BOUNDARY_MARGIN) & (bdist(x2, y2) >= BOUNDARY_MARGIN)
        ok &= dist > 0
        if not ok.any():
            continue
        sec = section_U1_batch if dom == "U1" else section_U2_batch
        ga, da = g[ok], d[ok]
        gb, db = sec(x2[ok], y2[ok])
        sup = np.maximum(np.linalg.norm(ga - gb, axis=2).max(axis=1), np.linalg.norm(da - db, axis=2).max(axis=1))
        ratio = sup / dist[ok]
        rep.continuity_pairs += int(ok.sum())
        worst = int(ratio.argmax())
        if ratio[worst] > rep.continuity_constant:
            rep.continuity_constant = float(ratio[worst])
            idx = np.flatnonzero(ok)[worst]
            rep.worst["continuity"] = {"family": family, "domain": dom, "x": x[idx].tolist(),
                                       "y": y[idx].tolist(), "h": float(dist[idx]), "ratio": float(ratio[worst])}
        fam["continuity"] = max(fam["continuity"], float(ratio.max()))


def validate_planner(n: int, samples: int = 100_000, adversarial: int = 1000, seed: int = 42,
                     chunk: int = 2000, strict: bool = False) -> PlannerReport:
    """Sample uniform and adversarial pairs and measure every section property."""
    if n < 2 or n % 2:
        raise ValueError("the two-domain planner needs an even n >= 2")
    rng = np.random.default_rng(seed)
    rep = PlannerReport(n=n, samples=samples, adversarial=adversarial, seed=seed)
    total = covered = 0
    done = 0
    while done < samples:
        c = min(chunk, samples - done)
        x, y = random_sphere(rng, c, n), random_sphere(rng, c, n)
        _check_chunk(rep, x, y, "uniform", rng, continuity=True)
        done += c
    for name, (x, y) in adversarial_pairs(rng, adversarial, n).items():
        _check_chunk(rep, x, y, name, rng, continuity=True)
    for fam in rep.per_family.values():
        total += fam["pairs"]
        covered += fam["covered"]
    rep.coverage = covered / total if total else 0.0
    if strict and not rep.passed:
        raise ValidationFailed("planner validation failed", rep.worst)
    return rep


def validate_free_transitive(samples: int = 10_000, seed: int = 42) -> dict:
    """S^1 with the rotation group: one domain, constant paths."""
    rng = np.random.default_rng(seed)
    th = rng.uniform(0, 2 * np.pi, size=(samples, 2))
    x = np.stack([np.cos(th[:, 0]), np.sin(th[:, 0])], 1)
    y = np.stack([np.cos(th[:, 1]), np.sin(th[:, 1])], 1)
    end = 0.0
    for a, b in zip(x[:100], y[:100]):
        s = free_transitive_section(a, b)
        end = max(end, float(np.linalg.norm(s.gamma[0] - a)), float(np.linalg.norm(s.delta[-1] - b)))
    return {"domain_count": 1, "endpoint_residual": end, "pairs": samples}
