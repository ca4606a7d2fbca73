"""Numeric sphere planners: geometry helpers, section properties, validation report."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqcat.sphere import (BadDomain, angle, in_U1, in_U2, nu, plan, random_sphere, section_U1, section_U2, slerp,
                          tau, validate_free_transitive, validate_planner)

seeds = st.integers(0, 2 ** 32 - 1)


def _pair(seed, n=2):
    rng = np.random.default_rng(seed)
    return random_sphere(rng, 1, n)[0], random_sphere(rng, 1, n)[0]


def _equator_point(rng, n):
    p = rng.standard_normal(n + 1)
    p[-1] = 0.0
    return p / np.linalg.norm(p)


def test_tau_is_an_involution():
    p = random_sphere(np.random.default_rng(0), 5, 4)
    assert np.allclose(tau(tau(p)), p)
    assert np.allclose(angle(p, p), 0.0) and np.allclose(angle(p, -p), np.pi)


@given(seeds)
@settings(max_examples=50)
def test_slerp_endpoints_and_constant_speed(seed):
    x, y = _pair(seed)
    t = np.linspace(0, 1, 33)
    path = slerp(x, y, t)[0]
    assert np.allclose(path[0], x) and np.allclose(path[-1], y)
    steps = angle(path[1:], path[:-1])
    assert np.allclose(steps, steps.mean(), atol=1e-9)


def test_nu_is_a_unit_tangent_field_on_even_spheres():
    p = random_sphere(np.random.default_rng(1), 10, 2)
    p[:, -1] = 0
    p /= np.linalg.norm(p, axis=1, keepdims=True)
    v = nu(p)
    assert np.allclose((p * v).sum(axis=1), 0) and np.allclose(np.linalg.norm(v, axis=1), 1)
    with pytest.raises(ValueError):
        nu(np.zeros((1, 4)))


@given(seeds, st.sampled_from([2, 4]))
@settings(max_examples=60, deadline=None)
def test_sections_meet_endpoints_and_orbits(seed, n):
    x, y = _pair(seed, n)
    s = plan(x, y)
    assert np.abs(s.gamma[0] - x).max() == 0 and np.abs(s.delta[-1] - y).max() == 0
    mid = min(np.linalg.norm(s.delta[0] - s.gamma[-1]), np.linalg.norm(s.delta[0] - tau(s.gamma[-1])))
    assert mid <= 1e-9
    assert np.allclose(np.linalg.norm(s.gamma, axis=1), 1) and np.allclose(np.linalg.norm(s.delta, axis=1), 1)


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_U1_equivariant_away_from_equator(seed):
    x, y = _pair(seed)
    if min(abs(x[-1]), abs(y[-1])) < 0.05:
        return
    s = section_U1(x, y)
    sx = section_U1(tau(x), y)
    sy = section_U1(x, tau(y))
    assert np.allclose(sx.gamma, tau(s.gamma), atol=1e-9) and np.allclose(sx.delta, s.delta, atol=1e-9)
    assert np.allclose(sy.delta, tau(s.delta), atol=1e-9) and np.allclose(sy.gamma, s.gamma, atol=1e-9)


def test_antipodal_equator_pairs_use_U2():
    rng = np.random.default_rng(3)
    e = _equator_point(rng, 2)
    assert not in_U1(e, -e) and in_U2(e, -e)
    s = plan(e, -e)
    assert s.domain == "U2"
    with pytest.raises(BadDomain):
        section_U1(e, -e)


def test_U2_equivariant_inside_band():
    rng = np.random.default_rng(4)
    checked = 0
    for _ in range(40):
        x, y = _equator_point(rng, 4), _equator_point(rng, 4)
        x[-1], y[-1] = rng.uniform(-0.09, 0.09, size=2)
        x, y = x / np.linalg.norm(x), y / np.linalg.norm(y)
        if not in_U2(x, y):
            continue
        s = section_U2(x, y)
        for g1 in (False, True):
            for g2 in (False, True):
                t = section_U2(tau(x) if g1 else x, tau(y) if g2 else y)
                assert np.allclose(t.gamma, tau(s.gamma) if g1 else s.gamma, atol=1e-9)
                assert np.allclose(t.delta, tau(s.delta) if g2 else s.delta, atol=1e-9)
        checked += 1
    assert checked > 20


def test_small_validation_run_reports_every_field():
    rep = validate_planner(2, samples=2000, adversarial=100, seed=42)
    d = rep.as_dict()
    assert rep.domain_count == 2 and rep.coverage == 1.0
    assert rep.endpoint_residual <= 1e-9 and rep.orbit_residual <= 1e-9
    assert {"continuity_constant", "equivariance_residual", "per_family", "passed"} <= set(d)
    with pytest.raises(ValueError):
        validate_planner(3, samples=10)


def test_free_transitive_planner():
    doc = validate_free_transitive(samples=500)
    assert doc["domain_count"] == 1 and doc["endpoint_residual"] == 0.0
