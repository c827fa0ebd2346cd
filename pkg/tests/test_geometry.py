"""Exterior-geometry identities and parametrization round trips."""

import math

import numpy as np
import pytest

from btzharvest.geometry import (
    DIRICHLET, HorizonError, SpacetimeParams, DetectorPlacement,
    proper_distance, radius_at_distance, distance_from_horizon,
    redshift_from_radius, redshift_from_distance, local_temperature,
    placement_from_thermal, thermal_from_radius,
)

RNG = np.random.default_rng(20260814)


def random_params(n):
    length = 10.0 ** RNG.uniform(-1, 2, n)
    mass = 10.0 ** RNG.uniform(-3, 2, n)
    return length, mass


def test_horizon_radius_and_temperature():
    st = SpacetimeParams(ads_length=10.0, mass=0.01)
    assert st.horizon_radius == pytest.approx(1.0, rel=1e-15)
    assert st.hawking_temperature == pytest.approx(1.0 / (2.0 * math.pi * 100.0), rel=1e-15)


def test_radius_distance_round_trip_bulk():
    # r -> d -> r is well conditioned over the whole exterior; the reverse
    # direction loses eps/u^2 near the horizon because r itself cannot
    # represent d there, so it is only tested at moderate separations
    length, mass = random_params(200)
    for ell, m in zip(length, mass):
        st = SpacetimeParams(ell, m)
        r = st.horizon_radius * (1.0 + 10.0 ** RNG.uniform(-8, 3))
        back = radius_at_distance(distance_from_horizon(r, st), st)
        assert back == pytest.approx(r, rel=1e-12)


def test_distance_radius_round_trip_moderate():
    st = SpacetimeParams(7.3, 0.4)
    for dist in np.geomspace(0.15 * 7.3, 40.0, 50):
        r = radius_at_distance(dist, st)
        assert distance_from_horizon(r, st) == pytest.approx(dist, rel=1e-12)


def test_proper_distance_additivity():
    st = SpacetimeParams(10.0, 0.01)
    r1, r2, r3 = 1.3, 2.9, 11.0
    d13 = proper_distance(r1, r3, st)
    assert d13 == pytest.approx(
        proper_distance(r1, r2, st) + proper_distance(r2, r3, st), rel=1e-13)
    assert proper_distance(r1, r1, st) == pytest.approx(0.0, abs=1e-14)


def test_redshift_two_forms_agree():
    # sqrt(r^2 - rh^2)/l versus (rh/l) sinh(d/l) on random exteriors
    length, mass = random_params(500)
    u = RNG.uniform(1e-3, 5.0, 500)
    for ell, m, uu in zip(length, mass, u):
        st = SpacetimeParams(ell, m)
        r = st.horizon_radius * math.cosh(uu)
        g1 = redshift_from_radius(r, st)
        g2 = redshift_from_distance(uu * ell, st)
        assert g1 == pytest.approx(g2, rel=1e-12)


def test_redshift_monotone_in_radius():
    st = SpacetimeParams(10.0, 0.01)
    r = np.linspace(1.0001, 50.0, 400)
    g = np.array([redshift_from_radius(x, st) for x in r])
    assert np.all(np.diff(g) > 0)


def test_local_temperature_is_blueshifted_hawking():
    st = SpacetimeParams(5.0, 2.0)
    r = 3.7 * st.horizon_radius
    t = local_temperature(r, st)
    assert t == pytest.approx(st.hawking_temperature / redshift_from_radius(r, st),
                              rel=1e-14)


def test_thermal_placement_frozen_values():
    # T = 1, gamma = 0.1, l = 10: r_h = 2 pi l^2 T gamma = 20 pi
    rh, d = placement_from_thermal(1.0, 0.1, 10.0)
    assert rh == pytest.approx(20.0 * math.pi, rel=1e-14)
    assert d == pytest.approx(0.1591482247879884, rel=1e-13)
    rh2, d2 = placement_from_thermal(0.1, 1.0, 10.0)
    assert d2 == pytest.approx(1.58490581423507, rel=1e-13)


def test_thermal_round_trip_via_distance():
    # recover (T, gamma) from the placement through the sinh form, which
    # stays conditioned even when d/l is tiny
    for t, g, ell in [(1.0, 0.1, 10.0), (0.37, 3.0, 4.0), (22.0, 0.004, 50.0)]:
        rh, d = placement_from_thermal(t, g, ell)
        st = SpacetimeParams(ell, (rh / ell) ** 2)
        g_back = redshift_from_distance(d, st)
        assert g_back == pytest.approx(g, rel=1e-12)
        assert st.hawking_temperature / g_back == pytest.approx(t, rel=1e-12)


def test_thermal_from_radius_moderate():
    st = SpacetimeParams(10.0, 0.25)
    r = 2.0 * st.horizon_radius
    t, g = thermal_from_radius(r, st)
    assert g == pytest.approx(redshift_from_radius(r, st), rel=1e-14)
    rh, d = placement_from_thermal(t, g, st.ads_length)
    assert rh == pytest.approx(st.horizon_radius, rel=1e-12)
    assert radius_at_distance(d, st) == pytest.approx(r, rel=1e-12)


def test_horizon_rejections():
    st = SpacetimeParams(10.0, 0.01)
    assert redshift_from_radius(st.horizon_radius, st) == 0.0
    with pytest.raises(ValueError):
        redshift_from_radius(0.5 * st.horizon_radius, st)
    with pytest.raises(HorizonError):
        local_temperature(st.horizon_radius, st)
    with pytest.raises(ValueError):
        SpacetimeParams(10.0, -1.0)
    with pytest.raises(ValueError):
        SpacetimeParams(0.0, 1.0)
    with pytest.raises(ValueError):
        SpacetimeParams(10.0, 1.0, zeta=2)


def test_placement_needs_exactly_one_coordinate():
    with pytest.raises(ValueError):
        DetectorPlacement(radius=2.0, horizon_distance=7.0)
    with pytest.raises(ValueError):
        DetectorPlacement()
    st = SpacetimeParams(10.0, 0.01, DIRICHLET)
    p = DetectorPlacement(horizon_distance=7.0)
    assert p.resolve_radius(st) == pytest.approx(math.cosh(0.7), rel=1e-14)
    q = DetectorPlacement(radius=math.cosh(0.7))
    assert q.resolve_distance(st) == pytest.approx(7.0, rel=1e-13)
