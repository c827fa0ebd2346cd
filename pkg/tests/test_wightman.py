"""Image-sum kinematics: branch abscissae, interval function, truncation."""

import math

import numpy as np
import pytest

from btzharvest.geometry import SpacetimeParams, radius_at_distance, redshift_from_radius
from btzharvest.wightman import (
    ImageTermParams, TruncationPolicy, alpha_pm, image_term_magnitude,
    select_image_terms, sigma_epsilon_dt,
)

RNG = np.random.default_rng(42)


def _pair(st, u_a, u_b):
    rh = st.horizon_radius
    return rh * math.cosh(u_a), rh * math.cosh(u_b)


def raw_alpha(n, r_a, r_b, st):
    # direct arccosh of the published arguments; loses digits near
    # degeneracy but is an independent route at moderate parameters
    rh, ell = st.horizon_radius, st.ads_length
    ga = redshift_from_radius(r_a, st)
    gb = redshift_from_radius(r_b, st)
    pref = rh**2 / (ell**2 * ga * gb)
    base = (r_a * r_b / rh**2) * math.cosh((rh / ell) * 2.0 * math.pi * n)
    return math.acosh(pref * (base - 1.0)), math.acosh(pref * (base + 1.0))


def test_alpha_pm_matches_raw_formula():
    for _ in range(60):
        ell = 10.0 ** RNG.uniform(-0.5, 1.0)
        st = SpacetimeParams(ell, 10.0 ** RNG.uniform(-1.5, 1.0))
        u_a = RNG.uniform(0.3, 2.0)
        u_b = u_a + RNG.uniform(0.3, 2.0)
        r_a, r_b = _pair(st, u_a, u_b)
        for n in range(0, 3):
            if (st.horizon_radius / ell) * 2.0 * math.pi * n > 20.0:
                continue
            am, ap = alpha_pm(n, r_a, r_b, st)
            ram, rap = raw_alpha(n, r_a, r_b, st)
            assert am == pytest.approx(ram, rel=1e-10)
            assert ap == pytest.approx(rap, rel=1e-10)


def test_alpha_minus_n0_anchor_identity():
    # cosh(alpha_minus_0) = 1 + (cosh(du) - 1)/g with du the horizon-
    # distance difference over l; this is the anchor of the stable rewrite
    st = SpacetimeParams(10.0, 0.01)
    r_a = radius_at_distance(7.0, st)
    r_b = radius_at_distance(14.0, st)
    ga = redshift_from_radius(r_a, st)
    gb = redshift_from_radius(r_b, st)
    g = st.ads_length**2 * ga * gb / st.horizon_radius**2
    am, ap = alpha_pm(0, r_a, r_b, st)
    assert math.cosh(am) == pytest.approx(1.0 + (math.cosh(0.7) - 1.0) / g, rel=1e-13)
    assert ap > am
    # P - g = cosh(du) exactly (hyperbolic subtraction identity)
    p = r_a * r_b / st.horizon_radius**2
    assert p - g == pytest.approx(math.cosh(0.7), rel=1e-13)


def test_alpha_ordering_and_growth():
    st = SpacetimeParams(10.0, 0.04)
    r_a, r_b = _pair(st, 0.7, 1.4)
    prev_m = prev_p = -1.0
    for n in range(0, 6):
        am, ap = alpha_pm(n, r_a, r_b, st)
        assert ap > am >= 0.0
        assert am > prev_m and ap > prev_p
        prev_m, prev_p = am, ap


def test_alpha_log_branch_continuity():
    # the closed form switches to log space for deep images; the seam at
    # y = 600 must be smooth: alpha is y + const up to e^{-y} corrections
    for y in (599.9, 600.1):
        ell = 1.0
        rh = y / (2.0 * math.pi)
        st = SpacetimeParams(ell, rh**2)
        r_a, r_b = _pair(st, 0.5, 0.9)
        am, ap = alpha_pm(1, r_a, r_b, st)
        if y == 599.9:
            base_m, base_p = am - y, ap - y
        else:
            assert am - y == pytest.approx(base_m, abs=1e-9)
            assert ap - y == pytest.approx(base_p, abs=1e-9)


def test_sigma_alpha_consistency_at_equal_times():
    # sigma(dt=0) = g (cosh alpha_minus - 1) ties the stable abscissae to
    # the raw interval function
    st = SpacetimeParams(10.0, 0.01)
    r_a, r_b = _pair(st, 0.7, 1.4)
    ga = redshift_from_radius(r_a, st)
    gb = redshift_from_radius(r_b, st)
    g = st.ads_length**2 * ga * gb / st.horizon_radius**2
    for n in range(0, 4):
        am, ap = alpha_pm(n, r_a, r_b, st)
        sig = sigma_epsilon_dt(r_a, r_b, 0.0, n, st)
        assert sig.imag == 0.0
        assert sig.real == pytest.approx(g * (math.cosh(am) - 1.0), rel=1e-12)
        assert sig.real + 2.0 == pytest.approx(g * (math.cosh(ap) - 1.0), rel=1e-12)


def test_sigma_even_in_image_index():
    st = SpacetimeParams(10.0, 0.01)
    r_a, r_b = _pair(st, 0.7, 1.4)
    dt = np.linspace(-3.0, 3.0, 11)
    for n in (1, 2, 3):
        s_pos = sigma_epsilon_dt(r_a, r_b, dt, n, st, epsilon=1e-4)
        s_neg = sigma_epsilon_dt(r_a, r_b, dt, -n, st, epsilon=1e-4)
        assert np.array_equal(s_pos, s_neg)


def test_sigma_epsilon_continuity():
    st = SpacetimeParams(10.0, 0.01)
    r_a, r_b = _pair(st, 0.7, 1.4)
    s0 = sigma_epsilon_dt(r_a, r_b, 1.3, 0, st)
    s1 = sigma_epsilon_dt(r_a, r_b, 1.3, 0, st, epsilon=1e-8)
    assert s1.imag != 0.0
    assert s1 == pytest.approx(s0, rel=1e-6)


def test_image_term_magnitude_formula():
    term = ImageTermParams(1, 0.8, 2.3)
    base = 1.0 / (math.sqrt(2.0) * math.sinh(0.4))
    plus = 1.0 / (math.sqrt(2.0) * math.sinh(1.15))
    assert image_term_magnitude(term, 0) == pytest.approx(base, rel=1e-14)
    assert image_term_magnitude(term, 1) == pytest.approx(base + plus, rel=1e-14)
    assert image_term_magnitude(term, -1) == pytest.approx(base + plus, rel=1e-14)


def test_image_term_validation():
    with pytest.raises(ValueError):
        ImageTermParams(0, -0.1, 1.0)
    with pytest.raises(ValueError):
        ImageTermParams(0, 1.0, 0.5)


def test_selection_keeps_n0_when_images_vanish():
    # deep images underflow; the n = 0 term must survive unconditionally
    st = SpacetimeParams(1.0, 200.0**2)     # r_h / l = 200
    r_a, r_b = _pair(st, 0.7, 1.4)
    sel = select_image_terms(r_a, r_b, st, TruncationPolicy(1e-9, 50))
    assert [t.n for t in sel.terms] == [0]
    assert not sel.capped
    assert sel.tail_bound == 0.0


def test_selection_floor_and_tail_tolerance():
    st = SpacetimeParams(10.0, 0.01)
    r_a, r_b = _pair(st, 0.7, 1.4)
    sel = select_image_terms(r_a, r_b, st, TruncationPolicy(tail_tol=1.0, n_max=50, n_floor=2))
    assert [t.n for t in sel.terms][:3] == [0, 1, 2]
    tight = select_image_terms(r_a, r_b, st, TruncationPolicy(tail_tol=1e-12, n_max=200))
    assert len(tight.terms) > len(sel.terms)
    assert not tight.capped


def test_selection_cap_reports_tail():
    # r_h / l = 0.1 decays too slowly for n_max = 5; the cap must be
    # flagged and a positive geometric tail estimate returned
    st = SpacetimeParams(10.0, 0.01)
    r_a, r_b = _pair(st, 0.7, 1.4)
    sel = select_image_terms(r_a, r_b, st, TruncationPolicy(tail_tol=0.0, n_max=5))
    assert sel.capped
    assert len(sel.terms) == 6
    assert sel.tail_bound > 0.0


def test_selection_n0_only_policy():
    st = SpacetimeParams(10.0, 0.01)
    r_a, r_b = _pair(st, 0.7, 1.4)
    sel = select_image_terms(r_a, r_b, st, TruncationPolicy(tail_tol=0.0, n_max=0, n_floor=0))
    assert [t.n for t in sel.terms] == [0]
    assert sel.capped
