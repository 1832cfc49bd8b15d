"""Smoke tests for the python bindings.

``GI0_MODULE_DIR`` (set by ctest) points at the directory holding the
compiled ``_gi0`` module when running against a plain build tree; an
installed wheel needs no environment at all.
"""

import math
import os
import sys

import pytest

_module_dir = os.environ.get("GI0_MODULE_DIR")
if _module_dir:
    sys.path.insert(0, _module_dir)
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

import gi0  # noqa: E402


def test_density_integrates_roughly_to_one():
    p = gi0.TextureParams(alpha=-3.0, gamma=2.0)
    # trapezoid over a generous range; the tail beyond is 1 - cdf
    grid = [i * 0.01 for i in range(100001)]
    vals = [gi0.density(z, p) for z in grid]
    mass = sum((vals[i] + vals[i + 1]) * 0.005 for i in range(len(grid) - 1))
    mass += 1.0 - gi0.cdf(grid[-1], p)
    assert mass == pytest.approx(1.0, abs=1e-4)


def test_cdf_quantile_roundtrip():
    p = gi0.TextureParams(alpha=-5.0, gamma=1.0)
    for u in (0.01, 0.25, 0.5, 0.9, 0.999):
        assert gi0.cdf(gi0.quantile(u, p), p) == pytest.approx(u, abs=1e-12)


def test_gpd_view_and_moments():
    p = gi0.TextureParams(alpha=-4.0, gamma=2.0)
    assert p.gpd_shape == pytest.approx(0.25)
    assert p.gpd_scale == pytest.approx(0.5)
    assert p.tail_index == pytest.approx(5.0)
    # E Z = gamma / (-alpha - 1)
    assert gi0.moment(1.0, p) == pytest.approx(2.0 / 3.0, rel=1e-12)
    assert gi0.pwm_population(1, p) == pytest.approx(2.0 / (2.0 * 7.0), rel=1e-12)


def test_sampling_is_seeded_and_deterministic():
    p = gi0.TextureParams(alpha=-5.0, gamma=1.0)
    a = gi0.sample(200, p, seed=7)
    b = gi0.sample(200, p, seed=7)
    c = gi0.sample(200, p, seed=8)
    assert a == b
    assert a != c
    assert all(z > 0.0 for z in a)


def test_fit_recovers_parameters():
    p = gi0.TextureParams(alpha=-5.0, gamma=1.0)
    z = gi0.sample(2000, p, seed=42)
    r = gi0.fit(z, method="MLE")
    assert r.status in ("Converged", "BoundaryHit")
    assert abs(r.params.alpha - p.alpha) < 1.5
    assert abs(r.params.gamma - p.gamma) < 0.5
    assert gi0.loglik(z, r.params) >= gi0.loglik(z, p) - 1e-9


def test_every_method_label_fits():
    z = gi0.sample(300, gi0.TextureParams(-4.0, 1.0), seed=3)
    for method in ("MLE", "MPLE", "MOM", "PWM", "LME", "MDPD", "MGF:ADR", "MGF:KS"):
        r = gi0.fit(z, method=method)
        assert r.params.alpha < 0.0
        assert r.params.gamma > 0.0


def test_unknown_method_raises():
    z = gi0.sample(50, gi0.TextureParams(-4.0, 1.0), seed=3)
    with pytest.raises(Exception):
        gi0.fit(z, method="NOPE")


def test_gof_stat_under_the_true_model_is_small():
    p = gi0.TextureParams(alpha=-5.0, gamma=1.0)
    z = gi0.sample(1000, p, seed=11)
    assert gi0.gof_stat("KS", z, p) < 0.05
    assert math.isfinite(gi0.gof_stat("AD", z, p))


def test_threshold_rules():
    z = gi0.sample(500, gi0.TextureParams(-5.0, 1.0), seed=5)
    u0, exc0, kept0 = gi0.select_threshold(z, "u0")
    assert u0 == 0.0 and len(exc0) == 500 and kept0 == 1.0
    u, exc, kept = gi0.select_threshold(z, "q20")
    assert u > 0.0
    assert kept == pytest.approx(0.8, abs=0.01)
    assert all(e > 0.0 for e in exc)


def test_contaminated_sample_has_spikes():
    p = gi0.TextureParams(alpha=-5.0, gamma=1.0)
    clean = gi0.sample(2000, p, seed=9)
    dirty = gi0.sample_contaminated(2000, p, epsilon=0.05, c_value=500.0, seed=9)
    assert max(dirty) >= max(clean)
    assert sum(1 for z in dirty if z == 500.0) > 0


def test_seif_curve_shape():
    c_grid = [10.0, 100.0, 1000.0]
    xs, est = gi0.seif_curve("MDPD", 49, gi0.TextureParams(-5.0, 100.0), c_grid)
    assert xs == c_grid
    assert len(est) == 3
