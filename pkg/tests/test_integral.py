import math
import os

import pytest
from hypothesis import given, strategies as st

from ladderlab.constants import EULER_GAMMA, LN_TWO_PI
from ladderlab.errors import CacheCorruptionError, DomainError, ToleranceError
from ladderlab.integral import (
    AUTO_TOL_RATE,
    CheckpointCache,
    hl_integral,
    hl_representation,
    integrate_segment,
)


def test_j_oracle_values(oracle, shared_cache):
    for key, T in (("J_100", 100.0), ("J_1000", 1000.0)):
        res = hl_integral(T, cache=shared_cache)
        assert abs(res.value - oracle[key]) <= res.abs_error_estimate
        assert abs(res.value - oracle[key]) / oracle[key] <= 1e-4


def test_zero_and_degenerate():
    assert hl_integral(0.0).value == 0.0
    seg = integrate_segment(5.0, 5.0)
    assert seg.value == 0.0 and seg.node_count == 0


def test_domain_errors():
    with pytest.raises(DomainError):
        integrate_segment(-1.0, 5.0)
    with pytest.raises(DomainError):
        integrate_segment(10.0, 5.0)
    with pytest.raises(DomainError):
        integrate_segment(1.0, 2.0, tol=0.0)
    with pytest.raises(DomainError):
        hl_integral(-0.5)


def test_additivity():
    a = integrate_segment(0.0, 80.0)
    b = integrate_segment(80.0, 130.0)
    whole = integrate_segment(0.0, 130.0)
    merged = a.merge(b)
    assert merged.a == 0.0 and merged.b == 130.0
    tol = a.abs_error_estimate + b.abs_error_estimate + whole.abs_error_estimate
    assert abs(merged.value - whole.value) <= tol


def test_merge_rejects_gap():
    a = integrate_segment(0.0, 10.0)
    c = integrate_segment(20.0, 30.0)
    with pytest.raises(DomainError):
        a.merge(c)


def test_impossible_tolerance_fails_fast():
    with pytest.raises(ToleranceError) as exc:
        integrate_segment(200.0, 260.0, tol=1e-12)
    assert exc.value.best_value is not None
    assert exc.value.best_error > 1e-12


def test_estimate_honest_on_random_segments(oracle, shared_cache):
    # bracket J(100) via two independent routes sharing no state
    direct = integrate_segment(0.0, 100.0)
    assert abs(direct.value - oracle["J_100"]) <= direct.abs_error_estimate


@given(st.floats(min_value=0.0, max_value=290.0),
       st.floats(min_value=0.0, max_value=10.0))
def test_integral_nonnegative_within_estimate(a, w):
    res = integrate_segment(a, a + w)
    assert res.value >= -res.abs_error_estimate


def test_cache_roundtrip(tmp_path):
    cache = CheckpointCache(stride=25.0)
    cache.extend_to(120.0)
    assert cache.ts == [25.0, 50.0, 75.0, 100.0]
    path = os.path.join(tmp_path, "cache.csv")
    cache.save(path)
    back = CheckpointCache.load(path)
    assert back.stride == 25.0
    assert back.ts == cache.ts and back.js == cache.js

    # idempotent: extending to a lower bound adds nothing
    back.extend_to(90.0)
    assert back.ts == cache.ts


def test_cache_corruption(tmp_path):
    path = os.path.join(tmp_path, "bad.csv")
    with open(path, "w") as fh:
        fh.write("# ladderlab cache v1 stride=50 tol=0.0015\n")
        fh.write("T,J,abs_err\n50,10,0\n40,20,0\n")
    with pytest.raises(CacheCorruptionError):
        CheckpointCache.load(path)

    with open(path, "w") as fh:
        fh.write("not,a,cache\n")
    with pytest.raises(CacheCorruptionError):
        CheckpointCache.load(path)

    with open(path, "w") as fh:
        fh.write("")
    with pytest.raises(CacheCorruptionError):
        CheckpointCache.load(path)


def test_cached_matches_fresh(shared_cache):
    cached = hl_integral(333.3, cache=shared_cache)
    fresh = hl_integral(333.3)
    assert abs(cached.value - fresh.value) <= (
        cached.abs_error_estimate + fresh.abs_error_estimate)


def test_representation_closed_form():
    phi = 137.0
    assert hl_representation(phi) == pytest.approx(
        phi * math.log(phi) + (EULER_GAMMA - LN_TWO_PI) * phi, rel=1e-15)
    with pytest.raises(DomainError):
        hl_representation(1.0)


@given(st.floats(min_value=2.0, max_value=1e8),
       st.floats(min_value=1e-6, max_value=10.0))
def test_representation_strictly_increasing(phi, d):
    assert hl_representation(phi + d) > hl_representation(phi)


def test_auto_tol_scales_with_width():
    wide = integrate_segment(100.0, 150.0)
    assert wide.abs_error_estimate <= AUTO_TOL_RATE * 50.0
