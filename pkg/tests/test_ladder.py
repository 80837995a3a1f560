import pytest
from hypothesis import given, strategies as st

from ladderlab.errors import DomainError
from ladderlab.integral import hl_integral, hl_representation
from ladderlab.ladder import ascend, build_tower, descend, lngamma_increment_pair


def test_roundtrip_at_1000(shared_cache, calibration):
    up = ascend(1000.0, cache=shared_cache)
    assert up == pytest.approx(calibration["ladder"]["ascend_1000"], rel=1e-9)
    back = descend(up, cache=shared_cache)
    assert abs(back - 1000.0) <= 2e-6


def test_descend_matches_calibration(shared_cache, calibration):
    assert descend(100.0, cache=shared_cache) == pytest.approx(
        calibration["ladder"]["descend_100"], rel=1e-9)
    assert descend(1000.0, cache=shared_cache) == pytest.approx(
        calibration["ladder"]["descend_1000"], rel=1e-9)


def test_ascent_defining_equation(shared_cache):
    # J at the ascent equals the closed-form representation at the base
    T = 700.0
    up = ascend(T, cache=shared_cache)
    j_up = hl_integral(up, cache=shared_cache)
    assert abs(j_up.value - hl_representation(T)) <= 1e-4 + j_up.abs_error_estimate


def test_descent_defining_equation(shared_cache):
    T = 700.0
    phi = descend(T, cache=shared_cache)
    j_t = hl_integral(T, cache=shared_cache)
    assert abs(hl_representation(phi) - j_t.value) <= 1e-4 + j_t.abs_error_estimate


@given(st.floats(min_value=150.0, max_value=4e3))
def test_ascend_strictly_above(shared_cache, T):
    assert ascend(T, cache=shared_cache) > T


@given(st.floats(min_value=150.0, max_value=4e3))
def test_descend_strictly_below(shared_cache, T):
    assert descend(T, cache=shared_cache) < T


def test_floor_enforced(shared_cache):
    for fn in (ascend, descend):
        with pytest.raises(DomainError):
            fn(99.0, cache=shared_cache)


def test_tower_structure(shared_cache, calibration):
    tower = build_tower(5000.0, 3, cache=shared_cache)
    assert tower.k == 3
    assert len(tower.iterates) == 4
    assert tower.iterates[0] == 5000.0
    ref = calibration["ladder"]["tower_5000_k3"]
    for got, want in zip(tower.iterates, ref):
        assert got == pytest.approx(want, rel=1e-9)
    its = tower.iterates
    assert all(b > a for a, b in zip(its, its[1:]))
    assert len(tower.residuals) == 3
    assert all(abs(r) <= 1e-5 for r in tower.residuals)


def test_tower_k_validation(shared_cache):
    with pytest.raises(DomainError):
        build_tower(1000.0, 0, cache=shared_cache)


def test_lngamma_increment_pair(shared_cache):
    lg_inc, rung = lngamma_increment_pair(1000.0, 1, cache=shared_cache)
    # both sides are increments over the same rung; same scale, same sign
    assert lg_inc > 0.0 and rung > 0.0
    assert 0.3 <= lg_inc / rung <= 3.0
