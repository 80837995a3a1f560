import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ladderlab.errors import DomainError
from ladderlab.fermat import (
    DEFAULT_TAU_GRID,
    FUNCTIONAL_IDS,
    FermatRational,
    enumerate_fermat_rationals,
    evaluate_equivalent,
    exhaustive_exact_check,
    scan,
)
from ladderlab.integral import CheckpointCache


def test_rational_exact_arithmetic():
    q = FermatRational(6, 8, 9, 3)
    assert q.numerator == 728
    assert q.fraction == Fraction(728, 729)
    assert q.label() == "728/729"
    assert q.value == 728 / 729


def test_rational_validation():
    with pytest.raises(DomainError):
        FermatRational(0, 1, 1, 3)
    with pytest.raises(DomainError):
        FermatRational(1, 1, 1, 2)


def test_enumeration_small():
    rs = enumerate_fermat_rationals(3, 2)
    vals = sorted(float(r.fraction) for r in rs)
    assert vals == [0.25, 1.125, 2.0, 9.0, 16.0]
    # sorted by distance from 1, witness triples lexicographically minimal
    assert [r.fraction for r in rs] == [
        Fraction(9, 8), Fraction(1, 4), Fraction(2), Fraction(9), Fraction(16)]
    assert (rs[0].x, rs[0].y, rs[0].z) == (1, 2, 2)


def test_enumeration_window():
    rs = enumerate_fermat_rationals(3, 12, window=(0.99, 1.01))
    labels = {r.label() for r in rs}
    assert "728/729" in labels
    assert all(0.99 < float(r.fraction) < 1.01 for r in rs)
    assert all(abs(a.fraction - 1) <= abs(b.fraction - 1)
               for a, b in zip(rs, rs[1:]))


def test_enumeration_dedupes_scaled_triples():
    rs = enumerate_fermat_rationals(3, 4)
    # (1,1,1) and (2,2,2) both give q = 2; only one row survives
    twos = [r for r in rs if r.fraction == 2]
    assert len(twos) == 1
    assert (twos[0].x, twos[0].y, twos[0].z) == (1, 1, 1)


def test_enumeration_validation():
    with pytest.raises(DomainError):
        enumerate_fermat_rationals(2, 5)
    with pytest.raises(DomainError):
        enumerate_fermat_rationals(3, 0)


def test_exact_check_counts():
    assert exhaustive_exact_check((3,), 10) == 10 * (10 * 11 // 2)
    with pytest.raises(DomainError):
        exhaustive_exact_check((2,), 5)


@given(st.integers(min_value=1, max_value=30), st.integers(min_value=1, max_value=30),
       st.integers(min_value=1, max_value=30), st.integers(min_value=3, max_value=6))
def test_no_exact_solutions_property(x, y, z, n):
    assert x ** n + y ** n != z ** n


def test_unknown_functional_rejected():
    q = FermatRational(1, 1, 1, 3)
    with pytest.raises(DomainError):
        evaluate_equivalent("nonsense", q)
    with pytest.raises(DomainError):
        scan(["nonsense"], n=3, max_xyz=2)


def test_row_schema_and_statuses(shared_cache):
    q2 = FermatRational(1, 1, 1, 3)
    row = evaluate_equivalent("zeta-segment", q2, cache=shared_cache, t_cap=1e4)
    d = row.to_dict()
    assert set(d) == {"functional", "x", "y", "z", "n", "q", "tau_max",
                      "value", "target", "forbidden", "distance",
                      "est_error", "status", "note"}
    assert row.status == "resolved"
    assert row.distance > row.est_error
    assert row.forbidden == 1.0 and row.target == 2.0


def test_exp_scale_guard(shared_cache):
    # tau^16 cannot stay inside the engine range: hard infeasibility
    q16 = FermatRational(2, 2, 1, 3)
    row = evaluate_equivalent("zeta-log", q16, cache=shared_cache, t_cap=1e4)
    assert row.status == "infeasible"
    assert row.value is None and row.distance is None
    assert "no feasible tau" in row.note


def test_linear_scale_cap_is_unresolved(shared_cache):
    # huge q pushes every rung past the engine cap; flagged, not fatal
    q_big = FermatRational(12, 12, 1, 3)
    row = evaluate_equivalent("gamma", q_big, cache=shared_cache, t_cap=1e4)
    assert row.status == "unresolved at desk scale"
    assert row.value is None


def test_gamma_exp_overflow_guard(shared_cache):
    big = FermatRational(12, 12, 1, 3)  # q = 3456, e^q overflows
    row = evaluate_equivalent("gamma-exp", big, cache=shared_cache, t_cap=1e4)
    assert row.status == "infeasible"
    assert row.target is None


def test_t1_t2_forbidden_constants(shared_cache):
    q2 = FermatRational(1, 1, 1, 3)
    r1 = evaluate_equivalent("t1", q2, cache=shared_cache, t_cap=1e4)
    assert r1.forbidden == pytest.approx(1.0 / math.pi, rel=1e-15)
    assert r1.target == pytest.approx(2.0 / math.pi, rel=1e-15)


def test_scan_report_shape(shared_cache):
    rep = scan(["zeta-segment", "gamma"], n=3, max_xyz=2,
               cache=shared_cache, t_cap=1e4)
    assert len(rep.rows) == 10
    # all functional ids grouped, rationals ordered by |q - 1| within
    assert [r.functional for r in rep.rows[:5]] == ["zeta-segment"] * 5
    parsed = json.loads(rep.to_json())
    assert parsed["n"] == 3 and parsed["max_xyz"] == 2
    assert len(parsed["rows"]) == 10
    assert parsed["metadata"]["t_cap"] == 1e4


def test_scan_window_passthrough(shared_cache):
    rep = scan(["gamma"], n=3, max_xyz=9, window=(0.99, 1.01),
               cache=shared_cache, t_cap=1e4)
    assert all(0.99 < r.q < 1.01 for r in rep.rows)
    assert any((r.x, r.y, r.z) == (6, 8, 9) for r in rep.rows)
    parsed = json.loads(rep.to_json())
    assert parsed["window"] == [0.99, 1.01]


def test_scan_matches_calibration(shared_cache, calibration):
    q2 = FermatRational(1, 1, 1, 3)
    row = evaluate_equivalent("gamma", q2, cache=shared_cache)
    ref = calibration["scan_rows"]["gamma_q2"]
    assert row.value == pytest.approx(ref["value"], rel=1e-9)
    assert row.est_error == pytest.approx(ref["est_error"], rel=1e-9)
    assert row.status == ref["status"]


def test_all_functional_ids_run(shared_cache):
    q = FermatRational(1, 2, 2, 3)  # q = 9/8
    for fid in FUNCTIONAL_IDS:
        row = evaluate_equivalent(fid, q, cache=shared_cache, t_cap=1e4)
        assert row.functional == fid
        assert row.status in ("resolved", "unresolved at desk scale", "infeasible")
        if row.value is not None:
            assert math.isfinite(row.value)


def test_default_grid_is_sane():
    assert list(DEFAULT_TAU_GRID) == sorted(DEFAULT_TAU_GRID)
    assert DEFAULT_TAU_GRID[0] >= 20.0
