"""Tests for the constrained-optimization oracle."""

import math

import numpy as np
import pytest

from conftest import random_chamber_point
from gatepower import (
    Direction,
    OptimizerConfig,
    c1_min,
    c0_max,
    canonical_gate,
    concurrence,
    envelope_scan,
    extremal_concurrence,
    power_interval,
    reach_target,
    to_magic_coefficients,
    verify_profile,
)
from gatepower.oracle import _descend, _initial_starts, _Objective, _pack_result
from gatepower.canonical import eigen_phases

QUARTER_PI = math.pi / 4
FAST = OptimizerConfig(starts=24, seed=13)


def test_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(starts=0)
    with pytest.raises(ValueError):
        OptimizerConfig(penalty_weight_schedule=(10.0, 10.0))
    with pytest.raises(ValueError):
        OptimizerConfig(penalty_weight_schedule=(-1.0, 2.0))


def test_rejects_bad_c0():
    with pytest.raises(ValueError):
        extremal_concurrence([0, 0, 0], 1.2, Direction.MAX, FAST)


def test_identity_gate_cannot_change_concurrence():
    for c0 in (0.0, 0.37, 1.0):
        r = extremal_concurrence([0, 0, 0], c0, Direction.MAX, FAST)
        assert abs(r.extremal_concurrence - c0) <= 1e-6
        assert r.converged
        assert r.constraint_violation <= 1e-8


def test_saturating_gate_reaches_one_from_product_states():
    r = extremal_concurrence([QUARTER_PI, 0, 0], 0.0, Direction.MAX, FAST)
    assert abs(r.extremal_concurrence - 1.0) <= 1e-4
    assert r.converged


def test_half_cnot_maximum_from_c0_06():
    r = extremal_concurrence([math.pi / 8, 0, 0], 0.6, Direction.MAX, FAST)
    assert abs(r.extremal_concurrence - 0.98994949366) <= 1e-3
    assert r.converged


def test_swap_class_preserves_maximal_entanglement():
    r = extremal_concurrence([QUARTER_PI] * 3, 1.0, Direction.MIN, FAST)
    assert abs(r.extremal_concurrence - 1.0) <= 1e-6
    assert r.converged


def test_achiever_is_a_feasible_witness():
    w = np.array([0.45, 0.3, -0.1])
    for direction in (Direction.MAX, Direction.MIN):
        r = extremal_concurrence(w, 0.4, direction, FAST)
        assert abs(np.linalg.norm(r.achiever) - 1.0) <= 1e-10
        assert abs(concurrence(r.achiever) - 0.4) <= 1e-8
        out = concurrence(canonical_gate(w) @ r.achiever)
        assert abs(out - r.extremal_concurrence) <= 1e-9


def test_oracle_stays_inside_closed_form_interval():
    rng = np.random.default_rng(3)
    for _ in range(5):
        w = random_chamber_point(rng)
        c0 = float(rng.uniform(0, 1))
        closed = power_interval(w, c0)
        hi = extremal_concurrence(w, c0, Direction.MAX, FAST)
        lo = extremal_concurrence(w, c0, Direction.MIN, FAST)
        assert hi.extremal_concurrence <= closed.c_max + 1e-6
        assert lo.extremal_concurrence >= closed.c_min - 1e-6


def test_extremal_achiever_has_two_equal_coefficients():
    w = np.array([0.31, 0.22, 0.08])  # non saturating, generic eigenphases
    c0 = 0.5 * c1_min(w)
    r = extremal_concurrence(w, c0, Direction.MAX, OptimizerConfig(seed=2))
    assert r.converged
    mods = np.sort(np.abs(to_magic_coefficients(r.achiever)))[::-1]
    assert np.all(mods[:2] > 1e-4)
    assert np.all(mods[2:] <= 1e-4)
    np.testing.assert_allclose(mods[:2], 1 / math.sqrt(2), atol=1e-3)


def test_determinism():
    w = np.array([0.5, 0.21, -0.17])
    a = extremal_concurrence(w, 0.3, Direction.MAX, FAST)
    b = extremal_concurrence(w, 0.3, Direction.MAX, FAST)
    assert a.extremal_concurrence == b.extremal_concurrence
    assert a.starts_agreeing == b.starts_agreeing
    np.testing.assert_array_equal(a.achiever, b.achiever)


def test_unconverged_runs_are_flagged_not_raised():
    lam = eigen_phases([0.5, 0.21, -0.17])
    obj = _Objective(lam, 0.3, -1.0)
    z = _initial_starts(0.3, FAST)
    z, converged = _descend(z, obj, 0, 1e-10, feasible=True, c0=0.3)
    assert not converged.any()
    result = _pack_result(obj, z, converged, 0.3, True, None)
    assert result.converged is False


def test_envelope_scan_identity():
    rows = envelope_scan([0, 0, 0], [0.0, 0.5, 1.0], FAST)
    for row in rows:
        assert abs(row.oracle_min - row.c0) <= 1e-6
        assert abs(row.oracle_max - row.c0) <= 1e-6
        assert row.samples_inside


def test_envelope_scan_saturating_gate():
    rows = envelope_scan([QUARTER_PI, 0, 0], [0.0, 1.0], FAST)
    for row in rows:
        assert row.oracle_min <= 1e-4
        assert row.oracle_max >= 1.0 - 1e-4
        assert row.samples_inside


def test_envelope_scan_half_cnot_from_product():
    rows = envelope_scan([math.pi / 8, 0, 0], [0.0], FAST)
    assert abs(rows[0].oracle_max - math.sin(QUARTER_PI)) <= 1e-3
    assert rows[0].oracle_min <= 1e-6
    assert rows[0].samples_inside


def test_interior_targets_are_attainable():
    rng = np.random.default_rng(17)
    w = np.array([0.52, 0.33, 0.11])
    c0 = 0.45
    lo = extremal_concurrence(w, c0, Direction.MIN, FAST).extremal_concurrence
    hi = extremal_concurrence(w, c0, Direction.MAX, FAST).extremal_concurrence
    assert hi - lo > 0.05
    for _ in range(3):
        target = float(rng.uniform(lo + 0.01, hi - 0.01))
        r = reach_target(w, c0, target, FAST)
        assert abs(r.extremal_concurrence - target) <= 1e-4
        assert abs(concurrence(r.achiever) - c0) <= 1e-8


def test_verify_profile_swap_is_tight():
    report = verify_profile([QUARTER_PI] * 3, np.linspace(0, 1, 11), FAST, tol=1e-6)
    assert report.passed
    for row in report.rows:
        assert row.deviation_min <= 1e-6
        assert row.deviation_max <= 1e-6


def test_verify_profile_saturating_gate():
    report = verify_profile([QUARTER_PI, 0, 0], np.linspace(0, 1, 11), FAST)
    assert report.passed
    for row in report.rows:
        assert row.closed_min == 0.0 and row.closed_max == 1.0


def test_verify_profile_failures_are_data():
    report = verify_profile([QUARTER_PI] * 3, [0.5], FAST, tol=1e-18)
    assert not report.passed
    assert report.rows[0].passed is False


def test_verify_profile_rejects_bad_tol():
    with pytest.raises(ValueError):
        verify_profile([0, 0, 0], [0.5], FAST, tol=0.0)


def test_gates_straddling_the_saturation_boundary():
    # a2 + |a3| within 1e-3 of pi/4 on both sides: the hardest landscape
    # for the search, and the branch boundary for the closed forms.
    cfg = OptimizerConfig(seed=42)
    for eps in (1e-3, -1e-3):
        w = np.array([0.75, 0.35, QUARTER_PI - 0.35 + eps])
        for c0 in (0.0, 0.7):
            closed = power_interval(w, c0)
            hi = extremal_concurrence(w, c0, Direction.MAX, cfg)
            lo = extremal_concurrence(w, c0, Direction.MIN, cfg)
            assert hi.converged and lo.converged
            assert abs(hi.extremal_concurrence - closed.c_max) <= 1e-3
            assert abs(lo.extremal_concurrence - closed.c_min) <= 1e-3


def test_conjugate_classes_have_identical_power():
    cfg = OptimizerConfig(starts=16, seed=5)
    w = [0.6, 0.4, 0.2]
    flipped = [0.6, 0.4, -0.2]
    for c0 in (0.2, 0.8):
        a = extremal_concurrence(w, c0, Direction.MAX, cfg).extremal_concurrence
        b = extremal_concurrence(flipped, c0, Direction.MAX, cfg).extremal_concurrence
        assert abs(a - b) <= 1e-6
