import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jetflat.errors import MalformedPath
from jetflat.fourier import sup_norm
from jetflat.geodesics import (
    grid_flatness_gap,
    grid_quasi_autonomy_witness,
    integral_criterion,
    local_quasi_autonomy_check,
    minimizing_geodesic_check,
    monotone_check,
    optimize_path,
    quasi_autonomy_check,
)
from jetflat.paths import IsotopyPath
from jetflat.sampling import (
    random_function,
    random_monotone_path,
    random_path,
    random_quasi_autonomous_path,
)
from jetflat.selectors import sch_length

from conftest import fn
from oracles import grid_path_gap


def bump(shift, amp=0.2):
    # amp * cos(2 pi (q - shift))
    return fn(0.0, [amp * np.cos(2 * np.pi * shift)], [amp * np.sin(2 * np.pi * shift)])


def rotating_bump_path(n_segments=8):
    return IsotopyPath.uniform([bump(k / n_segments) for k in range(n_segments + 1)])


def reversal_path(h=None):
    h = h if h is not None else fn(0.0, [], [0.5])
    f = fn(0.0, [0.1])
    return IsotopyPath.uniform([f, f + h, f])


# -- path validation -------------------------------------------------------


def test_path_validation():
    f = fn(0.0, [0.1])
    with pytest.raises(MalformedPath):
        IsotopyPath(knots=(f,), times=(0.0,))
    with pytest.raises(MalformedPath):
        IsotopyPath(knots=(f, f), times=(0.0, 0.5))
    with pytest.raises(MalformedPath):
        IsotopyPath(knots=(f, f, f), times=(0.0, 0.6, 0.4))


# -- quasi-autonomy ----------------------------------------------------------


def test_straight_path_is_quasi_autonomous():
    h = fn(0.0, [0.3], [0.1])
    path = IsotopyPath.uniform([fn(0.0), 0.5 * h, h])
    w = quasi_autonomy_check(path)
    assert w is not None
    assert w.epsilon in (1, -1)
    assert all(r >= -1e-9 for r in w.per_knot_residuals)
    # witness point attains max h
    assert h(w.base_point[0]) == pytest.approx(sup_norm(h), abs=1e-9)


def test_rotating_bump_has_no_witness():
    assert quasi_autonomy_check(rotating_bump_path()) is None


def test_reversal_has_no_witness():
    assert quasi_autonomy_check(reversal_path()) is None


def test_constant_segments_witness_by_sign():
    up = IsotopyPath.uniform([fn(0.0), fn(0.3), fn(0.5)])
    w = quasi_autonomy_check(up)
    assert w is not None and w.epsilon == 1
    wiggle = IsotopyPath.uniform([fn(0.0), fn(0.3), fn(0.1)])
    assert quasi_autonomy_check(wiggle) is None


def test_zero_segments_are_skipped():
    h = fn(0.0, [0.2])
    path = IsotopyPath.uniform([fn(0.0), fn(0.0), h, h])
    w = quasi_autonomy_check(path)
    assert w is not None
    assert len(w.per_knot_residuals) == 3


# -- local windows -----------------------------------------------------------


def test_local_windows_quasi_autonomous_path():
    h = fn(0.0, [0.3])
    path = IsotopyPath.uniform([fn(0.0), 0.3 * h, h])
    seg = local_quasi_autonomy_check(path)
    assert seg.windows == ((0, 2),)
    assert seg.covered and seg.geodesic


def test_local_windows_reversal():
    seg = local_quasi_autonomy_check(reversal_path())
    assert seg.windows == ((0, 1), (1, 2))
    assert seg.covered  # geodesic at knot granularity, though not minimizing
    assert seg.multi_segment_windows == ()


def test_local_windows_rotating_bump():
    seg = local_quasi_autonomy_check(rotating_bump_path())
    # consecutive attaining sets are disjoint: no window straddles a knot
    assert seg.multi_segment_windows == ()
    assert all(b - a == 1 for a, b in seg.windows)


# -- integral criterion --------------------------------------------------------


def test_integral_criterion_time_independent():
    g = fn(0.0, [0.4], [0.1])
    fam = IsotopyPath.uniform([g, g, g])
    r = integral_criterion(fam)
    assert r.holds and r.witness is not None
    assert r.gap == pytest.approx(0.0, abs=1e-12)


def test_integral_criterion_sign_flip_family():
    # g_t = 2t - 1, sampled so that the kink t = 1/2 is a node: the
    # trapezoid values are exact dyadic sums
    ts = np.arange(65) / 64.0
    fam = IsotopyPath(knots=tuple(fn(2 * t - 1) for t in ts), times=tuple(ts))
    r = integral_criterion(fam)
    assert not r.holds and r.witness is None
    assert r.lhs == 0.5
    assert r.rhs == 0.0


def test_integral_criterion_growing_cosine():
    ts = np.linspace(0.0, 1.0, 33)
    fam = IsotopyPath(knots=tuple(fn(0.0, [1.0 + t]) for t in ts), times=tuple(ts))
    r = integral_criterion(fam)
    assert r.holds
    eps, point = r.witness
    assert eps == 1
    assert point[0] == pytest.approx(0.0, abs=1e-9)
    assert r.lhs == pytest.approx(1.5, abs=1e-12)


# -- minimizing geodesic check ----------------------------------------------------


def test_straight_path_minimizing():
    f, g = fn(0.0, [0.2]), fn(0.1, [], [0.3])
    rep = minimizing_geodesic_check(IsotopyPath.straight(f, g, n_knots=4))
    assert rep.minimizing
    assert rep.gap == pytest.approx(0.0, abs=1e-12)
    assert rep.witness is not None
    assert not rep.cross_check_mismatch


def test_reversal_not_minimizing_but_gap_explicit():
    h = fn(0.0, [], [0.5])
    rep = minimizing_geodesic_check(reversal_path(h))
    assert not rep.minimizing
    assert rep.gap == pytest.approx(2 * sup_norm(h), abs=1e-12)
    assert rep.witness is None
    assert not rep.cross_check_mismatch


def test_rotating_bump_gap_matches_grid_oracle():
    path = rotating_bump_path(8)
    rep = minimizing_geodesic_check(path)
    xs = np.arange(1 << 16) / (1 << 16)
    values = np.stack([k(xs) for k in path.knots])
    assert rep.gap == pytest.approx(grid_path_gap(values), abs=1e-6)
    assert not rep.minimizing and rep.witness is None


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=15)
def test_witness_iff_zero_gap_random(seed):
    rng = np.random.default_rng(seed)
    if seed % 2 == 0:
        path = random_quasi_autonomous_path(rng, n_knots=4, degree=5)
    else:
        path = random_path(rng, n_knots=4, degree=5)
    rep = minimizing_geodesic_check(path)
    assert not rep.cross_check_mismatch
    assert rep.minimizing == (rep.witness is not None)


def test_witness_stability():
    # residuals at -1e-12 or better force the minimizing gap below 1e-9
    rng = np.random.default_rng(7)
    for _ in range(10):
        path = random_quasi_autonomous_path(rng, n_knots=5, degree=6)
        w = quasi_autonomy_check(path)
        assert w is not None
        if all(r >= -1e-12 for r in w.per_knot_residuals):
            rep = minimizing_geodesic_check(path)
            assert rep.max_subpath_gap <= 1e-9


# -- monotone --------------------------------------------------------------------


def test_monotone_examples():
    assert monotone_check(IsotopyPath.uniform([fn(0.0), fn(0.35), fn(0.7)]))
    sin_path = IsotopyPath.uniform([fn(0.0), fn(0.0, [], [0.5]), fn(0.0, [], [1.0])])
    assert not monotone_check(sin_path)


def test_monotone_concatenation_closure(rng):
    a = random_monotone_path(rng, n_knots=3)
    b_knots = [a.knots[-1]]
    for _ in range(2):
        bump_fn = random_function(rng, degree=4, amplitude=0.1, zero_mean=True)
        b_knots.append(b_knots[-1] + bump_fn + (sup_norm(bump_fn) + 0.05))
    glued = IsotopyPath.uniform(list(a.knots) + b_knots[1:])
    assert monotone_check(glued)


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=20)
def test_monotone_two_formulations_agree(seed):
    rng = np.random.default_rng(seed)
    path = (
        random_monotone_path(rng, n_knots=4)
        if seed % 2
        else random_path(rng, n_knots=4, degree=5)
    )
    monotone_check(path)  # raises EquivalenceViolation on any disagreement


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=15)
def test_length_dominates_endpoint_distance(seed):
    path = random_path(np.random.default_rng(seed), n_knots=4, degree=5)
    dist = sup_norm(path.knots[-1] - path.knots[0])
    assert sch_length(path) >= dist - 1e-9


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=10)
def test_knot_granularity_geodesic_invariant(seed):
    # singleton windows always carry a witness and single-segment gaps are
    # identically zero, so the two sides of the biconditional co-vary
    path = random_path(np.random.default_rng(seed), n_knots=4, degree=5)
    seg = local_quasi_autonomy_check(path)
    single_gaps = [
        minimizing_geodesic_check(path.subpath(i, i + 1)).gap
        for i in range(path.n_segments)
    ]
    assert seg.covered == all(g <= 1e-9 for g in single_gaps)
    assert seg.covered


# -- coarse-grid model -------------------------------------------------------------


def test_grid_biconditional_small_exhaustive():
    xs = np.arange(32) / 32.0
    table = {}
    for a0 in (-1, 0, 1):
        for a1 in (-1, 0, 1):
            table[(a0, a1)] = a0 + a1 * np.cos(2 * np.pi * xs)
    keys = list(table)
    violations = 0
    for k1 in keys:
        for k2 in keys:
            for k3 in keys:
                knots = np.stack([np.zeros(32), table[k1], table[k2], table[k3]])
                deltas = np.diff(knots, axis=0)
                gap = grid_flatness_gap(deltas)
                witness = grid_quasi_autonomy_witness(deltas)
                if (gap <= 1e-9) != (witness is not None):
                    violations += 1
    assert violations == 0


def test_grid_witness_forces_zero_gap():
    xs = np.arange(32) / 32.0
    h = np.cos(2 * np.pi * xs)
    deltas = np.stack([0.5 * h, 1.5 * h, h])
    assert grid_quasi_autonomy_witness(deltas) is not None
    assert grid_flatness_gap(deltas) == pytest.approx(0.0, abs=1e-12)


# -- optimizer ----------------------------------------------------------------------


def test_optimize_constants():
    r = optimize_path(fn(0.0), fn(0.7), knots=4, restarts=2, seed=5)
    assert r.length == pytest.approx(0.7, abs=1e-12)
    assert r.gap >= -1e-9


def test_optimize_cosine_target():
    r = optimize_path(fn(0.0), fn(0.0, [0.5]), knots=6, restarts=16, seed=42)
    assert abs(r.length - 0.5) <= 1e-4
    assert r.gap >= -1e-9
    # the perturbed restarts independently descend back toward the optimum
    assert min(r.restart_lengths[1:]) <= 0.5 + 5e-2


def test_optimize_random_regression(rng):
    for _ in range(3):
        f0 = random_function(rng, degree=8)
        f1 = random_function(rng, degree=8)
        r = optimize_path(f0, f1, knots=6, restarts=8, seed=11)
        assert -1e-9 <= r.gap <= 1e-4


def test_optimize_reproducible_and_thread_safe():
    f0, f1 = fn(0.0), fn(0.0, [0.3], [0.2])
    a = optimize_path(f0, f1, knots=5, restarts=4, seed=3)
    b = optimize_path(f0, f1, knots=5, restarts=4, seed=3)
    assert a.length == b.length
    old = os.environ.get("JETFLAT_THREADS")
    os.environ["JETFLAT_THREADS"] = "4"
    try:
        c = optimize_path(f0, f1, knots=5, restarts=4, seed=3)
    finally:
        if old is None:
            os.environ.pop("JETFLAT_THREADS")
        else:
            os.environ["JETFLAT_THREADS"] = old
    assert c.length == a.length


def test_reversal_doubling_and_sch():
    h = fn(0.0, [0.25], [0.1])
    f = fn(0.1)
    one_way = IsotopyPath.uniform([f, f + h])
    there_and_back = IsotopyPath.uniform([f, f + h, f])
    assert sch_length(there_and_back) == pytest.approx(2 * sch_length(one_way), abs=1e-12)
