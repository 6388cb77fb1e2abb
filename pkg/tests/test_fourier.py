import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jetflat.errors import DimensionMismatch
from jetflat.fourier import (
    TORUS2,
    FourierFunction,
    attaining_set,
    critical_set,
    evaluate,
    extremum,
    is_morse,
    sup_norm,
    sup_norm_by_squaring,
)

from conftest import fn
from oracles import dense_max, dense_sup_norm, eval_direct

coeff_lists = st.lists(st.floats(-1.0, 1.0), min_size=0, max_size=4)


# -- evaluation ------------------------------------------------------------


def test_constant_evaluation():
    assert evaluate(fn(0.5), 0.3) == 0.5


def test_unit_cosine_at_zero():
    assert evaluate(fn(0.0, [1.0]), 0.0) == 1.0


def test_evaluation_matches_direct_summation():
    f = fn(0.0, [1.0, 0.5])
    g = fn(0.0, [1.0], [0.0, 0.5])  # cos(2 pi q) + 0.5 sin(4 pi q)
    assert g(0.25) == pytest.approx(eval_direct(0.0, [1.0], [0.0, 0.5], 0.25), abs=1e-14)
    xs = np.linspace(0.0, 1.0, 17)
    np.testing.assert_allclose(f(xs), eval_direct(0.0, [1.0, 0.5], [], xs), atol=1e-13)


def test_evaluation_matches_dense_grid_oracle():
    g = fn(0.1, [1.0, 0.2], [0.0, 0.5])
    n = 1 << 20
    xs = np.arange(n) / n
    gap = np.max(np.abs(g.values_on_grid(n) - eval_direct(0.1, [1.0, 0.2], [0.0, 0.5], xs)))
    assert gap <= 1e-12


@given(coeff_lists, coeff_lists, st.floats(0.0, 1.0))
def test_evaluation_periodicity(cos, sin, x):
    f = fn(0.1, cos, sin)
    assert f(x) == pytest.approx(f(x + 1.0), abs=1e-10)
    assert f(x) == pytest.approx(f(x - 3.0), abs=1e-10)


def test_dimension_mismatch_errors():
    f = fn(0.0, [1.0])
    with pytest.raises(DimensionMismatch):
        f(np.zeros((4, 2)))  # torus-style points on a circle function
    t = FourierFunction.from_torus_coeffs(0.0, [[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(DimensionMismatch):
        t(np.array([0.1, 0.2, 0.3]))


def test_torus_evaluation_separable():
    t = FourierFunction.from_torus_coeffs(0.0, [[0.0, 1.0], [1.0, 0.0]])
    for q1, q2 in [(0.0, 0.0), (0.3, 0.7), (0.5, 0.25)]:
        expect = np.cos(2 * np.pi * q1) + np.cos(2 * np.pi * q2)
        assert t((q1, q2)) == pytest.approx(expect, abs=1e-12)


def test_torus_mixed_terms():
    # sin(2 pi q1) * cos(4 pi q2)
    sc = np.zeros((3, 3))
    sc[1, 2] = 1.0
    t = FourierFunction.from_torus_coeffs(0.0, np.zeros((3, 3)), sc=sc)
    q1, q2 = 0.2, 0.15
    assert t((q1, q2)) == pytest.approx(
        np.sin(2 * np.pi * q1) * np.cos(4 * np.pi * q2), abs=1e-12
    )


# -- derivatives -----------------------------------------------------------


@given(coeff_lists, coeff_lists)
def test_derivative_is_analytic_limit(cos, sin):
    f = fn(0.3, cos, sin)
    fp = f.derivative()
    x = 0.37
    errs = [abs((f(x + h) - f(x - h)) / (2 * h) - fp(x)) for h in (1e-2, 1e-3, 1e-4)]
    scale = sum(abs(c) for c in cos) + sum(abs(s) for s in sin)
    if scale > 1e-3 and errs[0] > 1e-9:  # only meaningful when f actually bends
        assert errs[1] <= errs[0] * 0.05
        assert errs[2] <= errs[1] * 0.05 + 1e-12


def test_gradient_on_torus():
    sc = np.zeros((2, 2))
    sc[1, 1] = 1.0  # sin(2 pi q1) cos(2 pi q2)
    t = FourierFunction.from_torus_coeffs(0.0, np.zeros((2, 2)), sc=sc)
    g1, g2 = t.gradient()
    q = (0.1, 0.2)
    assert g1(q) == pytest.approx(
        2 * np.pi * np.cos(2 * np.pi * 0.1) * np.cos(2 * np.pi * 0.2), abs=1e-12
    )
    assert g2(q) == pytest.approx(
        -2 * np.pi * np.sin(2 * np.pi * 0.1) * np.sin(2 * np.pi * 0.2), abs=1e-12
    )


# -- extremum --------------------------------------------------------------


def test_extremum_zero_function():
    value, point = extremum(fn(0.0), "max")
    assert value == 0.0
    assert len(point) == 1


def test_extremum_amplitude():
    f = fn(0.0, [0.3], [-0.1])
    assert extremum(f, "max").value == pytest.approx(np.sqrt(0.1), abs=1e-12)
    assert extremum(f, "max").value == pytest.approx(
        dense_max(0.0, [0.3], [-0.1]), abs=1e-12
    )
    assert extremum(f, "min").value == pytest.approx(-np.sqrt(0.1), abs=1e-12)


def test_extremum_torus_separable():
    t = FourierFunction.from_torus_coeffs(0.0, [[0.0, 1.0], [1.0, 0.0]])
    value, point = extremum(t, "max")
    assert value == pytest.approx(2.0, abs=1e-12)
    assert point == (0.0, 0.0)


def test_argmax_of_negation_is_argmin():
    f = fn(0.1, [0.2, -0.3], [0.15])
    assert extremum(-f, "max").point == extremum(f, "min").point
    assert extremum(-f, "max").value == -extremum(f, "min").value


def test_extremum_tie_break_lexicographic():
    f = fn(0.0, [0.0, 1.0])  # cos(4 pi q): maxima at 0 and 1/2
    assert extremum(f, "max").point == (0.0,)
    _, pts = attaining_set(f, "max")
    assert len(pts) == 2
    assert pts[0][0] == pytest.approx(0.0, abs=1e-9)
    assert pts[1][0] == pytest.approx(0.5, abs=1e-9)


@given(coeff_lists, coeff_lists)
def test_extremum_sandwich(cos, sin):
    f = fn(0.0, cos, sin)
    grid = f.values_on_grid(512)
    lo = extremum(f, "min").value
    hi = extremum(f, "max").value
    assert lo <= grid.min() + 1e-12
    assert hi >= grid.max() - 1e-12
    assert lo <= hi


def test_sup_norm_two_routes_agree(rng):
    for _ in range(20):
        k = np.arange(1, 9.0)
        f = fn(rng.normal(), rng.normal(size=8) / (1 + k), rng.normal(size=8) / (1 + k))
        a = sup_norm(f)
        b = sup_norm_by_squaring(f)
        assert a == pytest.approx(b, abs=1e-12)
        a0, ca, sa = f.circle_cos_sin()
        assert a == pytest.approx(dense_sup_norm(a0, ca, sa), abs=1e-11)


# -- critical sets ----------------------------------------------------------


def test_critical_values_of_cosine():
    cs = critical_set(fn(0.0, [1.0]))
    assert cs.values == pytest.approx((-1.0, 1.0), abs=1e-12)
    assert not cs.plateau
    assert sorted(p[0] for p in cs.points) == pytest.approx([0.0, 0.5], abs=1e-9)


def test_critical_set_constant_plateau():
    cs = critical_set(fn(0.25))
    assert cs.plateau
    assert cs.values == (0.25,)


def test_critical_values_double_frequency():
    cs = critical_set(fn(0.0, [0.0, 1.0]))
    assert cs.values == pytest.approx((-1.0, 1.0), abs=1e-12)
    assert len(cs.points) == 4  # each value attained twice


def test_critical_set_contains_tangential_zero():
    # sin(2 pi q)(1 - cos(2 pi q)) = sin(2 pi q) - 0.5 sin(4 pi q):
    # f'(0) = 0 without a sign change
    f = fn(0.0, [], [1.0, -0.5])
    cs = critical_set(f)
    assert any(abs(v) < 1e-9 for v in cs.values)
    peak = 1.5 * np.sqrt(3.0) / 2.0
    assert max(cs.values) == pytest.approx(peak, abs=1e-9)
    assert min(cs.values) == pytest.approx(-peak, abs=1e-9)


@given(coeff_lists, coeff_lists, st.floats(-2.0, 2.0))
def test_critical_values_shift_by_constant(cos, sin, c):
    f = fn(0.1, cos, sin)
    base = critical_set(f).values
    shifted = critical_set(f + c).values
    assert len(base) == len(shifted)
    np.testing.assert_allclose(shifted, np.asarray(base) + c, atol=1e-11)


@given(coeff_lists, coeff_lists)
def test_critical_values_negate(cos, sin):
    f = fn(0.1, cos, sin)
    base = critical_set(f).values
    negated = critical_set(-f).values
    np.testing.assert_allclose(sorted(-v for v in base), negated, atol=1e-14)


@given(coeff_lists, coeff_lists)
def test_extrema_appear_among_critical_values(cos, sin):
    f = fn(0.0, cos, sin)
    cs = critical_set(f)
    for mode in ("max", "min"):
        v = extremum(f, mode).value
        assert any(abs(v - w) <= 2 * cs.tolerance for w in cs.values)


def test_stored_points_satisfy_point_tolerance(rng):
    for _ in range(10):
        k = np.arange(1, 7.0)
        f = fn(rng.normal(), rng.normal(size=6) / (1 + k), rng.normal(size=6) / (1 + k))
        cs = critical_set(f)
        fp = f.derivative()
        assert all(abs(fp(p[0])) <= cs.point_tolerance for p in cs.points)


def test_critical_set_torus_separable():
    t = FourierFunction.from_torus_coeffs(0.0, [[0.0, 1.0], [1.0, 0.0]])
    cs = critical_set(t)
    assert cs.values == pytest.approx((-2.0, 0.0, 2.0), abs=1e-10)
    assert len(cs.points) == 4


# -- Morse test --------------------------------------------------------------


def test_is_morse_cosine():
    assert is_morse(fn(0.0, [1.0]))


def test_is_morse_constant_false():
    assert not is_morse(fn(1.3))


def test_is_morse_degenerate_critical_point():
    assert not is_morse(fn(0.0, [], [1.0, -0.5]))


def test_is_morse_torus():
    t = FourierFunction.from_torus_coeffs(0.0, [[0.0, 1.0], [1.0, 0.0]])
    assert is_morse(t)
    assert not is_morse(FourierFunction.constant(0.3, TORUS2))


# -- structure ---------------------------------------------------------------


def test_equality_is_exact_coefficient_agreement():
    a = fn(0.1, [0.2])
    assert a == fn(0.1, [0.2])
    assert a == fn(0.1, [0.2, 0.0])  # padding does not matter
    assert a != fn(0.1, [0.2 + 1e-16])
    assert a != FourierFunction.constant(0.1, TORUS2)


def test_immutability():
    f = fn(0.1, [0.2])
    with pytest.raises(AttributeError):
        f.domain = TORUS2
    with pytest.raises(ValueError):
        f.coeffs[0] = 1.0


def test_arithmetic_roundtrip():
    a = fn(0.3, [0.5], [0.1])
    b = fn(-0.2, [0.0, 1.0])
    assert (a + b - b) == a
    assert (2.0 * a - a) == a
    assert (a + 1.5).mean_value == pytest.approx(1.8)
    assert (-a)(0.3) == -a(0.3)


def test_multiply_exactness(rng):
    a = fn(0.3, rng.normal(size=3), rng.normal(size=3))
    b = fn(-0.1, rng.normal(size=2), rng.normal(size=2))
    prod = a.multiply(b)
    assert prod.degree == a.degree + b.degree
    for x in rng.uniform(0, 1, 8):
        assert prod(x) == pytest.approx(a(x) * b(x), abs=1e-13)
