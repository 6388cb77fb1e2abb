import numpy as np
import pytest

from jetflat.contact import (
    CircleContactomorphism,
    ProductChartMap,
    contact_qa_check,
    graph_beta_residuals,
    graph_of,
    rotation,
    shelukhin_norm_upper,
    spectral_norm,
    translated_points,
)
from jetflat.errors import CrossCheckMismatch, NotADiffeomorphism
from jetflat.fourier import sup_norm
from jetflat.jets import chord_spectrum, zero_section
from jetflat.sampling import random_contactomorphism

from conftest import fn


def contacto(a0=0.0, cos=(), sin=()):
    return CircleContactomorphism(fn(a0, cos, sin))


# -- chart map ---------------------------------------------------------------


def test_chart_pullback_vanishes_on_random_tangents(rng):
    pts = rng.uniform(-1.0, 1.0, (1000, 3))
    vecs = rng.standard_normal((1000, 3))
    assert ProductChartMap.pullback_residuals(pts, vecs).max() <= 1e-12


def test_chart_sends_diagonal_to_zero_section():
    diag = np.stack([np.linspace(0, 1, 64), np.linspace(0, 1, 64), np.zeros(64)], axis=1)
    image = ProductChartMap.apply(diag)
    np.testing.assert_allclose(image[:, 1], 0.0, atol=0.0)  # p = e^0 - 1 exactly
    np.testing.assert_allclose(image[:, 2], 0.0, atol=0.0)  # z = x - x exactly


# -- graphs -------------------------------------------------------------------


def test_graph_of_identity_is_zero_section():
    assert graph_of(contacto()) == zero_section()


def test_graph_of_rotation_is_translated_zero_section():
    g = graph_of(rotation(0.3))
    assert g.generator == fn(0.3)


def test_graph_of_small_sine():
    phi = contacto(0.0, [], [0.1])
    assert graph_of(phi).generator == phi.displacement
    xs = np.arange(1000) / 1000.0
    assert graph_beta_residuals(phi, xs).max() <= 1e-12


def test_graph_rejects_non_diffeomorphism():
    with pytest.raises(NotADiffeomorphism):
        graph_of(contacto(0.0, [], [0.5]))  # 1 + f' dips below zero


# -- translated points -----------------------------------------------------------


def test_translated_points_rotation():
    spec = translated_points(rotation(0.4))
    assert spec.lengths == (0.4,)
    assert spec.plateau  # every point is translated


def test_translated_points_small_sine():
    phi = contacto(0.0, [], [0.1])
    spec = translated_points(phi)
    assert spec.lengths == pytest.approx((-0.1, 0.1), abs=1e-12)
    points = sorted(p[0] for p in spec.source.points)
    assert points == pytest.approx([0.25, 0.75], abs=1e-9)


def test_translated_points_identity():
    assert translated_points(rotation(0.0)).lengths == (0.0,)


def test_spectrum_coherence_random(rng):
    for _ in range(10):
        phi = random_contactomorphism(rng)
        direct = translated_points(phi).lengths
        via_graph = chord_spectrum(graph_of(phi), zero_section()).lengths
        np.testing.assert_allclose(direct, via_graph, atol=1e-9)


# -- spectral norm -----------------------------------------------------------------


def test_spectral_norm_rotation():
    r = spectral_norm(rotation(0.25))
    assert (r.c_plus, r.c_minus, r.norm) == (0.25, 0.25, 0.25)
    assert not r.c1_advisory


def test_spectral_norm_identity():
    r = spectral_norm(rotation(0.0))
    assert (r.c_plus, r.c_minus, r.norm) == (0.0, 0.0, 0.0)


def test_spectral_norm_small_sine():
    r = spectral_norm(contacto(0.0, [], [0.1]))
    assert r.c_plus == pytest.approx(0.1, abs=1e-12)
    assert r.c_minus == pytest.approx(-0.1, abs=1e-12)
    assert r.norm == pytest.approx(0.1, abs=1e-12)


def test_c1_advisory_flag():
    small = random_contactomorphism(np.random.default_rng(1), c1_target=0.3)
    big = CircleContactomorphism(small.displacement * (0.9 / 0.3))
    assert not spectral_norm(small).c1_advisory
    assert spectral_norm(big).c1_advisory


def test_norm_duality_through_negation(rng):
    for _ in range(5):
        phi = random_contactomorphism(rng)
        neg = CircleContactomorphism(-phi.displacement)
        assert spectral_norm(phi).c_plus == pytest.approx(
            -spectral_norm(neg).c_minus, abs=1e-12
        )


def test_reeb_compatibility_shift(rng):
    phi = random_contactomorphism(rng)
    t = 0.3
    shifted = CircleContactomorphism(phi.displacement + t)
    a, b = spectral_norm(phi), spectral_norm(shifted)
    assert b.c_plus == pytest.approx(a.c_plus + t, abs=1e-12)
    assert b.c_minus == pytest.approx(a.c_minus + t, abs=1e-12)


# -- contact quasi-autonomy ----------------------------------------------------------


def test_contact_qa_rotations():
    path = [rotation(0.0), rotation(0.2), rotation(0.4)]
    w = contact_qa_check(path)
    assert w is not None and w.epsilon == 1


def test_contact_qa_scaled_sine():
    path = [contacto(0.0, [], [0.1 * t]) for t in (0.0, 0.5, 1.0)]
    w = contact_qa_check(path)
    assert w is not None
    assert w.epsilon == 1
    assert w.base_point[0] == pytest.approx(0.25, abs=1e-9)


def test_contact_qa_rotating_profile():
    path = [
        contacto(0.0, [-0.1 * np.sin(2 * np.pi * k / 8)], [0.1 * np.cos(2 * np.pi * k / 8)])
        for k in range(9)
    ]
    assert contact_qa_check(path) is None


def test_contact_qa_cross_check_requires_translated_points():
    # witness exists on the jet side, but the base point moves slopes of the
    # knots themselves: the translated-point form fails away from the identity
    start = contacto(0.0, [], [0.1])
    end = CircleContactomorphism(start.displacement + fn(0.0, [0.05]))
    with pytest.raises(CrossCheckMismatch):
        contact_qa_check([start, end])


# -- upper bound -----------------------------------------------------------------------


def test_upper_bound_rotation():
    assert shelukhin_norm_upper(rotation(0.3), knots=4, restarts=2, seed=0) == pytest.approx(
        0.3, abs=1e-9
    )


def test_upper_bound_small_sine():
    phi = contacto(0.0, [], [0.1])
    upper = shelukhin_norm_upper(phi, knots=6, restarts=8, seed=2)
    assert abs(upper - 0.1) <= 1e-4


def test_upper_bound_two_harmonics():
    phi = contacto(0.0, [0.05], [0.0, 0.02])
    upper = shelukhin_norm_upper(phi, knots=6, restarts=8, seed=4)
    assert abs(upper - sup_norm(phi.displacement)) <= 1e-4
