import numpy as np
import pytest
from hypothesis import given, settings

import photonfield as pf

from conftest import unit_vectors

SQRT2 = np.sqrt(2.0)


def direction(*v):
    a = np.asarray(v, dtype=float)
    return pf.Direction(k=a / np.linalg.norm(a))


def test_axis_gauge_is_cartesian():
    triad = pf.make_triad(pf.Direction(k=np.array([0.0, 0.0, 1.0])))
    assert np.allclose(triad.e_hat, [1.0, 0.0, 0.0], atol=0)
    assert np.allclose(triad.b_hat, [0.0, 1.0, 0.0], atol=0)


def test_axis_eps_plus():
    triad = pf.make_triad(pf.Direction(k=np.array([0.0, 0.0, 1.0])))
    assert np.allclose(triad.eps_plus, np.array([1.0, 1.0j, 0.0]) / SQRT2, atol=1e-15)


def test_x_axis_triad_invariants():
    k = direction(1, 0, 0)
    triad = pf.make_triad(k)
    assert abs(np.dot(triad.e_hat, k.k)) < 1e-12
    assert np.max(np.abs(np.cross(k.k, triad.e_hat) - triad.b_hat)) == 0.0


def test_non_unit_direction_rejected():
    with pytest.raises(ValueError):
        pf.Direction(k=np.array([0.0, 0.0, 2.0]))


def test_degenerate_gauge_reference_rejected():
    k = pf.Direction(k=np.array([0.0, 0.0, 1.0]))
    with pytest.raises(ValueError):
        pf.make_triad(k, reference=np.array([0.0, 0.0, 1.0]))


def test_phase_shift_identity_and_negation():
    triad = pf.make_triad(direction(0, 0, 1))
    plus, minus = pf.phase_shift(triad, 0.0)
    assert np.allclose(plus, triad.eps_plus, atol=0)
    assert np.allclose(minus, triad.eps_minus, atol=0)
    plus, minus = pf.phase_shift(triad, np.pi)
    assert np.allclose(plus, -triad.eps_plus, atol=1e-15)
    assert np.allclose(minus, -triad.eps_minus, atol=1e-15)


def test_phase_shift_quarter_turn():
    triad = pf.make_triad(direction(0, 0, 1))
    plus, _ = pf.phase_shift(triad, np.pi / 4)
    expected = np.exp(-1j * np.pi / 4) * np.array([1.0, 1.0j, 0.0]) / SQRT2
    assert np.allclose(plus, expected, atol=1e-15)
    assert np.allclose(np.abs(plus), np.abs(triad.eps_plus), atol=1e-15)


def test_cross_product_of_opposite_helicities():
    triad = pf.make_triad(direction(0, 0, 1))
    got = np.cross(triad.eps_plus, triad.eps_minus)
    assert np.allclose(got, [0.0, 0.0, 1.0], atol=1e-15)


def test_minus_is_i_conjugate_of_plus():
    triad = pf.make_triad(direction(0, 0, 1))
    assert np.allclose(triad.eps_minus, np.array([1.0j, 1.0, 0.0]) / SQRT2, atol=1e-15)
    assert np.allclose(triad.eps_minus, 1j * np.conj(triad.eps_plus), atol=1e-15)


def test_plus_normalization():
    triad = pf.make_triad(direction(0.3, -0.9, 0.8))
    assert abs(np.dot(np.conj(triad.eps_plus), triad.eps_plus) - 1.0) < 1e-14


def test_completeness_axis_cases():
    m_z = pf.completeness_matrix(pf.make_triad(direction(0, 0, 1)))
    assert np.allclose(m_z, np.diag([1.0, 1.0, 0.0]), atol=1e-14)
    m_x = pf.completeness_matrix(pf.make_triad(direction(1, 0, 0)))
    assert np.allclose(m_x, np.diag([0.0, 1.0, 1.0]), atol=1e-14)


def test_completeness_diagonal_direction():
    triad = pf.make_triad(direction(1, 1, 1))
    expected = np.eye(3) - np.full((3, 3), 1.0 / 3.0)
    assert np.allclose(pf.completeness_matrix(triad), expected, atol=1e-14)


@given(unit_vectors())
@settings(max_examples=200)
def test_all_relations_hold_for_random_directions(v):
    triad = pf.make_triad(pf.Direction(k=v))
    residuals = pf.check_relations(triad)
    assert len(residuals) == 8
    assert max(residuals.values()) < 1e-12


@given(unit_vectors())
@settings(max_examples=100)
def test_completeness_is_rank_two_projector(v):
    d = pf.Direction(k=v)
    m = pf.completeness_matrix(pf.make_triad(d))
    assert np.max(np.abs(m - m.T)) < 1e-14
    assert np.max(np.abs(m @ m - m)) < 1e-12
    assert np.max(np.abs(m @ d.k)) < 1e-12
    assert abs(np.trace(m) - 2.0) < 1e-12


@given(unit_vectors())
@settings(max_examples=50)
def test_triad_construction_is_deterministic(v):
    d1 = pf.Direction(k=v)
    d2 = pf.Direction(k=v.copy())
    t1, t2 = pf.make_triad(d1), pf.make_triad(d2)
    assert np.array_equal(t1.e_hat, t2.e_hat)
    assert np.array_equal(t1.b_hat, t2.b_hat)
    assert np.array_equal(t1.eps_plus, t2.eps_plus)


def test_custom_gauge_still_satisfies_relations():
    d = direction(0.2, 0.5, -0.6)
    triad = pf.make_triad(d, reference=np.array([0.0, 1.0, 0.0]))
    assert max(pf.check_relations(triad).values()) < 1e-12
    default = pf.make_triad(d)
    assert not np.allclose(triad.e_hat, default.e_hat)
