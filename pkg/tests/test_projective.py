"""Projective points, horizontal tangents, quadric and hyperplane predicates."""

import numpy as np
import pytest

from quadcover.numerics import derive_stream, realify
from quadcover.projective import (
    ProjectivePoint,
    horizontal_project,
    in_hyperplane,
    proj_normalize,
    projective_defect,
    quadric_residual,
    same_point,
    sample_horizontal,
    sample_projective,
)


def test_normalize_single_entry_phase():
    point = proj_normalize(np.array([0, 0, 1j * np.sqrt(2.0)]))
    assert np.allclose(point.rep, [0, 0, 1])


def test_normalize_scaling():
    point = proj_normalize(np.array([2.0, 0.0], dtype=complex))
    assert np.allclose(point.rep, [1, 0])


def test_normalize_tie_breaks_to_lowest_index():
    point = proj_normalize(np.array([1.0, 1j, 0.0]))
    assert np.allclose(point.rep, [1 / np.sqrt(2), 1j / np.sqrt(2), 0])


def test_normalize_rejects_near_zero():
    with pytest.raises(ValueError, match="degenerate"):
        proj_normalize(np.zeros(3, dtype=complex))


def test_normalize_idempotent_and_gauge_free():
    rng = derive_stream(11, "gauge")
    for _ in range(50):
        z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        point = proj_normalize(z)
        again = proj_normalize(point.rep)
        assert np.max(np.abs(again.rep - point.rep)) < 1e-12
        theta = rng.uniform(0, 2 * np.pi)
        lam = rng.uniform(0.1, 10.0)
        rotated = proj_normalize(np.exp(1j * theta) * lam * z)
        assert np.max(np.abs(rotated.rep - point.rep)) < 1e-12


def test_point_invariants_hold_after_normalize():
    rng = derive_stream(12, "inv")
    for _ in range(20):
        point = sample_projective(3, rng)
        norm_defect, phase_defect = point.residuals()
        assert norm_defect < 1e-12
        assert phase_defect < 1e-12


def test_horizontal_kills_fiber_and_phase_directions():
    rng = derive_stream(13, "horiz")
    point = sample_projective(2, rng)
    assert np.linalg.norm(horizontal_project(point, point.rep).vec) < 1e-12
    assert np.linalg.norm(horizontal_project(point, 1j * point.rep).vec) < 1e-12


def test_horizontal_leaves_horizontal_untouched():
    point = proj_normalize(np.array([1.0, 0.0], dtype=complex))
    tangent = horizontal_project(point, np.array([0.0, 1.0], dtype=complex))
    assert np.allclose(tangent.vec, [0, 1])


def test_horizontal_is_idempotent_with_invariants():
    rng = derive_stream(14, "idem")
    for _ in range(20):
        point = sample_projective(2, rng)
        v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        once = horizontal_project(point, v)
        twice = horizontal_project(point, once.vec)
        assert np.max(np.abs(twice.vec - once.vec)) < 1e-12
        assert max(once.residuals()) < 1e-10


def test_horizontal_projector_has_real_rank_2n():
    rng = derive_stream(15, "rank")
    for n in (1, 2, 3):
        point = sample_projective(n, rng)
        cols = []
        for k in range(2 * (n + 1)):
            e = np.zeros(2 * (n + 1))
            e[k] = 1.0
            v = e[: n + 1] + 1j * e[n + 1 :]
            cols.append(realify(horizontal_project(point, v).vec))
        rank = np.linalg.matrix_rank(np.stack(cols, axis=1), tol=1e-10)
        assert rank == 2 * n


def test_quadric_residual_values():
    assert abs(quadric_residual(proj_normalize(np.array([1, 1j, 0, 0])))) < 1e-14
    assert abs(quadric_residual(proj_normalize(np.array([1.0, 0, 0], dtype=complex))) - 1) < 1e-14


def test_quadric_residual_phase_covariance():
    rng = derive_stream(16, "phase")
    for _ in range(20):
        z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        z /= np.linalg.norm(z)
        theta = rng.uniform(0, 2 * np.pi)
        a = complex(np.sum(z * z))
        b = complex(np.sum((np.exp(1j * theta) * z) ** 2))
        assert abs(b - np.exp(2j * theta) * a) < 1e-12
        assert abs(abs(b) - abs(a)) < 1e-12


def test_in_hyperplane_examples():
    assert in_hyperplane(proj_normalize(np.array([0.0, 1.0], dtype=complex)), 0)
    assert in_hyperplane(proj_normalize(np.array([1, 1j, 0, 0])), 3)
    assert not in_hyperplane(proj_normalize(np.array([1.0, 1.0], dtype=complex)), 0)
    with pytest.raises(IndexError):
        in_hyperplane(proj_normalize(np.array([1.0, 0.0], dtype=complex)), 2)


def test_same_point_uses_overlap_modulus():
    rng = derive_stream(17, "eq")
    point = sample_projective(2, rng)
    rotated = ProjectivePoint(rep=np.exp(0.3j) * point.rep)
    assert same_point(point, rotated)
    assert projective_defect(point, rotated) < 1e-12
    other = sample_projective(2, rng)
    assert not same_point(point, other)


def test_sample_horizontal_is_unit_and_horizontal():
    rng = derive_stream(18, "tan")
    point = sample_projective(2, rng)
    tangent = sample_horizontal(point, rng)
    assert abs(np.linalg.norm(tangent.vec) - 1.0) < 1e-12
    assert max(tangent.residuals()) < 1e-10
