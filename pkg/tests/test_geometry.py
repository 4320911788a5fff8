"""Tests for orientation, general position, membership certificates, and hulls."""

from fractions import Fraction as F

import pytest

from peelkit.errors import InputError
from peelkit.geometry import (
    ConvexCombination,
    SeparatingHyperplane,
    _extreme_lp,
    convex_membership,
    det_sign,
    extreme_indices,
    general_position_violation,
    hull_vertices,
    is_general_position,
    orientation,
)
from peelkit.pointset import PointSet
from peelkit.sampling import random_pointset


def test_det_sign_basic():
    assert det_sign([[1, 0], [0, 1]]) == 1
    assert det_sign([[0, 1], [1, 0]]) == -1
    assert det_sign([[2, 4], [1, 2]]) == 0
    assert det_sign([[3]]) == 1
    assert det_sign([]) == 1


def test_det_sign_large_integers():
    big = 10**30
    assert det_sign([[big, 1], [1, big]]) == 1
    assert det_sign([[big, big], [big, big]]) == 0


def test_orientation_triangle():
    assert orientation([(0, 0), (1, 0), (0, 1)], 2) == 1
    assert orientation([(0, 0), (0, 1), (1, 0)], 2) == -1
    assert orientation([(0, 0), (1, 1), (2, 2)], 2) == 0


def test_orientation_scale_invariant():
    assert orientation([(0, 0), (F(1, 3), 0), (0, F(5, 7))], 2) == 1


def test_orientation_validates_input():
    with pytest.raises(InputError):
        orientation([(0, 0), (1, 0)], 2)
    with pytest.raises(InputError):
        orientation([(0,), (1,)], 0)


def test_general_position_duplicate_witness():
    P = PointSet(2, [(0, 0), (1, 1), (0, 0)])
    assert general_position_violation(P) == (0, 2)


def test_general_position_collinear_witness():
    P = PointSet(2, [(0, 0), (1, 1), (2, 2), (3, 1)])
    assert general_position_violation(P) == (0, 1, 2)
    assert not is_general_position(P)


def test_general_position_small_sets_use_affine_rank():
    collinear3d = PointSet(3, [(0, 0, 0), (1, 1, 1), (2, 2, 2)])
    assert general_position_violation(collinear3d) == (0, 1, 2)
    ok3d = PointSet(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert general_position_violation(ok3d) is None


def test_general_position_1d_is_distinctness():
    assert is_general_position(PointSet(1, [(0,), (5,), (-3,)]))
    assert general_position_violation(PointSet(1, [(2,), (2,)])) == (0, 1)


def test_membership_inside_comes_with_exact_weights():
    tri = PointSet(2, [(1, 0), (-1, 1), (-1, -1)])
    cert = convex_membership((0, 0), tri)
    assert isinstance(cert, ConvexCombination)
    assert cert.is_member
    assert sum(cert.weights) == 1
    assert all(w >= 0 for w in cert.weights)
    assert cert.verify((0, 0), tri)


def test_membership_boundary_point_is_inside():
    tri = PointSet(2, [(0, 0), (0, 1), (1, 0)])
    cert = convex_membership((0, F(1, 2)), tri)
    assert isinstance(cert, ConvexCombination)


def test_membership_outside_comes_with_separator():
    tri = PointSet(2, [(1, 0), (-1, 1), (-1, -1)])
    cert = convex_membership((2, 0), tri)
    assert isinstance(cert, SeparatingHyperplane)
    assert not cert.is_member
    assert cert.verify((2, 0), tri)
    # the separator is strict on the query side
    q_val = cert.normal[0] * 2 + cert.normal[1] * 0
    assert q_val > cert.offset


def test_membership_certificates_verify_on_seeded_queries():
    for seed in range(5):
        P = random_pointset(2, 8, seed=seed)
        for q in [(0, 0), (100, 100), (F(1, 3), F(-2, 5))]:
            cert = convex_membership(q, P)
            assert cert.verify(q, P)


def test_extreme_indices_1d():
    seg = PointSet(1, [(3,), (-1,), (7,), (0,)])
    assert extreme_indices(seg, [0, 1, 2, 3]) == [1, 2]
    assert extreme_indices(seg, [0, 3]) == [0, 3]


def test_extreme_indices_square_with_center():
    P = PointSet(2, [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)])
    # not general position (diagonals), but the chain only needs distinctness
    assert sorted(hull_vertices(P)) == [0, 1, 2, 3]


def test_extreme_indices_respects_subset():
    P = PointSet(2, [(0, 0), (4, 0), (4, 4), (0, 4), (1, 1), (2, 1), (1, 2)])
    inner = extreme_indices(P, [4, 5, 6])
    assert inner == [4, 5, 6]


def test_fast_hulls_match_lp_definition():
    for d in (2, 3):
        for seed in range(6):
            P = random_pointset(d, 9, seed=seed)
            fast = extreme_indices(P, list(range(9)))
            slow = _extreme_lp(P.points, d, range(9))
            assert fast == slow


def test_hull_vertices_octahedron_with_center():
    P = PointSet(
        3,
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1), (0, 0, 0)],
    )
    assert sorted(hull_vertices(P)) == [0, 1, 2, 3, 4, 5]


def test_hull_vertices_edge_midpoint_is_not_a_vertex():
    P = PointSet(2, [(0, 0), (2, 0), (2, 2), (0, 2), (1, 0)])
    assert sorted(hull_vertices(P)) == [0, 1, 2, 3]


def test_hull_vertices_duplicates_are_never_vertices():
    P = PointSet(2, [(0, 0), (1, 0), (0, 1), (1, 0)])
    assert sorted(hull_vertices(P)) == [0, 2]


def test_hull_vertices_empty_input_rejected():
    with pytest.raises(InputError):
        hull_vertices(PointSet(2, []))
