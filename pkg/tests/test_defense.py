"""Depth, defending-set, base-set, and falsification-search tests."""

from fractions import Fraction as F

import pytest

from peelkit.errors import DegenerateInputError, InputError
from peelkit.pointset import PointSet, origin
from peelkit.peeling import defends_by_peeling
from peelkit.sampling import random_pointset
from peelkit.defense import (
    BaseSet,
    base_set,
    below_threshold_search,
    depth_oracle,
    gale_set,
    open_halfspace_depth,
    _first_steps_hull_bound,
)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def test_depth_triangle_around_origin_is_1():
    tri = PointSet(2, [(1, 0), (-1, 1), (-1, -1)])
    rep = open_halfspace_depth(tri, (0, 0))
    assert rep.depth == 1
    assert depth_oracle(tri, (0, 0)) == 1


def test_depth_one_dimensional_guards():
    guards = PointSet(1, [(-2,), (-1,), (1,), (2,)])
    rep = open_halfspace_depth(guards, (0,))
    assert rep.depth == 2
    assert depth_oracle(guards, (0,)) == 2


def test_depth_zero_when_all_points_on_one_side():
    ps = PointSet(2, [(1, 1), (2, 1), (1, 2)])
    rep = open_halfspace_depth(ps, (0, 0))
    assert rep.depth == 0
    assert depth_oracle(ps, (0, 0)) == 0


def test_depth_witness_achieves_reported_count():
    for ps, p in [
        (PointSet(2, [(1, 0), (-1, 1), (-1, -1)]), (0, 0)),
        (gale_set(2, 2), origin(2)),
        (gale_set(3, 2), origin(3)),
        (PointSet(1, [(-2,), (-1,), (1,), (2,)]), (0,)),
    ]:
        rep = open_halfspace_depth(ps, p)
        q = tuple(F(c) for c in p)
        count = sum(
            1 for s in ps.points if _dot(rep.witness, tuple(c - pc for c, pc in zip(s, q))) > 0
        )
        assert count == rep.depth
        assert any(rep.witness)


def test_depth_degenerate_subspace_when_too_few_points():
    lone = PointSet(3, [(1, 2, 3)])
    rep = open_halfspace_depth(lone, (0, 0, 0))
    assert rep.depth == 0
    assert _dot(rep.witness, (1, 2, 3)) == 0


def test_depth_rejects_degenerate_union_with_witness():
    ps = PointSet(2, [(1, 1), (2, 2), (0, 5)])
    with pytest.raises(DegenerateInputError):
        open_halfspace_depth(ps, (0, 0))  # origin collinear with (1,1),(2,2)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_gale_sets_have_exact_size_and_depth(d, m):
    g = gale_set(d, m)
    assert len(g) == d + 2 * m - 1
    assert g.dim == d
    assert open_halfspace_depth(g, origin(d)).depth == m


def test_gale_simplex_contains_origin():
    g = gale_set(3, 1)
    assert len(g) == 4
    assert open_halfspace_depth(g, origin(3)).depth == 1
    assert defends_by_peeling(g, origin(3), 1) is True


def test_gale_seven_points_reach_depth_3_in_plane():
    g = gale_set(2, 3)
    assert len(g) == 7
    assert open_halfspace_depth(g, origin(2)).depth == 3


def test_gale_rejects_bad_parameters():
    with pytest.raises(InputError):
        gale_set(0, 1)
    with pytest.raises(InputError):
        gale_set(2, 0)


def test_oracle_agreement_on_seeded_sets():
    checked = 0
    for d in (1, 2, 3):
        for trial in range(5):
            n = 4 + (trial % 4)
            S = random_pointset(d, n, seed=11, trial=trial + 10 * d, origin_generic=True)
            assert open_halfspace_depth(S, origin(d)).depth == depth_oracle(S, origin(d))
            checked += 1
    assert checked == 15


def test_oracle_agreement_on_generated_sets():
    for d, m in [(1, 2), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]:
        g = gale_set(d, m)
        if len(g) <= 12:
            assert depth_oracle(g, origin(d)) == m
    for d, m in [(2, 2), (2, 3), (3, 2)]:
        bs = base_set(d, m)
        assert depth_oracle(bs.points, origin(d)) == m


def test_oracle_size_limit():
    big = PointSet(1, [(i,) for i in range(1, 14)])
    with pytest.raises(InputError):
        depth_oracle(big, (0,))


def test_depth_invariant_under_single_point_radial_scaling():
    g = gale_set(2, 2)
    base_depth = open_halfspace_depth(g, origin(2)).depth
    for idx, factor in [(0, F(7, 3)), (2, F(1, 5)), (4, F(12))]:
        pts = [tuple(p) for p in g.points]
        pts[idx] = tuple(c * factor for c in pts[idx])
        scaled = PointSet(2, pts)
        assert open_halfspace_depth(scaled, origin(2)).depth == base_depth


def test_base_set_m1_is_the_rescaled_defending_set():
    bs = base_set(2, 1)
    assert isinstance(bs, BaseSet)
    assert bs.scaling_radii == ()
    assert len(bs.points) == 3
    assert max(sum(c * c for c in p) for p in bs.points) <= 1


def test_base_set_2_3_shrinks_last_two_and_bounds_hull():
    bs = base_set(2, 3)
    assert len(bs.points) == 7
    assert len(bs.scaling_radii) == 2
    norms = [sum(c * c for c in p) for p in bs.points]
    # the two refined points sit far inside the unit ball
    assert norms[5] < F(1, 4) and norms[6] < F(1, 4)
    assert defends_by_peeling(bs.points, origin(2), 3) is True
    union = bs.points.appended(origin(2))
    _first_steps_hull_bound(union, 3, 5)  # D-m+1 = 5; raises on violation


def test_base_set_3_2_defends_two_steps():
    bs = base_set(3, 2)
    assert len(bs.points) == 6
    assert defends_by_peeling(bs.points, origin(3), 2) is True
    assert defends_by_peeling(bs.points, origin(3), 3) is False
    union = bs.points.appended(origin(3))
    _first_steps_hull_bound(union, 2, 5)


def test_base_set_rejects_one_dimension():
    with pytest.raises(InputError):
        base_set(1, 2)


def test_defense_equivalence_on_sampled_sets():
    for d in (1, 2, 3):
        for trial in range(4):
            S = random_pointset(d, 6, seed=23, trial=trial + 100 * d, origin_generic=True)
            depth = open_halfspace_depth(S, origin(d)).depth
            for m in (1, 2, 3):
                assert (depth >= m) == defends_by_peeling(S, origin(d), m)


def test_below_threshold_never_reaches_m():
    rep = below_threshold_search(2, 2, 60, seed=7)
    assert rep.set_size == 4
    assert rep.max_depth < 2
    rep1 = below_threshold_search(1, 3, 30, seed=7)
    assert rep1.set_size == 5
    assert rep1.max_depth < 3


def test_below_threshold_single_trial_and_determinism():
    one = below_threshold_search(3, 1, 1, seed=42)
    assert one.trials == 1 and 0 <= one.max_depth < 1
    again = below_threshold_search(2, 2, 25, seed=5)
    assert again == below_threshold_search(2, 2, 25, seed=5)
    with pytest.raises(InputError):
        below_threshold_search(2, 2, 0, seed=1)
