"""Peeling-sequence counting, enumeration, defense, and census tests.

Expected values were derived with the naive no-memo oracle before being
frozen here; several tests re-derive them inline so the oracle and engine
must keep agreeing.
"""

from fractions import Fraction as F

import pytest

from peelkit.errors import DegenerateInputError, InputError, ResourceBudgetError
from peelkit.pointset import PointSet
from peelkit.peeling import (
    PeelEngine,
    defends_by_peeling,
    lower_bound_audit,
    peel_count,
    peel_count_naive,
    peel_enumerate,
    simplified_census,
)


def triangle_with_interior():
    return PointSet(2, [(0, 0), (4, 0), (0, 4), (1, 1)])


def test_triangle_with_interior_point_counts_18():
    ps = triangle_with_interior()
    assert peel_count_naive(ps) == 18
    assert peel_count(ps).count == 18


def test_three_collinear_1d_counts_4():
    ps = PointSet(1, [(0,), (1,), (2,)])
    assert peel_count_naive(ps) == 4
    assert peel_count(ps).count == 4


def test_convex_position_gives_factorial():
    # points on a parabola are in convex position, so every order is feasible
    ps = PointSet(2, [(i, i * i) for i in range(5)])
    assert peel_count_naive(ps) == 120
    assert peel_count(ps).count == 120


@pytest.mark.parametrize("n", range(2, 9))
def test_one_dimensional_counts_are_powers_of_two(n):
    ps = PointSet(1, [(i,) for i in range(n)])
    assert peel_count(ps).count == 2 ** (n - 1)


def test_engine_matches_naive_oracle_on_assorted_sets():
    sets = [
        PointSet(2, [(0, 0), (7, 1), (3, 9), (5, 4), (1, 6)]),
        PointSet(3, [(0, 0, 0), (9, 1, 1), (1, 8, 2), (2, 3, 7), (6, 6, 1), (4, 2, 5)]),
        PointSet(1, [(F(1, 3),), (F(-2, 5),), (F(4, 7),), (2,)]),
    ]
    expected = [84, 720, 8]
    for ps, want in zip(sets, expected):
        assert peel_count_naive(ps) == want
        assert peel_count(ps).count == want


def test_enumerate_is_lexicographic_and_validated():
    sq = PointSet(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    seqs = peel_enumerate(sq, 5)
    assert seqs == [
        (0, 1, 2, 3),
        (0, 1, 3, 2),
        (0, 2, 1, 3),
        (0, 2, 3, 1),
        (0, 3, 1, 2),
    ]
    # asking for more than exist returns exactly all of them, sorted
    all_seqs = peel_enumerate(sq, 1000)
    assert len(all_seqs) == peel_count(sq).count == 24
    assert all_seqs == sorted(all_seqs)
    assert peel_enumerate(sq, 0) == []


def test_enumerated_prefixes_only_remove_hull_points():
    from peelkit.geometry import extreme_indices

    ps = triangle_with_interior()
    for seq in peel_enumerate(ps, 1000):
        remaining = list(range(len(ps)))
        for v in seq:
            assert v in extreme_indices(ps, remaining)
            remaining.remove(v)
        assert remaining == []


def test_defends_by_peeling_triangle():
    tri = PointSet(2, [(1, 0), (-1, 1), (-1, -1)])
    assert defends_by_peeling(tri, (0, 0), 1) is True
    assert defends_by_peeling(tri, (0, 0), 2) is False


def test_defends_by_peeling_one_dimensional():
    guards = PointSet(1, [(-2,), (-1,), (1,), (2,)])
    assert defends_by_peeling(guards, (0,), 2) is True
    assert defends_by_peeling(guards, (0,), 3) is False


def test_defends_rejects_bad_step_count():
    tri = PointSet(2, [(1, 0), (-1, 1), (-1, -1)])
    with pytest.raises(InputError):
        defends_by_peeling(tri, (0, 0), 0)


def test_degenerate_inputs_are_rejected_with_witness():
    collinear = PointSet(2, [(0, 0), (1, 1), (2, 2), (5, 0)])
    with pytest.raises(DegenerateInputError) as exc:
        peel_count(collinear)
    assert exc.value.witness == (0, 1, 2)
    dup = PointSet(1, [(3,), (3,)])
    with pytest.raises(DegenerateInputError):
        peel_count_naive(dup)


def test_naive_oracle_refuses_large_inputs():
    big = PointSet(1, [(i,) for i in range(10)])
    with pytest.raises(InputError):
        peel_count_naive(big)


def test_state_budget_is_enforced():
    ps = PointSet(1, [(i,) for i in range(12)])
    with pytest.raises(ResourceBudgetError):
        peel_count(ps, state_budget=5)


def test_census_single_block_collapses_to_one():
    ps = triangle_with_interior().with_blocks([0, 0, 0, 0])
    rep = simplified_census(ps)
    assert rep.distinct_sequences == 1
    assert rep.max_active_blocks == 1


def test_census_singleton_blocks_equals_plain_count():
    ps = triangle_with_interior().with_blocks([0, 1, 2, 3])
    rep = simplified_census(ps)
    assert rep.distinct_sequences == peel_count(triangle_with_interior()).count == 18


def test_census_two_blocks_on_a_line():
    # points 0,1 in block 0 and points 2,3 in block 1: the eight peel orders
    # collapse onto six block strings (aabb, abab, abba, baab, baba, bbaa)
    ps = PointSet(1, [(0,), (1,), (2,), (3,)], blocks=[0, 0, 1, 1])
    rep = simplified_census(ps)
    assert rep.distinct_sequences == 6
    assert rep.max_active_blocks == 2
    assert peel_count(PointSet(1, [(0,), (1,), (2,), (3,)])).count == 8


def test_census_requires_blocks_and_respects_limit():
    with pytest.raises(InputError):
        simplified_census(triangle_with_interior())
    big = PointSet(1, [(i,) for i in range(15)], blocks=[0] * 15)
    with pytest.raises(InputError):
        simplified_census(big)


def test_lower_bound_audit_holds_on_generic_sets():
    assert lower_bound_audit(triangle_with_interior()) is True
    assert lower_bound_audit(PointSet(2, [(i, i * i) for i in range(5)])) is True
    assert lower_bound_audit(PointSet(1, [(i,) for i in range(6)])) is True


def test_engine_hull_is_memoized_and_sorted():
    ps = triangle_with_interior()
    eng = PeelEngine(ps)
    full = eng.full_mask()
    first = eng.hull(full)
    assert first == (0, 1, 2)
    assert eng.hull(full) is first
