"""Round-trip and validation tests for the JSON file format."""

from fractions import Fraction as F

import pytest

from peelkit.construction import build
from peelkit.errors import InputError
from peelkit.pointset import PointSet
from peelkit.serialize import (
    from_json,
    load_pointset,
    save_pointset,
    to_json,
    tree_from_payload,
    tree_to_payload,
)


def test_round_trip_is_bit_exact():
    P = PointSet(
        2,
        [(F(1, 3), F(-7, 11)), (F(10**40, 10**40 + 1), F(0)), (2, -5)],
        labels=["a", "b", "c"],
        blocks=[0, 0, 1],
    )
    loaded = from_json(to_json(P, meta={"d": 2, "seed": 0}))
    assert loaded.points == P
    assert loaded.points.points == P.points  # exact fractions, not approximations
    assert loaded.meta["d"] == 2
    assert loaded.meta["version"] == 1
    assert loaded.tree is None


def test_round_trip_through_files(tmp_path):
    r = build(2, 1, 9)
    path = tmp_path / "s9.json"
    save_pointset(path, r.points, meta={"d": 2, "m": 1, "n": 9}, tree=r.tree)
    loaded = load_pointset(path)
    assert loaded.points == r.points
    assert loaded.tree == r.tree


def test_tree_payload_round_trip():
    r = build(2, 1, 12)  # two levels deep
    payload = tree_to_payload(r.tree)
    assert tree_from_payload(payload) == r.tree


def test_integer_and_rational_strings_accepted():
    loaded = from_json('{"dim": 1, "points": [["3"], ["-2/7"], [4]]}')
    assert loaded.points.points == ((F(3),), (F(-2, 7),), (F(4),))


def test_floats_rejected():
    with pytest.raises(InputError, match="floats are not exact"):
        from_json('{"dim": 1, "points": [[1.5]]}')


def test_garbage_coordinate_rejected():
    with pytest.raises(InputError, match="not a rational string"):
        from_json('{"dim": 1, "points": [["three"]]}')


def test_dim_mismatch_rejected():
    with pytest.raises(InputError, match="does not have 2 coordinates"):
        from_json('{"dim": 2, "points": [["1", "2"], ["3"]]}')


def test_block_length_mismatch_rejected():
    with pytest.raises(InputError, match="block ids"):
        from_json('{"dim": 1, "points": [["1"]], "blocks": [0, 1]}')


def test_invalid_json_rejected():
    with pytest.raises(InputError, match="invalid JSON"):
        from_json("{nope")


def test_missing_file_rejected(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        load_pointset(tmp_path / "absent.json")
