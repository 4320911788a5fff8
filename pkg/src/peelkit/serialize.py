"""Lossless JSON persistence for point sets and block trees.

Coordinates are written as exact rational strings ("-3/4", "5"), never as
floating point, so a parse of a serialize is bit-identical to the original.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .construction import BlockTree
from .errors import InputError
from .pointset import PointSet

FORMAT_VERSION = 1


@dataclass(frozen=True)
class LoadedFile:
    points: PointSet
    meta: dict
    tree: BlockTree | None


def _scalar_from_json(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{where}: booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InputError(f"{where}: floats are not exact; write '{value}' as a rational string")
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: not a rational string: {value!r}") from exc
    raise InputError(f"{where}: unsupported coordinate type {type(value).__name__}")


def pointset_to_payload(P: PointSet) -> dict:
    payload: dict = {
        "dim": P.dim,
        "points": [[str(c) for c in p] for p in P.points],
    }
    if P.labels is not None:
        payload["labels"] = list(P.labels)
    if P.blocks is not None:
        payload["blocks"] = list(P.blocks)
    return payload


def pointset_from_payload(payload: dict, where: str = "point set") -> PointSet:
    if not isinstance(payload, dict):
        raise InputError(f"{where}: expected a JSON object")
    try:
        dim = payload["dim"]
        raw_points = payload["points"]
    except KeyError as exc:
        raise InputError(f"{where}: missing field {exc}") from exc
    if not isinstance(dim, int) or dim < 1:
        raise InputError(f"{where}: dim must be a positive integer, got {dim!r}")
    if not isinstance(raw_points, list):
        raise InputError(f"{where}: points must be a list")
    points = []
    for i, coords in enumerate(raw_points):
        if not isinstance(coords, list) or len(coords) != dim:
            raise InputError(f"{where}: point {i} does not have {dim} coordinates")
        points.append(tuple(_scalar_from_json(c, f"{where}: point {i}") for c in coords))
    labels = payload.get("labels")
    blocks = payload.get("blocks")
    if labels is not None and len(labels) != len(points):
        raise InputError(f"{where}: {len(labels)} labels for {len(points)} points")
    if blocks is not None:
        if len(blocks) != len(points):
            raise InputError(f"{where}: {len(blocks)} block ids for {len(points)} points")
        if not all(isinstance(b, int) for b in blocks):
            raise InputError(f"{where}: block ids must be integers")
    return PointSet(dim, points, labels=labels, blocks=blocks)


def tree_to_payload(tree: BlockTree) -> dict:
    return {
        "node": tree.node,
        "placement": None if tree.placement is None else [str(c) for c in tree.placement],
        "child_sizes": list(tree.child_sizes),
        "children": [tree_to_payload(c) for c in tree.children],
        "leaf_points": list(tree.leaf_points),
    }


def tree_from_payload(payload: dict, where: str = "block tree") -> BlockTree:
    if not isinstance(payload, dict):
        raise InputError(f"{where}: expected a JSON object")
    placement = payload.get("placement")
    if placement is not None:
        placement = tuple(
            _scalar_from_json(c, f"{where}: placement") for c in placement
        )
    children = tuple(
        tree_from_payload(c, where) for c in payload.get("children", [])
    )
    try:
        return BlockTree(
            node=int(payload["node"]),
            placement=placement,
            child_sizes=tuple(int(s) for s in payload.get("child_sizes", [])),
            children=children,
            leaf_points=tuple(int(i) for i in payload.get("leaf_points", [])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{where}: malformed node: {exc}") from exc


def to_json(P: PointSet, meta: dict | None = None, tree: BlockTree | None = None) -> str:
    payload = pointset_to_payload(P)
    payload["meta"] = dict(meta or {})
    payload["meta"].setdefault("version", FORMAT_VERSION)
    if tree is not None:
        payload["block_tree"] = tree_to_payload(tree)
    return json.dumps(payload, indent=2) + "\n"


def from_json(text: str, where: str = "input") -> LoadedFile:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: invalid JSON: {exc}") from exc
    points = pointset_from_payload(payload, where)
    meta = payload.get("meta") or {}
    if not isinstance(meta, dict):
        raise InputError(f"{where}: meta must be an object")
    raw_tree = payload.get("block_tree")
    tree = None if raw_tree is None else tree_from_payload(raw_tree, f"{where}: block_tree")
    return LoadedFile(points=points, meta=meta, tree=tree)


def save_pointset(
    path, P: PointSet, meta: dict | None = None, tree: BlockTree | None = None
) -> None:
    Path(path).write_text(to_json(P, meta, tree), encoding="utf-8")


def load_pointset(path) -> LoadedFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc}") from exc
    return from_json(text, where=str(p))
