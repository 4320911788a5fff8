"""Counting, enumerating, and auditing hull-peeling sequences.

A peeling sequence removes one hull vertex at a time until nothing is left.
States are bitmasks of the surviving original indices; the memoized engine
visits each reachable state once.  The naive oracle re-walks the full DFS tree
with no memo of any kind and exists purely to cross-check the engine.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateInputError, InputError, ResourceBudgetError
from .geometry import extreme_indices, general_position_violation
from .pointset import PointSet

DEFAULT_STATE_BUDGET = 1 << 26
NAIVE_LIMIT = 9
CENSUS_LIMIT = 14


def _state_budget(override: int | None) -> int:
    if override is not None:
        return override
    env = os.environ.get("PEELKIT_STATE_BUDGET")
    return int(env) if env else DEFAULT_STATE_BUDGET


def require_general_position(P: PointSet) -> None:
    """Raise DegenerateInputError (with the violating indices) unless P is generic."""
    witness = general_position_violation(P)
    if witness is not None:
        raise DegenerateInputError(
            "point set is not in general position: "
            f"points {list(witness)} coincide or are affinely dependent",
            witness=witness,
        )


@dataclass(frozen=True)
class PeelReport:
    """Result of a counting run: exact count plus traversal statistics."""

    count: int
    enumerated: tuple[tuple[int, ...], ...] | None
    states_visited: int


@dataclass(frozen=True)
class SimplifiedReport:
    """Distinct block strings induced by peeling, and the block-activity maximum."""

    distinct_sequences: int
    max_active_blocks: int
    states_visited: int


class PeelEngine:
    """Memoized traversal over peeling states of one general-position point set."""

    def __init__(self, P: PointSet, state_budget: int | None = None):
        require_general_position(P)
        self.pointset = P
        self.n = len(P)
        self.budget = _state_budget(state_budget)
        self._hull: dict[int, tuple[int, ...]] = {}
        self._count: dict[int, int] = {}

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def hull(self, mask: int) -> tuple[int, ...]:
        """Hull-vertex indices (ascending) of the state, memoized."""
        got = self._hull.get(mask)
        if got is None:
            idxs = [i for i in range(self.n) if mask >> i & 1]
            got = tuple(extreme_indices(self.pointset, idxs))
            self._hull[mask] = got
        return got

    def count(self, mask: int) -> int:
        """Number of peeling sequences of the state (f(empty)=1, f=sum over removals)."""
        memo = self._count

        def rec(m: int) -> int:
            if m == 0:
                return 1
            got = memo.get(m)
            if got is not None:
                return got
            total = 0
            for v in self.hull(m):
                total += rec(m & ~(1 << v))
            memo[m] = total
            if len(memo) > self.budget:
                raise ResourceBudgetError(
                    f"peeling state budget exceeded ({self.budget} states); "
                    "raise PEELKIT_STATE_BUDGET to go further"
                )
            return total

        return rec(mask)

    def reachable_masks(self):
        """All states discovered so far (populated by count); excludes the empty state."""
        return [m for m in self._count if m != 0]


def peel_count(P: PointSet, state_budget: int | None = None) -> PeelReport:
    """Exact number of peeling sequences of P (general position required)."""
    engine = PeelEngine(P, state_budget)
    total = engine.count(engine.full_mask())
    return PeelReport(count=total, enumerated=None, states_visited=len(engine._count))


def peel_count_naive(P: PointSet, limit: int = NAIVE_LIMIT) -> int:
    """Oracle count by full DFS enumeration, no memoization anywhere.

    Deliberately slow and independent of the engine's state sharing; refuses
    inputs larger than ``limit``.
    """
    if len(P) > limit:
        raise InputError(f"naive oracle is limited to {limit} points, got {len(P)}")
    require_general_position(P)

    def rec(mask: int) -> int:
        if mask == 0:
            return 1
        idxs = [i for i in range(len(P)) if mask >> i & 1]
        total = 0
        for v in extreme_indices(P, idxs):
            total += rec(mask & ~(1 << v))
        return total

    return rec((1 << len(P)) - 1)


def _validate_sequence(P: PointSet, seq: Sequence[int]) -> None:
    mask = (1 << len(P)) - 1
    for v in seq:
        idxs = [i for i in range(len(P)) if mask >> i & 1]
        if v not in extreme_indices(P, idxs):
            raise AssertionError(f"sequence {list(seq)} removes non-hull point {v}")
        mask &= ~(1 << v)
    if mask:
        raise AssertionError(f"sequence {list(seq)} does not exhaust the set")


def peel_enumerate(P: PointSet, limit: int) -> list[tuple[int, ...]]:
    """The lexicographically first ``limit`` peeling sequences (by removed index).

    Every returned sequence is re-validated prefix by prefix before returning.
    """
    if limit < 0:
        raise InputError("enumeration limit must be nonnegative")
    require_general_position(P)
    out: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def dfs(mask: int) -> None:
        if len(out) >= limit:
            return
        if mask == 0:
            out.append(tuple(prefix))
            return
        idxs = [i for i in range(len(P)) if mask >> i & 1]
        for v in extreme_indices(P, idxs):
            prefix.append(v)
            dfs(mask & ~(1 << v))
            prefix.pop()
            if len(out) >= limit:
                return

    if limit > 0 and len(P) > 0:
        dfs((1 << len(P)) - 1)
    elif limit > 0:
        out.append(())
    for seq in out:
        _validate_sequence(P, seq)
    return out


def defends_by_peeling(S: PointSet, p: Sequence, m: int, state_budget: int | None = None) -> bool:
    """True iff no peeling sequence of S + {p} removes p within its first m steps.

    Checked exhaustively: DFS over every reachable state with fewer than m
    removals; p must never be a hull vertex there.
    """
    if m < 1:
        raise InputError(f"defense step count must be >= 1, got {m}")
    union = S.appended(p)
    p_idx = len(S)
    engine = PeelEngine(union, state_budget)
    n = len(union)
    full = engine.full_mask()
    seen = {full}
    stack = [full]
    while stack:
        mask = stack.pop()
        hull = engine.hull(mask)
        if p_idx in hull:
            return False
        if (n - mask.bit_count()) < m - 1:
            for v in hull:
                child = mask & ~(1 << v)
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
                    if len(seen) > engine.budget:
                        raise ResourceBudgetError("defense search exceeded the state budget")
    return True


def lower_bound_audit(P: PointSet, state_budget: int | None = None) -> bool:
    """True iff every reachable state with more than dim points keeps >= dim+1 hull vertices.

    This is the structural fact behind the exponential lower bound on peeling
    counts; it should hold for every general-position set.
    """
    engine = PeelEngine(P, state_budget)
    engine.count(engine.full_mask())
    d = P.dim
    for mask in engine.reachable_masks():
        if mask.bit_count() > d and len(engine.hull(mask)) < d + 1:
            return False
    return True


def simplified_census(
    P: PointSet,
    limit: int = CENSUS_LIMIT,
    state_budget: int | None = None,
    node_budget: int = 2_000_000,
) -> SimplifiedReport:
    """Count distinct block strings over all peeling sequences.

    A sequence's block string replaces each removed point by its block id.  The
    census shares suffix sets through a hash-consed DAG (interned nodes mapping
    block symbol -> child), so distinct strings are counted exactly without ever
    materializing them.  Refuses sets larger than ``limit``.
    """
    if P.blocks is None:
        raise InputError("simplified_census requires block ids on the point set")
    if len(P) > limit:
        raise InputError(f"simplified census is limited to {limit} points, got {len(P)}")
    engine = PeelEngine(P, state_budget)
    blocks = P.blocks

    interned: dict[tuple, int] = {(): 0}
    nodes: list[tuple] = [()]
    union_memo: dict[tuple[int, int], int] = {}
    count_memo: dict[int, int] = {0: 1}
    build_memo: dict[int, int] = {}

    def intern(item: tuple) -> int:
        got = interned.get(item)
        if got is None:
            got = len(nodes)
            nodes.append(item)
            interned[item] = got
            if got > node_budget:
                raise ResourceBudgetError("census suffix DAG exceeded its node budget")
        return got

    def union(a: int, b: int) -> int:
        if a == b:
            return a
        if a > b:
            a, b = b, a
        got = union_memo.get((a, b))
        if got is None:
            merged = dict(nodes[a])
            for sym, cid in nodes[b]:
                if sym in merged:
                    merged[sym] = union(merged[sym], cid)
                else:
                    merged[sym] = cid
            got = intern(tuple(sorted(merged.items())))
            union_memo[(a, b)] = got
        return got

    def build(mask: int) -> int:
        if mask == 0:
            return 0
        got = build_memo.get(mask)
        if got is None:
            per_symbol: dict[int, int] = {}
            for v in engine.hull(mask):
                child = build(mask & ~(1 << v))
                sym = blocks[v]
                if sym in per_symbol:
                    per_symbol[sym] = union(per_symbol[sym], child)
                else:
                    per_symbol[sym] = child
            got = intern(tuple(sorted(per_symbol.items())))
            build_memo[mask] = got
        return got

    def count(nid: int) -> int:
        got = count_memo.get(nid)
        if got is None:
            got = sum(count(cid) for _, cid in nodes[nid])
            count_memo[nid] = got
        return got

    root = build(engine.full_mask())
    max_active = 0
    for mask in build_memo:
        active = len({blocks[v] for v in engine.hull(mask)})
        if active > max_active:
            max_active = active
    return SimplifiedReport(
        distinct_sequences=count(root),
        max_active_blocks=max_active,
        states_visited=len(build_memo),
    )
