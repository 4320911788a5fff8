"""Halfspace depth, defending sets, and the refined base set.

The depth of a point p against a set S is the minimum, over nonzero
directions a, of how many points land strictly on the positive side of the
hyperplane through p normal to a.  A set of d+2m-1 points can pin the origin
at depth exactly m; fewer points never can.  Everything here is verified
after construction — no output is returned uncertified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import CertificationError, InputError
from .geometry import (
    ConvexCombination,
    convex_membership,
    extreme_indices,
    general_position_violation,
)
from .lp import find_vector
from .peeling import defends_by_peeling, require_general_position
from .pointset import PointSet, as_point, origin, to_fraction

ORACLE_LIMIT = 12


@dataclass(frozen=True)
class DepthReport:
    """Exact depth plus a direction whose open halfspace contains that many points."""

    depth: int
    witness: tuple[Fraction, ...]


@dataclass(frozen=True)
class BaseSet:
    """A defending set refined so few points ever reach the hull while peeling.

    points: D = d+2m-1 points defending the origin for m steps;
    scaling_radii: the certified shrink factor applied to each of the last
    m-1 points (empty when m = 1).
    """

    points: PointSet
    m: int
    scaling_radii: tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return self.points.dim


@dataclass(frozen=True)
class ThresholdReport:
    """Outcome of a randomized search for defending sets below the minimum size."""

    d: int
    m: int
    trials: int
    seed: int
    set_size: int
    max_depth: int


def _det(rows: list[list[Fraction]]) -> Fraction:
    mat = [list(r) for r in rows]
    k = len(mat)
    det = Fraction(1)
    for c in range(k):
        piv = next((r for r in range(c, k) if mat[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det *= mat[c][c]
        inv = mat[c][c]
        for r in range(c + 1, k):
            f = mat[r][c] / inv
            if f:
                for cc in range(c + 1, k):
                    mat[r][cc] -= f * mat[c][cc]
    return det


def _cross_normal(vectors: list[tuple[Fraction, ...]], dim: int) -> tuple[Fraction, ...]:
    """A vector orthogonal to dim-1 linearly independent vectors."""
    out = []
    for j in range(dim):
        minor = [[v[c] for c in range(dim) if c != j] for v in vectors]
        term = _det(minor)
        out.append(term if j % 2 == 0 else -term)
    return tuple(out)


def _kernel_vector(vectors: Sequence[tuple[Fraction, ...]], dim: int):
    """Some nonzero vector orthogonal to all the given ones, or None if full rank."""
    mat = [list(v) for v in vectors if any(v)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(dim):
        pr = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = mat[r][c]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c] / inv
                for cc in range(dim):
                    mat[i][cc] -= f * mat[r][cc]
        pivots.append((r, c))
        r += 1
        if r == len(mat):
            break
    pivot_cols = {c for _, c in pivots}
    free = next((c for c in range(dim) if c not in pivot_cols), None)
    if free is None:
        return None
    v = [Fraction(0)] * dim
    v[free] = Fraction(1)
    for pr, pc in pivots:
        s = sum(mat[pr][c] * v[c] for c in range(dim) if c != pc)
        v[pc] = -s / mat[pr][pc]
    return tuple(v)


def _positive_count(a: tuple[Fraction, ...], diffs: list[tuple[Fraction, ...]]) -> int:
    count = 0
    for w in diffs:
        s = Fraction(0)
        for x, y in zip(a, w):
            s += x * y
        if s > 0:
            count += 1
    return count


def open_halfspace_depth(S: PointSet, p) -> DepthReport:
    """Min over nonzero directions a of |{s in S : a.(s-p) > 0}|, with witness.

    Enumerates the finitely many candidate normals of hyperplanes through p
    spanned by (d-1)-subsets of S (both orientations; points exactly on a
    candidate hyperplane contribute zero), plus a degenerate-subspace normal
    when S is too small to span.  Requires S together with p in general
    position so every candidate subset spans properly.
    """
    q = as_point(p, S.dim)
    require_general_position(S.appended(q))
    d = S.dim
    diffs = [tuple(c - pc for c, pc in zip(s, q)) for s in S.points]
    if len(S) < d - 1:
        a = _kernel_vector(diffs, d)
        # fewer than d-1 points cannot span: some hyperplane through p holds all
        assert a is not None
        return DepthReport(depth=0, witness=a)
    best_count = None
    best_witness = None
    for T in combinations(range(len(S)), d - 1):
        normal = _cross_normal([diffs[i] for i in T], d)
        assert any(normal)
        for a in (normal, tuple(-x for x in normal)):
            c = _positive_count(a, diffs)
            if best_count is None or c < best_count:
                best_count, best_witness = c, a
                if best_count == 0:
                    return DepthReport(depth=0, witness=best_witness)
    return DepthReport(depth=best_count, witness=best_witness)


def depth_oracle(S: PointSet, p, limit: int = ORACLE_LIMIT) -> int:
    """Depth recomputed independently by exhaustive subset linear programs.

    For k = 0, 1, ... decide whether some direction puts all of an
    (|S|-k)-subset weakly nonpositive and the remaining k points strictly
    positive; the first feasible k is the depth.
    """
    if len(S) > limit:
        raise InputError(f"depth oracle is limited to {limit} points, got {len(S)}")
    q = as_point(p, S.dim)
    require_general_position(S.appended(q))
    d = S.dim
    n = len(S)
    diffs = [tuple(c - pc for c, pc in zip(s, q)) for s in S.points]

    # k = 0: all points weakly nonpositive under some NONZERO direction; pin one
    # coordinate of a to +1 or -1 (any nonzero a scales to such a form)
    for j in range(d):
        for sign in (1, -1):
            pin = tuple(Fraction(sign if c == j else 0) for c in range(d))
            v = find_vector(
                d,
                le=[(w, Fraction(0)) for w in diffs],
                eq=[(pin, Fraction(1))],
            )
            if v is not None:
                return 0
    for k in range(1, n + 1):
        for W in combinations(range(n), n - k):
            inside = set(W)
            v = find_vector(
                d,
                le=[(diffs[i], Fraction(0)) for i in W],
                ge=[(diffs[i], Fraction(1)) for i in range(n) if i not in inside],
            )
            if v is not None:
                return k
    raise AssertionError("subset LP search exhausted without finding the depth")


def gale_set(d: int, m: int) -> PointSet:
    """d+2m-1 rational points whose depth at the origin is exactly m.

    Points follow an alternating-sign moment curve, radially rescaled per
    point to break the coordinate-hyperplane degeneracies the raw curve has;
    radial scaling cannot change depth at the origin.  The result is
    post-verified (general position with the origin, exact depth) and nudged
    with different rational scale schedules until verification passes.
    """
    if d < 1 or m < 1:
        raise InputError("gale_set requires d >= 1 and m >= 1")
    n = d + 2 * m - 1
    if d == 1:
        pts = [((-1) ** i * Fraction(i),) for i in range(1, n + 1)]
        candidate = PointSet(1, pts)
        _verify_gale(candidate, m)
        return candidate
    last_error = None
    for q in range(2, 50):
        pts = []
        for i in range(1, n + 1):
            scale = (1 + Fraction(i - 1, q)) * ((-1) ** i)
            t = Fraction(i)
            pts.append(tuple(scale * t**e for e in range(d)))
        candidate = PointSet(d, pts)
        try:
            _verify_gale(candidate, m)
            return candidate
        except CertificationError as exc:
            last_error = exc
    raise CertificationError(
        f"no scale schedule produced a certified defending set for d={d}, m={m}: {last_error}"
    )


def _verify_gale(S: PointSet, m: int) -> None:
    union = S.appended(origin(S.dim))
    witness = general_position_violation(union)
    if witness is not None:
        raise CertificationError(
            f"defending-set candidate degenerate with the origin at indices {list(witness)}"
        )
    rep = open_halfspace_depth(S, origin(S.dim))
    if rep.depth != m:
        raise CertificationError(
            f"defending-set candidate has depth {rep.depth}, wanted {m}"
        )


def _norm_sq(p) -> Fraction:
    return sum(c * c for c in p)


def _unit_ball_rescale(S: PointSet) -> PointSet:
    biggest = max(_norm_sq(p) for p in S.points)
    scale = Fraction(1)
    while biggest * scale * scale > 1:
        scale /= 2
    return PointSet(S.dim, [tuple(c * scale for c in p) for p in S.points])


def _cross_polytope_radius(points: list[tuple[Fraction, ...]], d: int, subset_size: int) -> Fraction:
    """Largest 1/2^k whose scaled cross-polytope sits in the hull of every subset.

    Checks, for each subset T of the given size, that all 2d vertices +-r*e_i
    admit a convex-combination certificate over T.
    """
    idx = range(len(points))
    for k in range(1, 64):
        r = Fraction(1, 2**k)
        ok = True
        for T in combinations(idx, subset_size):
            sub = PointSet(d, [points[i] for i in T])
            for axis in range(d):
                for sign in (1, -1):
                    vertex = tuple(
                        Fraction(sign) * r if c == axis else Fraction(0) for c in range(d)
                    )
                    cert = convex_membership(vertex, sub)
                    if not isinstance(cert, ConvexCombination):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            return r
    raise CertificationError("no dyadic radius certified inside the hull subsets")


def _first_steps_hull_bound(union: PointSet, steps: int, bound: int) -> None:
    """Exhaustively check hull size <= bound on every state within the first steps."""
    n = len(union)
    full = (1 << n) - 1
    seen = {full}
    stack = [full]
    while stack:
        mask = stack.pop()
        idxs = [i for i in range(n) if mask >> i & 1]
        hull = extreme_indices(union, idxs)
        if len(hull) > bound:
            raise CertificationError(
                f"peeling state {idxs} shows {len(hull)} hull vertices, allowed {bound}"
            )
        if n - len(idxs) < steps - 1:
            for v in hull:
                child = mask & ~(1 << v)
                if child not in seen:
                    seen.add(child)
                    stack.append(child)


def base_set(d: int, m: int) -> BaseSet:
    """Defending set refined so at most d+m points ever reach the hull early.

    Starts from the certified defending set scaled into the unit ball, keeps
    the first D-m+1 points, and pulls each later point toward the origin by a
    certified factor: the factor's closed ball around the origin provably sits
    interior to the hull of every (D-m+1)-subset of the points before it.
    Pulling points radially never changes depth, so the origin stays defended
    for m steps; both properties are re-verified exhaustively before returning.
    """
    if d < 2:
        raise InputError("base_set requires d >= 2 (one dimension has nothing to refine)")
    if m < 1:
        raise InputError("base_set requires m >= 1")
    D = d + 2 * m - 1
    keep = D - m + 1
    rescaled = _unit_ball_rescale(gale_set(d, m))
    for attempt in range(20):
        nudge = Fraction(2**attempt - 1, 2**attempt) if attempt else Fraction(1)
        coords = [tuple(p) for p in rescaled.points]
        radii = []
        for j in range(1, m):
            prefix = coords[: keep + j - 1]
            r = _cross_polytope_radius(prefix, d, keep)
            eps = r / (2 * d)
            if attempt:
                eps *= nudge
            target = keep + j - 1
            coords[target] = tuple(c * eps for c in coords[target])
            radii.append(eps)
        candidate = PointSet(d, coords)
        union = candidate.appended(origin(d))
        if general_position_violation(union) is not None:
            continue
        if not defends_by_peeling(candidate, origin(d), m):
            continue
        _first_steps_hull_bound(union, m, keep)
        return BaseSet(points=candidate, m=m, scaling_radii=tuple(radii))
    raise CertificationError(
        f"base-set refinement failed to certify for d={d}, m={m} after nudging"
    )


def below_threshold_search(d: int, m: int, trials: int, seed: int = 0) -> ThresholdReport:
    """Randomized falsification: sets one point too small never reach depth m.

    Samples general-position sets of size d+2m-2 around the origin and reports
    the maximum depth seen, which must stay below m for minimality to hold.
    """
    from .sampling import random_pointset

    if trials < 1:
        raise InputError("trials must be >= 1")
    size = d + 2 * m - 2
    max_depth = 0
    for t in range(trials):
        S = random_pointset(d, size, seed=seed, trial=t, origin_generic=True)
        rep = open_halfspace_depth(S, origin(d))
        if rep.depth > max_depth:
            max_depth = rep.depth
    return ThresholdReport(d=d, m=m, trials=trials, seed=seed, set_size=size, max_depth=max_depth)
