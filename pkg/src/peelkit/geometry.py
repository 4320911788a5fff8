"""Exact convexity predicates over rational points.

Everything here decides signs with integer arithmetic: orientation determinants
use fraction-free (Bareiss) elimination, hull-vertex tests use dimension-specific
exact algorithms (1D strict min/max, 2D monotone chain, 3D gift wrapping) with a
definitional LP membership route as the general fallback, and every membership
answer carries a certificate that verifies exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence

from .errors import InputError
from .lp import solve_eq_nonneg
from .pointset import Point, PointSet, as_point


# ---------------------------------------------------------------------------
# determinant signs

def det_sign(matrix: list[list[int]]) -> int:
    """Sign of the determinant of a square integer matrix (Bareiss elimination).

    The input matrix is consumed.  All intermediate divisions are exact, so the
    result is the true sign, never a rounded one.
    """
    M = matrix
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        pivot_row = -1
        for i in range(k, n):
            if M[i][k] != 0:
                pivot_row = i
                break
        if pivot_row < 0:
            return 0
        if pivot_row != k:
            M[pivot_row], M[k] = M[k], M[pivot_row]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i = M[i]
            row_k = M[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    last = M[n - 1][n - 1]
    return sign if last > 0 else -sign if last < 0 else 0


def orientation(simplex: Sequence[Sequence], dim: int) -> int:
    """Orientation sign of dim+1 points in R^dim: sign det [p_1-p_0, ..., p_d-p_0].

    Returns +1/-1 for the two orientation classes and 0 for affinely dependent
    input.  Rows are scaled to integers by positive factors, which cannot change
    the sign.
    """
    if not isinstance(dim, int) or dim < 1:
        raise InputError(f"orientation dimension must be a positive integer, got {dim!r}")
    pts = [as_point(p, dim) for p in simplex]
    if len(pts) != dim + 1:
        raise InputError(f"orientation needs {dim + 1} points in dimension {dim}, got {len(pts)}")
    base = pts[0]
    rows = []
    for p in pts[1:]:
        diff = [a - b for a, b in zip(p, base)]
        scale = lcm(*(c.denominator for c in diff))
        rows.append([int(c * scale) for c in diff])
    return det_sign(rows)


def _rational_rank(rows: list[list[Fraction]]) -> int:
    """Row rank by plain Gaussian elimination (used only for tiny matrices)."""
    rows = [row[:] for row in rows]
    cols = len(rows[0]) if rows else 0
    rank = 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), -1)
        if pivot < 0:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / prow[c]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def general_position_violation(P: PointSet) -> tuple[int, ...] | None:
    """Indices of a witness violating general position, or None if none exists.

    General position means: all points distinct, and no k+2 of them on a common
    k-flat for any k < dim.  For |P| > dim this reduces to "every (dim+1)-subset
    has nonzero orientation"; for smaller sets the whole set must be affinely
    independent.  In dimension 1 it is exactly "pairwise distinct coordinates".
    """
    n = len(P)
    d = P.dim
    seen: dict[Point, int] = {}
    for i, p in enumerate(P.points):
        if p in seen:
            return (seen[p], i)
        seen[p] = i
    if d == 1 or n <= 1:
        return None
    ipts = P.integer_coords()
    if n <= d:
        base = ipts[0]
        rows = [[Fraction(p[j] - base[j]) for j in range(d)] for p in ipts[1:]]
        if _rational_rank(rows) < n - 1:
            return tuple(range(n))
        return None
    for subset in combinations(range(n), d + 1):
        base = ipts[subset[0]]
        rows = [[ipts[s][j] - base[j] for j in range(d)] for s in subset[1:]]
        if det_sign(rows) == 0:
            return subset
    return None


def is_general_position(P: PointSet) -> bool:
    return general_position_violation(P) is None


# ---------------------------------------------------------------------------
# membership certificates

@dataclass(frozen=True)
class ConvexCombination:
    """Certificate that q lies in the hull: nonnegative weights, one per point."""

    weights: tuple[Fraction, ...]
    is_member = True

    def verify(self, q: Sequence, P: PointSet) -> bool:
        q = as_point(q, P.dim)
        if len(self.weights) != len(P):
            return False
        if any(w < 0 for w in self.weights) or sum(self.weights) != 1:
            return False
        for j in range(P.dim):
            if sum(w * p[j] for w, p in zip(self.weights, P.points)) != q[j]:
                return False
        return True


@dataclass(frozen=True)
class SeparatingHyperplane:
    """Certificate that q lies outside the hull: normal·q > offset >= normal·p for all p."""

    normal: tuple[Fraction, ...]
    offset: Fraction
    is_member = False

    def verify(self, q: Sequence, P: PointSet) -> bool:
        q = as_point(q, P.dim)
        if len(self.normal) != P.dim or all(c == 0 for c in self.normal):
            return False
        if sum(a * b for a, b in zip(self.normal, q)) <= self.offset:
            return False
        for p in P.points:
            if sum(a * b for a, b in zip(self.normal, p)) > self.offset:
                return False
        return True


MembershipCertificate = ConvexCombination | SeparatingHyperplane


def _membership_raw(
    q: Point, pts: Sequence[Point], d: int
) -> MembershipCertificate:
    """Exact LP membership of q in conv(pts): weights or a strict separator."""
    n = len(pts)
    A: list[list[Fraction]] = [[pts[j][i] for j in range(n)] for i in range(d)]
    A.append([Fraction(1)] * n)
    b = list(q) + [Fraction(1)]
    x, farkas = solve_eq_nonneg(A, b, num_vars=n)
    if x is not None:
        return ConvexCombination(tuple(x))
    assert farkas is not None
    normal = tuple(farkas[:d])
    return SeparatingHyperplane(normal, -farkas[d])


def convex_membership(q: Sequence, P: PointSet) -> MembershipCertificate:
    """Decide q in conv(P) with an exactly verifiable certificate either way."""
    q = as_point(q, P.dim)
    cert = _membership_raw(q, P.points, P.dim)
    if not cert.verify(q, P):
        raise AssertionError("membership certificate failed self-verification")
    return cert


# ---------------------------------------------------------------------------
# extreme points (= hull vertices = removable points)

def _extreme_1d(ipts, idxs) -> list[int]:
    """Strict min/max coordinate holders; a tied extreme is not a vertex."""
    lo = hi = None
    lo_i = hi_i = -1
    lo_dup = hi_dup = False
    for i in idxs:
        x = ipts[i][0]
        if lo is None or x < lo:
            lo, lo_i, lo_dup = x, i, False
        elif x == lo:
            lo_dup = True
        if hi is None or x > hi:
            hi, hi_i, hi_dup = x, i, False
        elif x == hi:
            hi_dup = True
    out = []
    if not lo_dup:
        out.append(lo_i)
    if hi_i != lo_i and not hi_dup:
        out.append(hi_i)
    return sorted(out)


def _chain_2d(ipts, idxs) -> list[int]:
    """Monotone-chain hull vertices (strict turns, so collinear middles drop out)."""
    order = sorted(idxs, key=lambda i: ipts[i])
    if len(order) <= 2:
        return list(order)

    def cross(o, a, b):
        ox, oy = ipts[o]
        ax, ay = ipts[a]
        bx, by = ipts[b]
        return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)

    lower: list[int] = []
    for i in order:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(order):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    return sorted(lower[:-1] + upper[:-1])


def _orient3(ipts, a, b, c, d) -> int:
    ax, ay, az = ipts[a]
    u0, u1, u2 = ipts[b][0] - ax, ipts[b][1] - ay, ipts[b][2] - az
    v0, v1, v2 = ipts[c][0] - ax, ipts[c][1] - ay, ipts[c][2] - az
    w0, w1, w2 = ipts[d][0] - ax, ipts[d][1] - ay, ipts[d][2] - az
    det = (
        u0 * (v1 * w2 - v2 * w1)
        - u1 * (v0 * w2 - v2 * w0)
        + u2 * (v0 * w1 - v1 * w0)
    )
    return 1 if det > 0 else -1 if det < 0 else 0


def _wrap_3d(ipts, idxs) -> list[int]:
    """Gift-wrapping hull vertices in R^3.  Requires general position, |idxs| >= 5."""
    start = min(idxs, key=lambda i: ipts[i])
    rest = [i for i in idxs if i != start]
    first = None
    for a, b in combinations(rest, 2):
        side = 0
        ok = True
        for q in rest:
            if q == a or q == b:
                continue
            o = _orient3(ipts, start, a, b, q)
            if o == 0:
                raise AssertionError("gift wrap requires general position")
            if side == 0:
                side = o
            elif o != side:
                ok = False
                break
        if ok:
            # orient the facet so every other point is on its negative side
            first = (start, a, b) if side < 0 else (start, b, a)
            break
    assert first is not None, "no initial facet found"
    verts = set(first)
    seen_facets = {frozenset(first)}
    done_edges: set[tuple[int, int]] = set()
    stack = [first]
    while stack:
        fa, fb, fc = stack.pop()
        for u, v, w in ((fa, fb, fc), (fb, fc, fa), (fc, fa, fb)):
            if (u, v) in done_edges:
                continue
            apex = None
            for q in idxs:
                if q == u or q == v or q == w:
                    continue
                if apex is None or _orient3(ipts, v, u, apex, q) > 0:
                    apex = q
            done_edges.add((u, v))
            done_edges.add((v, u))
            facet = (v, u, apex)
            verts.add(apex)
            key = frozenset(facet)
            if key not in seen_facets:
                seen_facets.add(key)
                stack.append(facet)
    return sorted(verts)


def _extreme_lp(pts: Sequence[Point], d: int, idxs) -> list[int]:
    """Definitional route: i is extreme iff p_i is not in conv of the others."""
    out = []
    for i in idxs:
        others = [pts[j] for j in idxs if j != i]
        if not _membership_raw(pts[i], others, d).is_member:
            out.append(i)
    return sorted(out)


def extreme_indices(P: PointSet, idxs: Sequence[int]) -> list[int]:
    """Extreme points of P restricted to idxs.  Assumes general position.

    This is the hot path of the peeling recursion; the caller is responsible for
    having rejected degenerate sets up front.
    """
    d = P.dim
    idxs = list(idxs)
    if len(idxs) <= d + 1:
        return sorted(idxs)
    if d == 1:
        return _extreme_1d(P.integer_coords(), idxs)
    if d == 2:
        return _chain_2d(P.integer_coords(), idxs)
    if d == 3:
        return _wrap_3d(P.integer_coords(), idxs)
    return _extreme_lp(P.points, d, idxs)


def hull_vertices(P: PointSet) -> frozenset[int]:
    """Indices i with P[i] outside conv(P minus P[i]) — the removable points.

    Total over all inputs: fast exact routes handle dimensions 1-3 (and any
    general-position set), the LP membership definition covers degenerate
    higher-dimensional sets.
    """
    n = len(P)
    if n == 0:
        raise InputError("hull_vertices of an empty point set")
    d = P.dim
    idxs = range(n)
    if d == 1:
        return frozenset(_extreme_1d(P.integer_coords(), idxs))
    dup_free = len(set(P.points)) == n
    if d == 2 and dup_free:
        return frozenset(_chain_2d(P.integer_coords(), idxs))
    if d == 2:
        counts: dict[Point, int] = {}
        for p in P.points:
            counts[p] = counts.get(p, 0) + 1
        unique = [i for i in idxs if counts[P.points[i]] == 1]
        return frozenset(_chain_2d(P.integer_coords(), unique)) if unique else frozenset()
    if general_position_violation(P) is None:
        return frozenset(extreme_indices(P, list(idxs)))
    return frozenset(_extreme_lp(P.points, d, idxs))
