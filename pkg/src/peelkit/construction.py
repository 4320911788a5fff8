"""Recursive assembly of point sets with few peeling choices per step.

The assembly packs points into nested "blocks": each block is flattened
into a thin segment (exact rational rotation, then anisotropic scaling)
and placed on one point of a defending base set so that it points at the
origin.  Every structural property the counting argument relies on is
re-certified computationally over the full reachable peeling state space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bounds import defense_number
from .defense import base_set
from .errors import CertificationError, InputError
from .geometry import ConvexCombination, convex_membership, general_position_violation
from .peeling import PeelEngine
from .pointset import Point, PointSet, as_point, origin, to_fraction

AUDIT_LIMIT = 14
MAX_ROTATION_DENOMINATOR = 199
MAX_REPORTED_FAILURES = 20
_K_SCHEDULE = range(2, 15)


@dataclass(frozen=True)
class FlattenParams:
    """Long-axis scale, cross-axis scale, and an exact rotation.

    The rotation is a sequence of plane rotations (i, j, t) using the
    half-angle parameterization: cos = (1-t^2)/(1+t^2), sin = 2t/(1+t^2),
    so every matrix entry is rational and the matrix is exactly orthogonal.
    """

    delta: Fraction
    eps: Fraction
    rotation: tuple[tuple[int, int, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "delta", to_fraction(self.delta))
        object.__setattr__(self, "eps", to_fraction(self.eps))
        if not 0 < self.eps <= self.delta <= 1:
            raise InputError(
                f"need 0 < eps <= delta <= 1, got eps={self.eps}, delta={self.delta}"
            )


@dataclass(frozen=True)
class BlockTree:
    """Structure record of one assembled block.

    node        pre-order id within the build (root = 0)
    placement   the base-set point this block was placed on (None at the root)
    child_sizes block sizes of the partition at this level, largest first
    children    sub-block records, aligned with child_sizes
    leaf_points global point indices when this block is a primitive segment
    """

    node: int
    placement: Point | None
    child_sizes: tuple[int, ...] = ()
    children: tuple["BlockTree", ...] = ()
    leaf_points: tuple[int, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def size(self) -> int:
        if self.is_leaf:
            return len(self.leaf_points)
        return sum(child.size() for child in self.children)

    def point_indices(self) -> tuple[int, ...]:
        """All global point indices covered by this block, ascending."""
        if self.is_leaf:
            return tuple(sorted(self.leaf_points))
        out: list[int] = []
        for child in self.children:
            out.extend(child.point_indices())
        return tuple(sorted(out))


@dataclass(frozen=True)
class CertificationReport:
    """Outcome of the exhaustive audit of one assembled set."""

    passed: bool
    failures: tuple[str, ...]
    point_count: int
    block_count: int
    active_block_cap: int
    peel_total: int | None = None
    block_bound: int | None = None
    bound_ratio: Fraction | None = None
    max_active_blocks: int | None = None
    defended_states: int = 0
    states_visited: int = 0


@dataclass(frozen=True)
class BuildResult:
    points: PointSet
    tree: BlockTree
    m: int
    delta: Fraction | None
    eps: Fraction | None
    certified_up_to: int
    report: CertificationReport | None

    @property
    def dim(self) -> int:
        return self.points.dim


def _matvec(M: Sequence[Sequence[Fraction]], p: Sequence[Fraction]) -> Point:
    return tuple(sum(row[c] * p[c] for c in range(len(p))) for row in M)


def rotation_matrix(
    rotation: Sequence[tuple[int, int, Fraction]], dim: int
) -> tuple[Point, ...]:
    """Compose plane rotations into one exactly orthogonal rational matrix."""
    rows = [[Fraction(int(r == c)) for c in range(dim)] for r in range(dim)]
    for i, j, t in rotation:
        if not (0 <= i < dim and 0 <= j < dim) or i == j:
            raise InputError(f"invalid rotation plane ({i}, {j}) in dimension {dim}")
        t = to_fraction(t)
        den = 1 + t * t
        c = (1 - t * t) / den
        s = 2 * t / den
        row_i = [c * rows[i][col] - s * rows[j][col] for col in range(dim)]
        row_j = [s * rows[i][col] + c * rows[j][col] for col in range(dim)]
        rows[i], rows[j] = row_i, row_j
    return tuple(tuple(row) for row in rows)


def _first_coords_distinct(points: Sequence[Point]) -> bool:
    xs = [p[0] for p in points]
    return len(set(xs)) == len(xs)


def find_rotation(
    P: PointSet, max_denominator: int = MAX_ROTATION_DENOMINATOR
) -> tuple[tuple[int, int, Fraction], ...]:
    """Smallest half-angle rotation making all first coordinates distinct.

    Tries t = 1/q for growing q, mixing every axis into the first one.
    Returns () when the input is already separated.
    """
    if _first_coords_distinct(P.points):
        return ()
    if P.dim == 1:
        raise CertificationError("coincident coordinates on a line cannot be rotated apart")
    for q in range(2, max_denominator + 1):
        t = Fraction(1, q)
        rot = tuple((0, j, t) for j in range(1, P.dim))
        M = rotation_matrix(rot, P.dim)
        if _first_coords_distinct([_matvec(M, p) for p in P]):
            return rot
    raise CertificationError(
        f"no half-angle rotation with denominator <= {max_denominator} "
        "separates the first coordinates"
    )


def flatten(P: PointSet, params: FlattenParams) -> PointSet:
    """Rotate P, then scale the first axis by delta and the rest by eps.

    The map is an invertible linear transformation, so convex-hull
    structure — and with it the peeling count — carries over unchanged.
    """
    M = rotation_matrix(params.rotation, P.dim)
    rotated = [_matvec(M, p) for p in P]
    if not _first_coords_distinct(rotated):
        raise InputError(
            "rotation leaves duplicate first coordinates; search for a finer rotation"
        )
    pts = [
        (params.delta * p[0],) + tuple(params.eps * y for y in p[1:]) for p in rotated
    ]
    return PointSet(P.dim, pts, labels=P.labels, blocks=P.blocks)


def _orthogonal_complement(v: Point) -> list[Point]:
    """Exact rational orthogonal basis of the hyperplane normal to v."""
    d = len(v)
    frame: list[Point] = [v]
    basis: list[Point] = []
    for k in range(d):
        if len(basis) == d - 1:
            break
        e = tuple(Fraction(int(c == k)) for c in range(d))
        w = list(e)
        for u in frame:
            coeff = sum(e[c] * u[c] for c in range(d)) / sum(x * x for x in u)
            for c in range(d):
                w[c] -= coeff * u[c]
        if any(w):
            frame.append(tuple(w))
            basis.append(tuple(w))
    return basis


def place_block(B: PointSet, target) -> PointSet:
    """Send the long axis of a flattened block onto the ray through target.

    Applies the invertible linear map taking the first basis vector to
    target and the remaining ones to an orthogonal rational basis of the
    complement (each rescaled by a power of two to within a factor of two
    of target's length), then translates so the block point with the
    largest first coordinate lands exactly on target.  Being an invertible
    affine map, this preserves the peeling count.
    """
    tgt = as_point(target, B.dim)
    if not any(tgt):
        raise InputError("placement target must differ from the origin")
    if not _first_coords_distinct(B.points):
        raise InputError("block must have pairwise distinct first coordinates")
    tnorm = sum(c * c for c in tgt)
    columns = [tgt]
    for b in _orthogonal_complement(tgt):
        bnorm = sum(c * c for c in b)
        while bnorm > tnorm:
            b = tuple(c / 2 for c in b)
            bnorm /= 4
        while 4 * bnorm <= tnorm:
            b = tuple(2 * c for c in b)
            bnorm *= 4
        columns.append(b)
    mapped = [
        tuple(sum(p[j] * columns[j][c] for j in range(B.dim)) for c in range(B.dim))
        for p in B
    ]
    outer = max(range(len(B)), key=lambda i: B[i][0])
    shift = tuple(tgt[c] - mapped[outer][c] for c in range(B.dim))
    pts = [tuple(q[c] + shift[c] for c in range(B.dim)) for q in mapped]
    return PointSet(B.dim, pts, labels=B.labels, blocks=B.blocks)


def partition_sizes(n: int, D: int) -> tuple[int, ...]:
    """Split n into D nearly equal parts, largest first."""
    q, r = divmod(n, D)
    return (q + 1,) * r + (q,) * (D - r)


def validate_block_tree(tree: BlockTree, n: int, D: int) -> None:
    """Check partition shapes and exact leaf coverage of 0..n-1."""

    def walk(node: BlockTree) -> int:
        if node.is_leaf:
            if not node.leaf_points:
                raise InputError(f"block {node.node} is empty")
            return len(node.leaf_points)
        if len(node.children) != len(node.child_sizes):
            raise InputError(f"block {node.node}: children do not match child_sizes")
        sizes = tuple(child.size() for child in node.children)
        if sizes != node.child_sizes:
            raise InputError(f"block {node.node}: recorded sizes {node.child_sizes} != {sizes}")
        total = sum(sizes)
        lo, hi = total // D, -(-total // D)
        if sum(sizes) != total or any(s not in (lo, hi) for s in sizes):
            raise InputError(
                f"block {node.node}: partition {sizes} is not balanced into {D} parts"
            )
        return total

    walk(tree)
    covered = tree.point_indices()
    if covered != tuple(range(n)):
        raise InputError("leaf blocks do not cover every point index exactly once")


def block_labels(tree: BlockTree, n: int) -> list[int]:
    """Top-level block index per point; a childless root yields unit blocks."""
    if tree.is_leaf:
        return list(range(n))
    labels = [-1] * n
    for j, child in enumerate(tree.children):
        for i in child.point_indices():
            labels[i] = j
    return labels


def _norm_sq(p: Point) -> Fraction:
    return sum(c * c for c in p)


def _state_name(mask: int, n: int) -> str:
    return "{" + ",".join(str(i) for i in range(n) if mask >> i & 1) + "}"


def certify_construction(
    S: PointSet,
    tree: BlockTree,
    m: int,
    audit_limit: int = AUDIT_LIMIT,
    state_budget: int | None = None,
) -> CertificationReport:
    """Exhaustive audit of every reachable peeling state of S.

    Checks, with D = dim + 2m - 1:
      * the set is in general position;
      * while the origin stays inside the hull of the survivors, each
        block exposes at most its outermost surviving point;
      * at most D-m+1 blocks have hull vertices, at every state;
      * the total peeling count is at most (D-m+1)^n times the product
        of the per-block counts, dropping the m smallest blocks.

    Returns a report; failures name the offending state and check.  A
    childless root treats every point as its own unit block.
    """
    n = len(S)
    if n == 0:
        raise InputError("cannot certify an empty point set")
    if n > audit_limit:
        raise InputError(f"{n} points exceed the exhaustive-audit limit ({audit_limit})")
    if m < 1:
        raise InputError("m must be >= 1")
    d = S.dim
    D = defense_number(d, m)
    cap = D - m + 1
    validate_block_tree(tree, n, D)
    labels = block_labels(tree, n)
    if S.blocks is not None and list(S.blocks) != labels:
        raise InputError("point-set block labels disagree with the block tree")

    failures: list[str] = []

    def note(msg: str) -> None:
        if len(failures) < MAX_REPORTED_FAILURES:
            failures.append(msg)
        elif len(failures) == MAX_REPORTED_FAILURES:
            failures.append("further failures suppressed")

    witness = general_position_violation(S)
    if witness is not None:
        note(f"general-position: points {witness} are affinely degenerate")
        return CertificationReport(
            passed=False,
            failures=tuple(failures),
            point_count=n,
            block_count=len(set(labels)),
            active_block_cap=cap,
        )

    engine = PeelEngine(S, state_budget)
    total = engine.count(engine.full_mask())
    masks = sorted(engine.reachable_masks(), key=lambda mk: (-bin(mk).count("1"), mk))

    parents: dict[int, list[int]] = {}
    for mask in masks:
        for v in engine.hull(mask):
            parents.setdefault(mask & ~(1 << v), []).append(mask)

    zero = origin(d)
    defended: dict[int, bool] = {}
    defended_states = 0
    max_active = 0
    for mask in masks:
        hull = engine.hull(mask)
        active = {labels[v] for v in hull}
        if len(active) > cap:
            note(
                f"active-blocks: state {_state_name(mask, n)} exposes "
                f"{len(active)} blocks, cap is {cap}"
            )
        max_active = max(max_active, len(active))

        ups = parents.get(mask)
        if ups is None:
            is_defended = isinstance(convex_membership(zero, S), ConvexCombination)
        elif any(not defended[u] for u in ups):
            is_defended = False  # shrinking a state never re-admits the origin
        else:
            sub = S.subset([i for i in range(n) if mask >> i & 1])
            is_defended = isinstance(convex_membership(zero, sub), ConvexCombination)
        defended[mask] = is_defended
        if not is_defended:
            continue
        defended_states += 1

        for b in active:
            survivors = [i for i in range(n) if mask >> i & 1 and labels[i] == b]
            best = max(survivors, key=lambda i: _norm_sq(S[i]))
            ties = [i for i in survivors if _norm_sq(S[i]) == _norm_sq(S[best])]
            if len(ties) > 1:
                note(
                    f"outermost-only: state {_state_name(mask, n)} block {b} has "
                    f"distance-tied points {ties}"
                )
                continue
            exposed = [v for v in hull if labels[v] == b and v != best]
            if exposed:
                note(
                    f"outermost-only: state {_state_name(mask, n)} block {b} exposes "
                    f"{exposed} although {best} is farther out"
                )

    if tree.is_leaf:
        sizes = [1] * n
        counts = [1] * n
    else:
        sizes = list(tree.child_sizes)
        counts = []
        for child in tree.children:
            sub = S.subset(child.point_indices())
            counts.append(PeelEngine(sub, state_budget).count((1 << len(sub)) - 1))
    ordered = sorted(zip(sizes, counts))
    bound = cap**n
    for _, g in ordered[m:]:
        bound *= g
    if total > bound:
        note(f"count-bound: {total} peeling sequences exceed the block bound {bound}")

    return CertificationReport(
        passed=not failures,
        failures=tuple(failures),
        point_count=n,
        block_count=len(sizes),
        active_block_cap=cap,
        peel_total=total,
        block_bound=bound,
        bound_ratio=Fraction(total, bound),
        max_active_blocks=max_active,
        defended_states=defended_states,
        states_visited=len(masks),
    )


def _assemble(
    d: int,
    base: PointSet,
    n: int,
    delta: Fraction,
    eps: Fraction,
) -> tuple[list[Point], BlockTree]:
    """Recursively build the n-point assembly with fixed scales."""
    D = len(base)

    def rec(size: int, offset: int, node_id: int, placement: Point | None):
        if size <= D:
            pts = [base[i] for i in range(size)]
            tree = BlockTree(
                node=node_id,
                placement=placement,
                leaf_points=tuple(range(offset, offset + size)),
            )
            return pts, tree, node_id + 1
        sizes = partition_sizes(size, D)
        pts: list[Point] = []
        children: list[BlockTree] = []
        next_id = node_id + 1
        off = offset
        for j, sz in enumerate(sizes):
            sub_pts, sub_tree, next_id = rec(sz, off, next_id, base[j])
            block = PointSet(d, sub_pts)
            flat = flatten(block, FlattenParams(delta, eps, find_rotation(block)))
            placed = place_block(flat, base[j])
            pts.extend(placed.points)
            children.append(sub_tree)
            off += sz
        tree = BlockTree(
            node=node_id,
            placement=placement,
            child_sizes=sizes,
            children=tuple(children),
        )
        return pts, tree, next_id

    pts, tree, _ = rec(n, 0, 0, None)
    return pts, tree


def build(
    d: int,
    m: int,
    n: int,
    audit_limit: int = AUDIT_LIMIT,
    state_budget: int | None = None,
) -> BuildResult:
    """Assemble and certify the n-point construction for dimension d.

    For n at most D = d+2m-1 this is a prefix of the defending base set.
    Larger sets are partitioned into D nearly equal blocks, built
    recursively, flattened with delta = 1/2^k, eps = delta/2^k, and placed
    on the base points; k grows until certification passes.  Beyond the
    exhaustive-audit limit the scales are calibrated at the largest
    auditable size and the result records how far certification reached.
    """
    if d < 2:
        raise InputError("construction requires dimension >= 2")
    if m < 1 or n < 1:
        raise InputError("m and n must be >= 1")
    D = defense_number(d, m)
    base = base_set(d, m).points

    if n <= D:
        S = PointSet(d, [base[i] for i in range(n)], blocks=list(range(n)))
        tree = BlockTree(node=0, placement=None, leaf_points=tuple(range(n)))
        report = certify_construction(S, tree, m, audit_limit, state_budget)
        if not report.passed:
            raise CertificationError(
                f"base prefix of size {n} failed its audit: {report.failures[0]}"
            )
        return BuildResult(S, tree, m, None, None, n, report)

    if n <= audit_limit:
        last: CertificationReport | None = None
        for k in _K_SCHEDULE:
            delta = Fraction(1, 2**k)
            eps = delta / 2**k
            pts, tree = _assemble(d, base, n, delta, eps)
            S = PointSet(d, pts, blocks=block_labels(tree, n))
            report = certify_construction(S, tree, m, audit_limit, state_budget)
            if report.passed:
                return BuildResult(S, tree, m, delta, eps, n, report)
            last = report
        detail = last.failures[0] if last and last.failures else "no audit ran"
        raise CertificationError(
            f"no flattening scale in the schedule certified n={n}: {detail}"
        )

    calibrated = build(d, m, audit_limit, audit_limit, state_budget)
    delta = calibrated.delta if calibrated.delta is not None else Fraction(1, 2**4)
    eps = calibrated.eps if calibrated.eps is not None else Fraction(1, 2**8)
    pts, tree = _assemble(d, base, n, delta, eps)
    S = PointSet(d, pts, blocks=block_labels(tree, n))
    witness = general_position_violation(S)
    if witness is not None:
        raise CertificationError(
            f"calibrated scales leave points {witness} degenerate at n={n}"
        )
    return BuildResult(S, tree, m, delta, eps, calibrated.certified_up_to, None)
