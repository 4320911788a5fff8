"""Exact linear programming over the rationals.

Phase-1 simplex with Bland's anticycling rule, run on an all-integer tableau
(integer pivoting: the tableau stays integral with one exact division per entry,
so there is no per-entry gcd churn).  Infeasible systems come back with a Farkas
certificate, which is what turns "not a convex combination" into a concrete
separating hyperplane upstream.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise AssertionError("integer pivoting produced a non-exact division")
    return q


def solve_eq_nonneg(
    A: Sequence[Sequence[Fraction]], b: Sequence[Fraction], num_vars: int | None = None
) -> tuple[list[Fraction] | None, list[Fraction] | None]:
    """Find x >= 0 with A x = b, exactly.

    Returns ``(x, None)`` when feasible.  Otherwise ``(None, y)`` where y is a
    Farkas certificate for the original rows: y·A_j <= 0 for every column j and
    y·b > 0 (verified before returning).
    """
    m = len(A)
    if num_vars is None:
        num_vars = len(A[0]) if m else 0
    n = num_vars
    if m == 0:
        return [Fraction(0)] * n, None

    # Scale every row to integers (positive scale), then flip signs so b >= 0.
    int_rows: list[list[int]] = []
    int_b: list[int] = []
    row_scale: list[Fraction] = []
    for i in range(m):
        row = [Fraction(c) for c in A[i]]
        rhs = Fraction(b[i])
        scale = lcm(rhs.denominator, *(c.denominator for c in row)) if row else rhs.denominator
        irow = [int(c * scale) for c in row]
        irhs = int(rhs * scale)
        if irhs < 0:
            irow = [-v for v in irow]
            irhs = -irhs
            row_scale.append(Fraction(-scale))
        else:
            row_scale.append(Fraction(scale))
        int_rows.append(irow)
        int_b.append(irhs)

    # Tableau: m constraint rows then the reduced-cost row; columns are the n
    # structural variables, m artificials, and the rhs.  True tableau = T / den.
    rhs_col = n + m
    T: list[list[int]] = []
    for i in range(m):
        row = int_rows[i] + [0] * m + [int_b[i]]
        row[n + i] = 1
        T.append(row)
    obj = [0] * (n + m + 1)
    for j in range(n):
        obj[j] = -sum(T[i][j] for i in range(m))
    obj[rhs_col] = -sum(int_b)
    T.append(obj)
    den = 1
    basis = list(range(n, n + m))

    while True:
        enter = -1
        for j in range(n):  # Bland: smallest structural index with negative reduced cost
            if T[m][j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        for i in range(m):
            if T[i][enter] > 0:
                if leave < 0:
                    leave = i
                    continue
                lhs = T[i][rhs_col] * T[leave][enter]
                rhs = T[leave][rhs_col] * T[i][enter]
                if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                    leave = i
        if leave < 0:
            raise AssertionError("phase-1 objective cannot be unbounded")
        piv = T[leave][enter]
        pivot_row = T[leave]
        for i in range(m + 1):
            if i == leave:
                continue
            row = T[i]
            factor = row[enter]
            for j in range(n + m + 1):
                row[j] = _exact_div(row[j] * piv - factor * pivot_row[j], den)
        den = piv
        basis[leave] = enter

    if T[m][rhs_col] == 0:  # objective reached zero: feasible
        x = [Fraction(0)] * n
        for i, bv in enumerate(basis):
            if bv < n:
                x[bv] = Fraction(T[i][rhs_col], den)
        return x, None

    # Infeasible: dual values off the artificial columns give the Farkas vector.
    y_scaled = [Fraction(den - T[m][n + k], den) for k in range(m)]
    y = [y_scaled[i] * row_scale[i] for i in range(m)]
    for j in range(n):  # exact verification before handing the certificate out
        if sum(y[i] * A[i][j] for i in range(m)) > 0:
            raise AssertionError("Farkas certificate failed column verification")
    if sum(y[i] * b[i] for i in range(m)) <= 0:
        raise AssertionError("Farkas certificate failed rhs verification")
    return None, y


def find_vector(
    dim: int,
    ge: Sequence[tuple[Sequence[Fraction], Fraction]] = (),
    le: Sequence[tuple[Sequence[Fraction], Fraction]] = (),
    eq: Sequence[tuple[Sequence[Fraction], Fraction]] = (),
) -> list[Fraction] | None:
    """Find any rational v in R^dim with w·v >= r / <= r / == r per constraint list.

    Free variables are split v = p - q with p, q >= 0 and inequalities get slack
    columns, then phase-1 decides feasibility.  Returns v or None.
    """
    n_slack = len(ge) + len(le)
    width = 2 * dim + n_slack
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    slack_at = 2 * dim
    for kind, rows in (("ge", ge), ("le", le), ("eq", eq)):
        for coeffs, rhs in rows:
            coeffs = [Fraction(c) for c in coeffs]
            if len(coeffs) != dim:
                raise ValueError("constraint width mismatch")
            row = [Fraction(0)] * width
            for j in range(dim):
                row[j] = coeffs[j]
                row[dim + j] = -coeffs[j]
            if kind == "ge":
                row[slack_at] = Fraction(-1)
                slack_at += 1
            elif kind == "le":
                row[slack_at] = Fraction(1)
                slack_at += 1
            A.append(row)
            b.append(Fraction(rhs))
    x, _ = solve_eq_nonneg(A, b, num_vars=width)
    if x is None:
        return None
    return [x[j] - x[dim + j] for j in range(dim)]
