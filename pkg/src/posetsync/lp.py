"""Exact-rational feasibility test for A x = b, x >= 0.

Phase-one simplex over Fraction arithmetic with Bland's pivoting rule,
so it terminates without any cycling safeguards beyond the rule itself.
When the system is infeasible the final reduced costs yield a separating
vector y with y.A <= 0 componentwise and y.b > 0, which the caller can
re-verify independently of anything the solver did.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InternalCheckError
from .measures import ZERO, ONE


def feasible_nonnegative_solution(columns, b):
    """Decide whether b is a nonnegative combination of the columns.

    columns: sequence of equal-length Fraction vectors.
    Returns (True, x) with sum_j x[j] * columns[j] == b, or (False, y)
    with y.columns[j] <= 0 for every j and y.b > 0.
    """
    m = len(b)
    n = len(columns)
    rows = [[Fraction(col[i]) for col in columns] for i in range(m)]
    rhs = [Fraction(v) for v in b]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # Tableau over original plus artificial columns; artificials start basic.
    for i in range(m):
        rows[i].extend(ONE if k == i else ZERO for k in range(m))
    basis = list(range(n, n + m))
    # Reduced costs for minimizing the artificial total; the artificial
    # columns themselves start with reduced cost 1 - 1 = 0.
    cost = [-sum(rows[i][j] for i in range(m)) for j in range(n)] + [ZERO] * m

    while True:
        entering = next((j for j in range(n + m) if cost[j] < 0), None)
        if entering is None:
            break
        pivot_row = best_ratio = None
        for i in range(m):
            if rows[i][entering] > 0:
                ratio = rhs[i] / rows[i][entering]
                if (pivot_row is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[pivot_row])):
                    pivot_row, best_ratio = i, ratio
        if pivot_row is None:
            raise InternalCheckError("phase-one objective unbounded")
        _pivot(rows, rhs, cost, pivot_row, entering)
        basis[pivot_row] = entering

    total_artificial = sum(rhs[i] for i in range(m) if basis[i] >= n)
    if total_artificial > 0:
        # y_i = 1 - reduced cost of artificial i; certified infeasibility.
        y = [ONE - cost[n + i] for i in range(m)]
        sign = [ONE if Fraction(b[i]) >= 0 else -ONE for i in range(m)]
        y = [y[i] * sign[i] for i in range(m)]
        check_separating(columns, b, y)
        return False, y

    x = [ZERO] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = rhs[i]
    for i in range(m):
        acc = sum((x[j] * Fraction(columns[j][i]) for j in range(n)), ZERO)
        if acc != Fraction(b[i]):
            raise InternalCheckError("solution fails to reproduce the target")
    return True, x


def _pivot(rows, rhs, cost, pr, pc):
    inv = ONE / rows[pr][pc]
    rows[pr] = [v * inv for v in rows[pr]]
    rhs[pr] *= inv
    for i in range(len(rows)):
        if i != pr and rows[i][pc] != 0:
            factor = rows[i][pc]
            rows[i] = [v - factor * w for v, w in zip(rows[i], rows[pr])]
            rhs[i] -= factor * rhs[pr]
    factor = cost[pc]
    for j in range(len(cost)):
        cost[j] -= factor * rows[pr][j]


def check_separating(columns, b, y):
    """Assert the separating-vector inequalities hold exactly."""
    for j, col in enumerate(columns):
        dot = sum((Fraction(y[i]) * Fraction(col[i]) for i in range(len(b))), ZERO)
        if dot > 0:
            raise InternalCheckError(
                f"separating vector has positive product with column {j}")
    if sum((Fraction(y[i]) * Fraction(b[i]) for i in range(len(b))), ZERO) <= 0:
        raise InternalCheckError("separating vector does not separate the target")
