"""A small exact linear-program solver over Fractions.

Two-phase simplex on a dense tableau with Bland's rule, so it terminates
and every pivot is exact.  Meant for oracles of a few dozen variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

ZERO = Fraction(0)


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[Fraction]
    x: Optional[list]


def _pivot(T: list, basis: list, r: int, c: int) -> None:
    row = T[r]
    p = row[c]
    if p != 1:
        T[r] = row = [v / p for v in row]
    nz = [j for j, v in enumerate(row) if v]
    for i, other in enumerate(T):
        if i != r and other[c]:
            m = other[c]
            for j in nz:
                other[j] -= m * row[j]
    basis[r] = c


def _run(T: list, basis: list, allowed: int) -> bool:
    """Minimize the objective in the last row; False when unbounded."""
    obj = T[-1]
    while True:
        obj = T[-1]
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return True
        best, row = None, None
        for i in range(len(T) - 1):
            a = T[i][col]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best, row = ratio, i
        if row is None:
            return False
        _pivot(T, basis, row, col)


def minimize(c: Sequence, A_eq: Sequence = (), b_eq: Sequence = (),
             A_ub: Sequence = (), b_ub: Sequence = ()) -> LPResult:
    """min c.x subject to A_eq x = b_eq, A_ub x <= b_ub, x >= 0."""
    n = len(c)
    rows = [([Fraction(v) for v in a], Fraction(b)) for a, b in zip(A_eq, b_eq)]
    slack_rows = [([Fraction(v) for v in a], Fraction(b)) for a, b in zip(A_ub, b_ub)]
    n_slack = len(slack_rows)
    m = len(rows) + n_slack
    width = n + n_slack + m + 1  # structural, slack, artificial, rhs

    T, basis = [], []
    for i, (a, b) in enumerate(rows + slack_rows):
        line = a + [ZERO] * (width - n)
        if i >= len(rows):
            line[n + i - len(rows)] = Fraction(1)
        if b < 0:
            line = [-v for v in line]
            b = -b
        line[n + n_slack + i] = Fraction(1)
        line[-1] = b
        T.append(line)
        basis.append(n + n_slack + i)

    # phase one: drive the artificials out
    phase1 = [ZERO] * width
    for line in T:
        phase1 = [p - v for p, v in zip(phase1, line)]
    for k in range(m):
        phase1[n + n_slack + k] = ZERO
    T.append(phase1)
    _run(T, basis, n + n_slack)
    if T[-1][-1] != 0:
        return LPResult("infeasible", None, None)
    T.pop()
    for i in range(m):
        if basis[i] >= n + n_slack:
            col = next((j for j in range(n + n_slack) if T[i][j] != 0), None)
            if col is not None:
                _pivot(T, basis, i, col)

    obj = [Fraction(v) for v in c] + [ZERO] * (width - n)
    for i, b in enumerate(basis):
        if b < n and obj[b]:
            k = obj[b]
            obj = [o - k * v for o, v in zip(obj, T[i])]
    T.append(obj)
    if not _run(T, basis, n + n_slack):
        return LPResult("unbounded", None, None)
    x = [ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = T[i][-1]
    return LPResult("optimal", -T[-1][-1], x)
