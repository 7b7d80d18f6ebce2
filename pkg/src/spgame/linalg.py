"""Exact Gaussian elimination over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularMatrixError(ArithmeticError):
    pass


def _size(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``a x = b`` exactly.

    Pivoting picks, among the non-zero candidates of the column, the entry
    with the smallest bit size; any non-zero pivot is exact, the size rule
    only keeps intermediate numbers small.
    """
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    if any(len(row) != n + 1 for row in m):
        raise ValueError("matrix must be square and match the right-hand side")
    for col in range(n):
        cands = [r for r in range(col, n) if m[r][col] != 0]
        if not cands:
            raise SingularMatrixError(f"no pivot in column {col}")
        piv = min(cands, key=lambda r: _size(m[r][col]))
        m[col], m[piv] = m[piv], m[col]
        prow = m[col]
        inv = 1 / prow[col]
        for r in range(col + 1, n):
            f = m[r][col]
            if f == 0:
                continue
            f *= inv
            row = m[r]
            for c in range(col, n + 1):
                if prow[c]:
                    row[c] -= f * prow[c]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = m[r][n]
        for c in range(r + 1, n):
            if m[r][c]:
                s -= m[r][c] * x[c]
        x[r] = s / m[r][r]
    return x
