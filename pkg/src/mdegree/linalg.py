"""Exact dense matrix helpers over a Field."""
from __future__ import annotations

from typing import Sequence

from .fields import Field, Scalar

Matrix = list  # list[list[Scalar]]


def identity(n: int, field: Field) -> Matrix:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(r) for r in zip(*a)]


def matmul(a, b) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), start=row[0] * 0) for col in bt] for row in a]


def congruent(gram, p) -> Matrix:
    """``P^T G P``."""
    return matmul(matmul(transpose(p), gram), p)


def is_symmetric(a) -> bool:
    n = len(a)
    return all(len(r) == n for r in a) and all(a[i][j] == a[j][i] for i in range(n) for j in range(i))


def rank(a, field: Field) -> int:
    m = [[field(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def det(a, field: Field) -> Scalar:
    m = [[field(x) for x in row] for row in a]
    n = len(m)
    d = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d = d * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d
