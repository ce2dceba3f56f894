"""Small dense linear algebra over any scalar context.

Exact contexts get Gauss-Jordan elimination on their own scalars; the numeric
context hands off to numpy.
"""

from __future__ import annotations

import numpy as np

from .scalars import Context, NumericContext

Matrix = list[list]


def identity(size: int, ctx: Context) -> Matrix:
    return [[ctx.one if i == j else ctx.zero for j in range(size)] for i in range(size)]


def transpose(m: Matrix) -> Matrix:
    return [list(row) for row in zip(*m)]


def matmul(a: Matrix, b: Matrix, ctx: Context) -> Matrix:
    cols = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in cols:
            total = ctx.zero
            for x, y in zip(row, col):
                if not (ctx.is_zero(x) or ctx.is_zero(y)):
                    total = total + x * y
            out_row.append(total)
        out.append(out_row)
    return out


def matvec(a: Matrix, v: list, ctx: Context) -> list:
    return [sum((x * y for x, y in zip(row, v)), ctx.zero) for row in a]


def inverse(m: Matrix, ctx: Context) -> Matrix:
    """Inverse of a square matrix; raises ZeroDivisionError when singular."""
    size = len(m)
    if isinstance(ctx, NumericContext):
        arr = np.array([[complex(x) for x in row] for row in m])
        try:
            inv = np.linalg.inv(arr)
        except np.linalg.LinAlgError as exc:
            raise ZeroDivisionError("singular matrix") from exc
        return [[complex(x) for x in row] for row in inv]
    work = [list(row) + identity(size, ctx)[i] for i, row in enumerate(m)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if not ctx.is_zero(work[r][col])), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        inv_p = ctx.one / work[col][col]
        work[col] = [x * inv_p for x in work[col]]
        for r in range(size):
            if r == col or ctx.is_zero(work[r][col]):
                continue
            factor = work[r][col]
            work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return [row[size:] for row in work]


def max_abs_diff(a: Matrix, b: Matrix) -> float:
    return max(abs(complex(x) - complex(y)) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def equal(a: Matrix, b: Matrix, ctx: Context) -> bool:
    return all(ctx.is_zero(x - y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))
