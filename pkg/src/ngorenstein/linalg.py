"""Exact integer/rational linear algebra for intersection forms.

Everything here works on Python ints and :class:`fractions.Fraction`; there is
no floating point.  Matrices are plain lists of rows.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .graph import DecoratedGraph, GraphError

Matrix = list[list[int]]


class SingularMatrixError(ArithmeticError):
    pass


def intersection_matrix(g: DecoratedGraph) -> Matrix:
    """``M[i][i] = -e_i`` and ``M[i][j] = e_ij`` in canonical vertex order."""
    if g.e is None:
        raise GraphError("intersection matrix needs self-intersection weights")
    adj = g.adjacency()
    for i, v in enumerate(g.vertices):
        adj[i][i] = -g.e[v]
    return adj


def matrix_from_weights(adjacency: Sequence[Sequence[int]], e: Sequence[int]) -> Matrix:
    m = [list(row) for row in adjacency]
    for i, ei in enumerate(e):
        m[i][i] = -ei
    return m


def leading_minors(m: Sequence[Sequence[int]], stop_at_zero: bool = False) -> list[int]:
    """Leading principal minors via fraction-free (Bareiss) elimination.

    Without pivoting, the k-th Bareiss pivot is exactly the determinant of the
    leading k x k block.  With ``stop_at_zero`` the sequence ends at the first
    vanishing minor, since elimination cannot continue past it.
    """
    n = len(m)
    a = [list(row) for row in m]
    minors = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot == 0:
            if stop_at_zero:
                return minors
            # rest of the sequence via cofactor-free fallback
            minors.extend(_det(row[: j + 1] for row in m[: j + 1]) for j in range(k + 1, n))
            return minors
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
        prev = pivot
    return minors


def _det(rows) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1] if n else 1


def determinant(m: Sequence[Sequence[int]]) -> int:
    return _det(m)


def is_negative_definite(m: Sequence[Sequence[int]]) -> bool:
    """Sylvester criterion: ``(-1)^k D_k > 0`` for every leading minor ``D_k``."""
    sign = -1
    for d in leading_minors(m, stop_at_zero=True):
        if d * sign <= 0:
            return False
        sign = -sign
    return True


def solve_exact(m: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction]:
    """Solve ``M x = b`` exactly.

    Bareiss elimination on the augmented matrix with row pivoting, then
    rational back substitution.  Raises :class:`SingularMatrixError` when
    ``M`` is singular.
    """
    n = len(m)
    if len(b) != n:
        raise ValueError("dimension mismatch")
    a = [list(row) + [bi] for row, bi in zip(m, b)]
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    break
            else:
                raise SingularMatrixError("matrix is singular")
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n + 1):
                a[i][j] = (a[i][j] * pivot - aik * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    x: list[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(a[i][n])
        for j in range(i + 1, n):
            acc -= a[i][j] * x[j]
        x[i] = acc / a[i][i]
    return x


def mat_vec(m: Sequence[Sequence[int]], x: Sequence) -> list:
    return [sum(mij * xj for mij, xj in zip(row, x)) for row in m]


def quadratic_form(m: Sequence[Sequence[int]], x: Sequence) -> Fraction | int:
    return sum(xi * yi for xi, yi in zip(x, mat_vec(m, x)))
