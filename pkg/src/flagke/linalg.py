"""Exact rational linear algebra on small dense matrices.

Matrices are lists of lists of ``Fraction``.  Sizes here are tiny (at most the
total rank of the Lie algebra), so plain fraction-free-ish Gaussian
elimination is both fast enough and exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

Matrix = List[List[Fraction]]
Vector = List[Fraction]


def _as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, List[int]]:
    """Reduced row echelon form; returns (rref, pivot column indices)."""
    m = _as_matrix(rows)
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def nullspace(rows: Sequence[Sequence], n_cols: Optional[int] = None) -> List[Vector]:
    """Basis of {x : A x = 0}, exact.  Handles the zero-row matrix."""
    if not rows:
        assert n_cols is not None, "need column count for an empty system"
        return [[Fraction(i == j) for j in range(n_cols)] for i in range(n_cols)]
    red, pivots = rref(rows)
    n_cols = len(red[0])
    free = [c for c in range(n_cols) if c not in pivots]
    basis: List[Vector] = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[Vector]:
    """One exact solution of A x = b, or None if inconsistent.

    Free variables are set to zero, so the result is the particular solution
    with minimal support in the free columns.
    """
    m = _as_matrix(rows)
    if not m:
        return None
    n_cols = len(m[0])
    aug = [row + [Fraction(b)] for row, b in zip(m, rhs)]
    red, pivots = rref(aug)
    for r, pc in [(r, p) for r, p in enumerate(pivots)]:
        if pc == n_cols:
            return None  # pivot in the rhs column: inconsistent
    x = [Fraction(0)] * n_cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n_cols]
    return x


def invert(rows: Sequence[Sequence]) -> Matrix:
    """Exact inverse of a square nonsingular matrix."""
    m = _as_matrix(rows)
    n = len(m)
    aug = [m[i] + [Fraction(i == j) for j in range(n)] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def mat_vec(rows: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum((Fraction(a) * x for a, x in zip(row, v)), Fraction(0)) for row in rows]


def leading_minors_positive(rows: Sequence[Sequence]) -> bool:
    """Sylvester test for positive definiteness, exact."""
    m = _as_matrix(rows)
    n = len(m)
    for k in range(1, n + 1):
        sub = [row[:k] for row in m[:k]]
        if _det(sub) <= 0:
            return False
    return True


def _det(m: Matrix) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det
