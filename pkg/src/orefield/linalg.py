"""Exact linear algebra over the rationals (and other exact fields).

Everything here is plain Gauss-Jordan elimination with `fractions.Fraction`
entries; no pivoting heuristics are needed because the arithmetic is exact.
The generic variants accept any commutative field elements implementing
``+ - *``, ``inv()`` and ``is_zero()`` so the same elimination drives both
rational systems and systems over larger exact fields.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

Row = list[Fraction]


def rref(rows: list[Row]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form. Returns (reduced rows, pivot column list)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat, pivots


def nullspace(rows: list[Row], ncols: int) -> list[tuple[Fraction, ...]]:
    """Canonical basis of the right kernel of the matrix.

    One basis vector per free column, ordered by free column index; the
    vector has 1 at its free column which makes the basis reproducible.
    """
    if not rows:
        return [
            tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)
        ]
    mat, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -mat[r][fc]
        basis.append(tuple(vec))
    return basis


def solve(rows: list[Row], rhs: list[Fraction]) -> list[Fraction] | None:
    """One solution of ``rows @ x = rhs`` or None if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    mat, pivots = rref(aug)
    ncols = len(rows[0]) if rows else 0
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = mat[r][ncols]
    return x


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[Row]:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            s = Fraction(0)
            for l in range(k):
                if ai[l]:
                    s += ai[l] * b[l][j]
            row.append(s)
        out.append(row)
    return out


def mat_vec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(
        sum((ai[l] * v[l] for l in range(len(v)) if ai[l]), Fraction(0)) for ai in a
    )


def identity(n: int) -> list[Row]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def invert_matrix(a: list[Row]) -> list[Row] | None:
    """Inverse of a square rational matrix, or None if singular."""
    n = len(a)
    aug = [list(a[i]) + identity(n)[i] for i in range(n)]
    mat, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in mat[:n]]


def rank(rows: list[Row]) -> int:
    return len(rref(rows)[1]) if rows else 0


# -- generic elimination over an arbitrary exact (commutative) field ---------
#
# Entries must support +, -, *, unary -, `inv()` and `is_zero()`.  Used for
# matrices over the central subfield of a fraction field, where coefficients
# are exact but not rational numbers.


def nullspace_generic(rows: list[list], ncols: int, one, zero) -> list[list]:
    """Kernel basis, same canonical shape as `nullspace`, over any exact field."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if not mat[i][c].is_zero()), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][c].inv()
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][c].is_zero():
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(vec)
    return basis


def solve_right_generic(rows: list[list], rhs: list, inv: Callable = None):
    """Solve ``sum_j rows[i][j] * x_j = rhs[i]`` over a skew field.

    Row operations only ever multiply a row on the left, which is compatible
    with unknowns appearing on the right of the coefficients; this is the
    elimination that inverts elements of a tensor algebra, where entries do
    not commute.  Returns the solution list or None when singular.
    """
    n = len(rows)
    aug = [list(rows[i]) + [rhs[i]] for i in range(n)]
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, n) if not aug[i][c].is_zero()), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pinv = aug[r][c].inv()
        aug[r] = [pinv * v for v in aug[r]]
        for i in range(n):
            if i != r and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    if len(pivots) < ncols:
        return None
    # fully eliminated rows must carry a zero right-hand side, otherwise the
    # system is overdetermined-inconsistent rather than solvable
    for i in range(len(pivots), n):
        if not aug[i][ncols].is_zero():
            return None
    x = [None] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = aug[i][ncols]
    return x
