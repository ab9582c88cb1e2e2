"""Dense exact linear algebra over the rationals.

Matrices are tuples of tuples of Fractions; vectors are tuples of Fractions.
Everything here is pure and allocation-happy — fine at desk scale.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def mat(rows) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def zeros(n: int, m: int) -> tuple:
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n))


def eye(n: int) -> tuple:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def shape(a) -> tuple:
    return (len(a), len(a[0]) if a else 0)


def add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(a, c):
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mul(a, b):
    n, k = shape(a)
    k2, m = shape(b)
    assert k == k2, f"shape mismatch {shape(a)} x {shape(b)}"
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a):
    return tuple(zip(*a)) if a else ()


def commutator(a, b):
    return sub(mul(a, b), mul(b, a))


def trace(a):
    return sum(a[i][i] for i in range(len(a)))


def is_zero(a) -> bool:
    return all(all(x == 0 for x in row) for row in a)


def rref(a):
    """Reduced row echelon form; returns (rref matrix, pivot column list)."""
    m = [list(row) for row in a]
    n_rows, n_cols = shape(a)
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return tuple(tuple(row) for row in m), pivots


def rank(a) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a):
    """Basis of the right kernel, one vector per free column (set to 1)."""
    r, pivots = rref(a)
    n_cols = shape(a)[1]
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for row, pc in zip(r, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return basis


def solve(a, b):
    """One solution x of a x = b, or None if inconsistent."""
    n_rows, n_cols = shape(a)
    aug = tuple(row + (bv,) for row, bv in zip(a, b))
    r, pivots = rref(aug)
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for row, pc in zip(r, pivots):
        x[pc] = row[-1]
    return tuple(x)


def det(a):
    m = [list(row) for row in a]
    n = len(m)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        result *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return sign * result


def inverse(a):
    n = len(a)
    aug = tuple(row + tuple(Fraction(1 if i == j else 0) for j in range(n)) for i, row in enumerate(a))
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in r)


def column_space_coords(basis_cols: Sequence[tuple], v: tuple):
    """Coordinates of v in span(basis_cols), or None if outside."""
    a = transpose(tuple(basis_cols))
    return solve(a, v)
