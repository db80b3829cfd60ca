"""Fraction-free Gaussian elimination and exact kernel bases."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence


def _integer_rows(rows: Sequence[Sequence]) -> List[List[int]]:
    out = []
    for row in rows:
        fr = [Fraction(v) for v in row]
        scale = lcm(*(v.denominator for v in fr)) if fr else 1
        out.append([int(v * scale) for v in fr])
    return out


def fraction_free_echelon(rows: Sequence[Sequence]) -> tuple:
    """Bareiss elimination of a rational matrix to integer row-echelon form.

    Each row is first scaled to integers; the elimination then stays in
    the integers (every division by the previous pivot is exact).

    Returns ``(echelon_rows, pivot_columns)``; only the first
    ``len(pivot_columns)`` rows are nonzero.
    """
    m = _integer_rows(rows)
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        k = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if k is None:
            continue
        if k != r:
            m[r], m[k] = m[k], m[r]
        piv = m[r][c]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                num = piv * m[i][j] - m[i][c] * m[r][j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss step lost exactness"
                m[i][j] = q
            m[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(fraction_free_echelon(rows)[1])


def kernel_basis(rows: Sequence[Sequence], n_cols: int | None = None) -> List[List[Fraction]]:
    """Right kernel of ``rows`` as a list of rational vectors.

    One basis vector per free column, in column order. Each vector is
    scaled so that its first nonzero coordinate equals 1.
    """
    if n_cols is None:
        if not rows:
            raise ValueError("n_cols required for an empty matrix")
        n_cols = len(rows[0])
    ech, pivots = fraction_free_echelon(rows) if rows else ([], [])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n_cols
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum((ech[r][j] * x[j] for j in range(pc + 1, n_cols)), Fraction(0))
            x[pc] = -s / ech[r][pc]
        lead = next(v for v in x if v != 0)
        basis.append([v / lead for v in x])
    return basis
