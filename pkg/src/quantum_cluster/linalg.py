"""Exact integer/rational matrix helpers.

Rank and inverse go through sympy.  Integer kernels need a lattice basis
(not just a rational one), which sympy does not hand out directly, so that
part is a unimodular column reduction done here.
"""

from __future__ import annotations

from fractions import Fraction


def _sym(rows, ncols=None):
    import sympy

    rows = [list(r) for r in rows]
    if not rows:
        return sympy.zeros(0, ncols or 0)
    if ncols is None:
        ncols = len(rows[0])
    return sympy.Matrix(len(rows), ncols, [x for r in rows for x in r])


def rank(rows, ncols=None) -> int:
    if not rows or (ncols == 0) or (ncols is None and not rows[0]):
        return 0
    return _sym(rows, ncols).rank()


def transpose(rows, ncols=None):
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return tuple(tuple(rows[i][j] for i in range(len(rows))) for j in range(ncols))


def matmul(a, b):
    inner = len(b)
    ncols = len(b[0]) if b else 0
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(ncols))
        for i in range(len(a))
    )


def inverse(rows):
    """Exact inverse as a tuple of Fraction rows; ``None`` when singular."""
    import sympy

    m = _sym(rows)
    if m.rows != m.cols or m.det() == 0:
        return None
    inv = m.inv()
    return tuple(
        tuple(Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(m.cols))
        for i in range(m.rows)
    )


def integer_kernel(rows, ncols: int):
    """Lattice basis of {x in Z^ncols : A x = 0}.

    Column-reduce A by unimodular operations, A U = H with H in column echelon
    form; the columns of U sitting over zero columns of H span the kernel
    lattice exactly.
    """
    a = [list(r) for r in rows]
    nrows = len(a)
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def colop_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    def colop_addmul(dst, src, k):
        # col dst -= k * col src
        for r in a:
            r[dst] -= k * r[src]
        for r in u:
            r[dst] -= k * r[src]

    pivot_col = 0
    for r in range(nrows):
        if pivot_col >= ncols:
            break
        while True:
            nz = [c for c in range(pivot_col, ncols) if a[r][c]]
            if not nz:
                break
            c_min = min(nz, key=lambda c: abs(a[r][c]))
            if c_min != pivot_col:
                colop_swap(c_min, pivot_col)
            done = True
            for c in range(pivot_col + 1, ncols):
                if a[r][c]:
                    colop_addmul(c, pivot_col, a[r][c] // a[r][pivot_col])
                    if a[r][c]:
                        done = False
            if done:
                pivot_col += 1
                break
    basis = [tuple(u[i][c] for i in range(ncols)) for c in range(pivot_col, ncols)]
    return [_normalize(v) for v in basis]


def _normalize(v):
    # first nonzero entry positive, for reproducible output
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v
