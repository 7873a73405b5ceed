"""Dense exact linear algebra over Fractions.

Vectors and matrix rows are plain lists of Fractions.  Reduction always
pivots on the lowest available column so results are reproducible.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)


def rref(rows, ncols):
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead for x in m[r]]
        row = m[r]
        nz = [j for j in range(c, ncols) if row[j]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                mi = m[i]
                for j in nz:
                    mi[j] -= f * row[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of {x : A x = 0}, one vector per free column (free entry 1)."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows, ncols, rhs):
    """A particular solution of A x = rhs with free variables zero, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def transpose(rows, nrows, ncols):
    return [[rows[i][j] for i in range(nrows)] for j in range(ncols)]


def span_basis(vectors, n):
    """Echelon basis of the span of ``vectors`` in K^n."""
    return rref(vectors, n)[0]


def in_span(basis_rref, pivots, v) -> bool:
    w = list(v)
    for row, p in zip(basis_rref, pivots):
        if w[p]:
            f = w[p]
            w = [a - f * b for a, b in zip(w, row)]
    return not any(w)
