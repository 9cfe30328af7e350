"""Exact fraction-free route to the canonical kernel vector.

The canonical vector of an n x m matrix A of rank k < m is fixed as follows:
rows R are the row rank profile, pivots are the column rank profile, c0 is
the first non-pivot column, A_1 = A[R, pivots], and

    v[pivot_i] = det(A_1 with column i replaced by A[R, c0]),
    v[c0] = -det(A_1),

with zeros elsewhere.  Both the Bareiss route here and the modular engine
return exactly this vector.
"""

from __future__ import annotations

from ..poly import UniPoly, poly_gcd
from .matrix import LinalgError, PolyMatrix


def _first_nonzero(row) -> int:
    for j, e in enumerate(row):
        if not e.is_zero():
            return j
    return -1


def _primitive_row(row: list[UniPoly]) -> list[UniPoly]:
    nz = [e for e in row if not e.is_zero()]
    if not nz:
        return row
    g = poly_gcd(nz)
    if g.degree == 0 and g.dom.is_unit(g.c[0]):
        return row
    return [e.exquo(g) if not e.is_zero() else e for e in row]


def exact_profile(A: PolyMatrix) -> tuple[list[int], list[int]]:
    """Row rank profile and column rank profile of A over Quot(R[x])."""
    basis: dict[int, list[UniPoly]] = {}
    rows = []
    for i, r in enumerate(A.rows):
        v = list(r)
        while True:
            c = _first_nonzero(v)
            if c < 0:
                break
            b = basis.get(c)
            if b is None:
                basis[c] = _primitive_row(v)
                rows.append(i)
                break
            bc, vc = b[c], v[c]
            v = [bc * e - vc * f for e, f in zip(v, b)]
            v = _primitive_row(v)
        if len(basis) == A.ncols:
            break
    return rows, sorted(basis)


def _pivot_key(e: UniPoly):
    return (e.degree, e.height())


def bareiss_cramer(A: PolyMatrix):
    """Canonical kernel vector via fraction-free elimination.

    Returns ``(v, rows, pivots, c0)``.
    """
    rows, piv = exact_profile(A)
    k = len(rows)
    m = A.ncols
    if k == m:
        raise LinalgError("trivial kernel")
    pset = set(piv)
    c0 = next(j for j in range(m) if j not in pset)
    cols = piv + [c0]
    B = [[A.rows[i][j] for j in cols] for i in rows]
    dom = A.dom
    one = UniPoly.const(dom, dom.one())
    sign = 1
    prev = one
    for i in range(k):
        cands = [r for r in range(i, k) if not B[r][i].is_zero()]
        if not cands:
            raise LinalgError("rank profile inconsistent with elimination")
        p = min(cands, key=lambda r: (_pivot_key(B[r][i]), r))
        if p != i:
            B[i], B[p] = B[p], B[i]
            sign = -sign
        bii = B[i][i]
        for r in range(i + 1, k):
            bri = B[r][i]
            row = B[r]
            for c in range(i + 1, k + 1):
                t = bii * row[c]
                if not bri.is_zero():
                    t = t - bri * B[i][c]
                row[c] = t.exquo(prev) if not t.is_zero() else t
            row[i] = UniPoly(dom)
        prev = bii
    D = B[k - 1][k - 1] if k else one
    z = [None] * k
    for i in range(k - 1, -1, -1):
        t = D * B[i][k]
        for j in range(i + 1, k):
            if not B[i][j].is_zero():
                t = t - B[i][j] * z[j]
        z[i] = t.exquo(B[i][i]) if not t.is_zero() else t
    v = [UniPoly(dom) for _ in range(m)]
    for i, j in enumerate(piv):
        v[j] = z[i] if sign > 0 else -z[i]
    v[c0] = -D if sign > 0 else D
    return v, rows, piv, c0
