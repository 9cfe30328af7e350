"""Common left multiples by ansatz and kernel vectors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..domains import Integers, PolyPrimeField, PrimeField
from ..linalg import EngineConfig, LinalgError, PolyMatrix, modular_cramer, nullspace_vector
from ..linalg import modular as K
from ..linalg.engine import detect_profile
from ..ore import OreAlgebra, OreOperator, make_algebra
from ..poly import UniPoly, poly_content


class ClosureError(ValueError):
    pass


@dataclass
class LclmResult:
    """``raw = multipliers[k] * ops[k]`` for every k and ``raw = content * operator``."""

    operator: OreOperator
    raw: OreOperator
    multipliers: list[OreOperator]
    content: object
    order: int


def _check_ops(ops):
    ops = list(ops)
    if not ops:
        raise ClosureError("empty list")
    for L in ops:
        if L.is_zero():
            raise ClosureError("operators must be nonzero")
        if L.alg != ops[0].alg:
            raise ClosureError("operators must share one algebra")
    return ops


def reduce_operator(L: OreOperator) -> tuple[object, OreOperator]:
    """Content c over R and the content-free operator with unit-normal leading coefficient."""
    dom = L.dom
    c = dom.normalize(poly_content(L.coeffs, dom))[1]
    coeffs = list(L.coeffs) if dom.is_unit(c) else [p.exquo_scalar(c) for p in L.coeffs]
    u = dom.normalize(coeffs[-1].lc())[0]
    if u != dom.one():
        inv = dom.exquo(dom.one(), u)
        coeffs = [p.scale(inv) for p in coeffs]
        c = dom.mul(c, u)
    return c, OreOperator(L.alg, coeffs)


def lclm_system(ops: list[OreOperator], r: int) -> tuple[PolyMatrix, PolyMatrix, list[tuple[int, int]]]:
    """Matrix of M_1 L_1 - M_k L_k = 0 (k >= 2), the map to the coefficients of M_1 L_1, and column labels."""
    dom = ops[0].dom
    zero = UniPoly(dom)
    n = len(ops)
    cols = [(k, i) for k in range(n) for i in range(r - ops[k].order + 1)]
    powers = [ops[k].gen_powers(r - ops[k].order) for k in range(n)]
    rows = []
    for k in range(1, n):
        for j in range(r + 1):
            row = []
            for kk, i in cols:
                if kk == 0:
                    row.append(powers[0][i].coeff(j))
                elif kk == k:
                    row.append(-powers[k][i].coeff(j))
                else:
                    row.append(zero)
            rows.append(row)
    T = [[powers[0][i].coeff(j) if kk == 0 else zero for kk, i in cols] for j in range(r + 1)]
    return PolyMatrix(dom, tuple(map(tuple, rows)), len(cols)), PolyMatrix(dom, tuple(map(tuple, T)), len(cols)), cols


def _has_kernel(A: PolyMatrix) -> bool:
    if A.nrows == 0:
        return A.ncols > 0
    rows, _ = detect_profile(A, EngineConfig())
    return len(rows) < A.ncols


def lclm(ops, minimize: bool = False, method: str = "auto") -> LclmResult:
    """A common left multiple of order at most sum(ord L_k).

    With ``minimize`` the order is increased from max(ord L_k) until the ansatz
    admits a solution, which yields the least common left multiple.
    """
    ops = _check_ops(ops)
    alg = ops[0].alg
    one = alg.one()
    if len(ops) == 1:
        c, red = reduce_operator(ops[0])
        return LclmResult(red, ops[0], [one], c, ops[0].order)
    rtot = sum(L.order for L in ops)
    orders = [rtot]
    if minimize:
        orders = list(range(max(L.order for L in ops), rtot + 1))
    last_err = None
    for r in orders:
        A, _, cols = lclm_system(ops, r)
        if r != rtot and not _has_kernel(A):
            continue
        try:
            v = nullspace_vector(A, method=method, reduce=None)
        except LinalgError as exc:
            last_err = exc
            continue
        mult = []
        for k in range(len(ops)):
            mult.append(OreOperator(alg, [v[c] for c, (kk, _) in enumerate(cols) if kk == k]))
        raw = mult[0] * ops[0]
        c, red = reduce_operator(raw)
        return LclmResult(red, raw, mult, c, r)
    raise ClosureError(f"no common left multiple found: {last_err}")


def lclm_coefficient_array(ops, config: EngineConfig | None = None) -> np.ndarray:
    """Coefficients of the canonical M_1 L_1 over GF(p)[t] as an int64 array.

    Shape is (ord+1, deg_x+1, deg_t+1); the operator itself is never built,
    which keeps large instances cheap.
    """
    ops = _check_ops(ops)
    dom = ops[0].dom
    if not isinstance(dom, PolyPrimeField):
        raise ClosureError("the array route needs GF(p)[t] coefficients")
    r = sum(L.order for L in ops)
    A, T, _ = lclm_system(ops, r)
    res = modular_cramer(A, T, want_v=False, return_arrays=True, config=config)
    return res.arrays


# order-degree ansatz

def _feasible(ops, r: int, d: int) -> tuple[int, int]:
    nvars = sum(max(0, r - L.order + 1) * max(0, d - L.degree + 1) for L in ops)
    neqs = (len(ops) - 1) * (r + 1) * (d + 1)
    return nvars, neqs


def clm_columns(ops, r: int, d: int) -> list[tuple[int, int, int]]:
    """Unknowns (k, i, j) of M_k = sum m_{k,i,j} x^j D^i, highest x-degree first."""
    cols = [(k, i, j) for k, L in enumerate(ops) for i in range(r - L.order + 1) for j in range(d - L.degree + 1)]
    cols.sort(key=lambda c: (-c[2], c[0], c[1]))
    return cols


def clm_rows(ops, r: int, d: int) -> list[tuple[int, int, int]]:
    rows = [(k, i, j) for k in range(1, len(ops)) for i in range(r + 1) for j in range(d + 1)]
    rows.sort(key=lambda e: (-e[2], e[0], e[1]))
    return rows


def _clm_entries(ops, r: int, d: int, cols, rows):
    """Nonzero entries (row, col, coefficient in R) of the system over R."""
    powers = [L.gen_powers(r - L.order) for L in ops]
    rindex = {e: t for t, e in enumerate(rows)}
    out = []
    for c, (k, i0, j0) in enumerate(cols):
        G = powers[k][i0]
        for i, g in enumerate(G.coeffs):
            for e, a in enumerate(g.c):
                if g.dom.is_zero(a):
                    continue
                j = j0 + e
                if k == 0:
                    for kk in range(1, len(ops)):
                        out.append((rindex[(kk, i, j)], c, a))
                else:
                    out.append((rindex[(k, i, j)], c, g.dom.neg(a)))
    return out


@dataclass
class ClmResult:
    operator: OreOperator
    multipliers: list[OreOperator]
    modulus: int | None
    kernel_dim: int | None
    nvars: int
    neqs: int


def clm_at(ops, r: int, d: int, modulus: int | None = None, method: str = "auto") -> ClmResult:
    """Nonzero common left multiple with order <= r and degree <= d.

    Coefficients of x^j D^i are compared, giving a linear system over R.
    With ``modulus`` the system is solved over GF(modulus) and the returned
    operator is the image of the result in that field.
    """
    ops = _check_ops(ops)
    if r < sum(L.order for L in ops):
        raise ClosureError("infeasible size request")
    nvars, neqs = _feasible(ops, r, d)
    if nvars <= neqs:
        raise ClosureError("infeasible size request")
    alg = ops[0].alg
    dom = alg.domain
    cols = clm_columns(ops, r, d)
    rows = clm_rows(ops, r, d)
    entries = _clm_entries(ops, r, d, cols, rows)
    if modulus is not None:
        if not isinstance(dom, (Integers, PrimeField)):
            raise ClosureError("modular solving needs integer or prime field coefficients")
        q = int(modulus)
        M = np.zeros((len(rows), len(cols)))
        for a, b, v in entries:
            M[a, b] = (M[a, b] + v) % q
        v, rank, _ = K.banded_echelon_kernel(M, float(q), np.arange(len(cols), dtype=np.int64))
        fdom = PrimeField(q)
        falg = make_algebra(alg.name, fdom)
        vals = [int(x) for x in v]
        kdim = len(cols) - int(rank)
    else:
        z = dom.zero()
        grid = [[z] * len(cols) for _ in rows]
        for a, b, v in entries:
            grid[a][b] = dom.add(grid[a][b], v)
        A = PolyMatrix(dom, tuple(tuple(UniPoly.const(dom, e) for e in row) for row in grid), len(cols))
        vec = nullspace_vector(A, method=method, reduce="content")
        fdom, falg = dom, alg
        vals = [p[0] for p in vec]
        kdim = None
    mult = []
    for k, L in enumerate(ops):
        co = [[fdom.zero()] * (d - L.degree + 1) for _ in range(r - L.order + 1)]
        for c, (kk, i, j) in enumerate(cols):
            if kk == k:
                co[i][j] = fdom.from_int(vals[c]) if modulus is not None else vals[c]
        mult.append(OreOperator(falg, [UniPoly(fdom, row) for row in co]))
    L1 = ops[0] if modulus is None else _map_operator(ops[0], falg)
    return ClmResult(mult[0] * L1, mult, modulus, kdim, nvars, neqs)


def _map_operator(L: OreOperator, alg: OreAlgebra) -> OreOperator:
    dom = alg.domain
    return OreOperator(alg, [UniPoly(dom, [dom.from_int(a) for a in p.c]) for p in L.coeffs])


def map_operator(L: OreOperator, alg: OreAlgebra) -> OreOperator:
    """Image of an integer operator in an algebra over GF(q)."""
    return _map_operator(L, alg)
