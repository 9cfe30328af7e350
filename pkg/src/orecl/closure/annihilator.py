"""Annihilating operators for polynomial expressions in D-finite functions."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, prod

from ..linalg import PolyMatrix, normalize_vector, nullspace_vector
from ..ore import OreOperator
from ..poly import UniPoly
from .lclm import ClosureError, lclm
from .multipoly import MultiPoly, MultiPolyError, partial_action
from .normal_form import AnnihilatorIdeal, NormalFormer, multiplier


@dataclass
class AnnihilatorResult:
    """``p * L . P`` lies in the ideal, and likewise ``p * g * operator . P`` with ``raw = g * operator``."""

    p: UniPoly
    L: OreOperator
    raw: OreOperator
    m: int

    def __iter__(self):
        return iter((self.p, self.L))


def order_bound(D, r) -> int:
    """prod_i binom(D_i + r_i - 1, D_i)."""
    return prod(comb(Di + ri - 1, Di) for Di, ri in zip(D, r))


def _prepare(P: MultiPoly, ideal: AnnihilatorIdeal):
    if P.n != ideal.n:
        raise MultiPolyError("P and the ideal have different group counts")
    if P.is_zero():
        raise MultiPolyError("P must be nonzero")
    if not P.is_homogeneous():
        raise MultiPolyError("P is not homogeneous; use annihilator_inhomogeneous")
    for S, r in zip(P.Ord(), ideal.orders):
        if S >= r:
            raise MultiPolyError("Ord(P) must be below the orders of the operators")
    return P.Deg()


def reduced_forms(P: MultiPoly, ideal: AnnihilatorIdeal, count: int, level: int) -> list[MultiPoly]:
    """V_k for k = 0..count-1: the normal forms of D^k . P at the given level."""
    nf = NormalFormer(ideal)
    out = []
    cur = P
    for k in range(count):
        if k:
            cur = partial_action(cur, ideal.alg, 1)
        out.append(nf(cur, level)[1])
    return out


def annihilator(P: MultiPoly, ideal: AnnihilatorIdeal, method: str = "auto",
                reduce: str = "gcd") -> AnnihilatorResult:
    """Operator L and polynomial p with p L . P in the ideal, ord(L) <= m.

    The kernel vector is the canonical Cramer vector of the system
    sum_k l_k V_k = 0; ``reduce="gcd"`` divides by the gcd of the l_k in R[x]
    (folding it into p), ``"content"`` only by their content in R.
    """
    D = _prepare(P, ideal)
    m = order_bound(D, ideal.orders)
    V = reduced_forms(P, ideal, m + 1, m)
    monos = sorted({t for Vk in V for t in Vk.terms})
    dom = ideal.dom
    if not monos:
        # P is zero modulo the ideal
        one = UniPoly.const(dom, dom.one())
        L = OreOperator(ideal.alg, [one])
        return AnnihilatorResult(one, L, L, m)
    A = PolyMatrix(dom, tuple(tuple(Vk.coeff(t) for Vk in V) for t in monos), m + 1)
    v = nullspace_vector(A, method=method, reduce=None)
    return _finish(v, reduce, multiplier(ideal, D, m), ideal, m)


def _finish(v: list[UniPoly], reduce: str | None, p: UniPoly, ideal: AnnihilatorIdeal, m: int) -> AnnihilatorResult:
    raw = OreOperator(ideal.alg, v)
    red = normalize_vector(v, reduce, anchor_last=True)
    nz_raw = next(a for a in v if not a.is_zero())
    nz_red = next(a for a in red if not a.is_zero())
    # raw = g * red with g in Quot(R)[x]; p * g stays a valid multiplier once g is in R[x]
    g = nz_raw.exquo(nz_red) if reduce == "gcd" else UniPoly.const(p.dom, p.dom.one())
    return AnnihilatorResult(p * g, OreOperator(ideal.alg, red), raw, m)


def annihilator_inhomogeneous(P: MultiPoly, ideal: AnnihilatorIdeal, method: str = "auto") -> OreOperator:
    """Annihilate each homogeneous component, then take a common left multiple."""
    if P.is_zero():
        raise MultiPolyError("P must be nonzero")
    for S, r in zip(P.Ord(), ideal.orders):
        if S >= r:
            raise MultiPolyError("Ord(P) must be below the orders of the operators")
    ops = [annihilator(C, ideal, method=method).L for C in P.homogeneous_components().values()]
    if len(ops) == 1:
        return ops[0]
    return lclm(ops, method=method).operator


def annihilator_at(P: MultiPoly, ideal: AnnihilatorIdeal, r: int, d: int,
                   method: str = "auto", reduce: str = "gcd") -> AnnihilatorResult:
    """Operator of order <= r and degree <= d by comparing coefficients of x^e and y-monomials over R."""
    D = _prepare(P, ideal)
    m = order_bound(D, ideal.orders)
    if r < m:
        raise ClosureError("infeasible size request")
    dv = max(P.degree, 0) + r * sum(Di * L.degree for Di, L in zip(D, ideal.generators))
    if (r + 1) * (d + 1) <= m * (d + 1 + dv):
        raise ClosureError("infeasible size request")
    dom = ideal.dom
    V = reduced_forms(P, ideal, r + 1, r)
    monos = sorted({t for Vk in V for t in Vk.terms})
    cols = [(i, j) for i in range(r + 1) for j in range(d + 1)]
    top = d + max((Vk.degree for Vk in V), default=0)
    rows = [(t, e) for t in monos for e in range(top + 1)]
    z = UniPoly(dom)
    grid = []
    for t, e in rows:
        row = []
        for i, j in cols:
            c = V[i].coeff(t)
            row.append(UniPoly.const(dom, c[e - j]) if 0 <= e - j <= c.degree else z)
        grid.append(tuple(row))
    A = PolyMatrix(dom, tuple(grid), len(cols))
    v = nullspace_vector(A, method=method, reduce=None)
    coeffs = [[dom.zero()] * (d + 1) for _ in range(r + 1)]
    for (i, j), a in zip(cols, v):
        if not a.is_zero():
            coeffs[i][j] = a[0]
    ell = [UniPoly(dom, c) for c in coeffs]
    return _finish(ell, reduce, multiplier(ideal, D, r), ideal, m)
