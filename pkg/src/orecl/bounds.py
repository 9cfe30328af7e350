"""A-priori size bounds (order, degree, height) for every construction.

All evaluators are closed-form and independent of the constructions.  Heights
of integers such as n! or binomials are the domain heights of their images
in R, so in GF(p)[t] with deg-only heights every such term vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb, factorial
from typing import Sequence

from .domains import CoefficientDomain
from .ore import OreAlgebra, OreOperator
from .poly import UniPoly


class BoundError(ValueError):
    pass


@dataclass(frozen=True)
class SizeBound:
    order: int
    degree: int
    height: float | None = None

    def as_dict(self) -> dict:
        return {"order": self.order, "degree": self.degree, "height": self.height}


def h_int(dom: CoefficientDomain, n: int):
    """Height of the integer n viewed in R."""
    return dom.height_int(n)


def h_fact(dom: CoefficientDomain, n: int):
    if dom.kind == "int":
        # log(1 + n!) without building huge floats
        if n < 170:
            return math.log1p(factorial(n))
        return math.lgamma(n + 1) + math.log1p(math.exp(-math.lgamma(n + 1)))
    p = getattr(dom, "p", 0)
    if p and n >= p:
        return dom.height(dom.zero())
    return dom.height_int(factorial(n) % p if p else factorial(n))


# elementary inequalities

def bound_sum(dom: CoefficientDomain, n: int, hmax):
    """Height bound for a sum of n terms of height <= hmax."""
    return h_int(dom, n - 1) + hmax


def bound_poly_mul(p: UniPoly, q: UniPoly):
    dom = p.dom
    return h_int(dom, max(0, min(p.degree, q.degree))) + p.height() + q.height()


def bound_op_mul(M: OreOperator, L: OreOperator):
    """h(ML) <= h(ord M) + h(min(deg M, deg L)) + h(M) + c^(ord M)(deg L, h(L))."""
    alg = M.alg
    dom = alg.domain
    return (h_int(dom, M.order) + h_int(dom, max(0, min(M.degree, L.degree))) + M.height()
            + alg.c_iter(M.order, max(L.degree, 0), L.height()))


def bound_rising(p: UniPoly, n: int, alg: OreAlgebra):
    """h(p^[n]) <= (n-1) h(deg p) + n c^(n-1)(deg p, h(p))."""
    if n == 0:
        return alg.domain.height(alg.domain.one())
    dom = alg.domain
    d = max(p.degree, 0)
    return (n - 1) * h_int(dom, d) + n * alg.c_iter(n - 1, d, p.height())


def bound_kernel(dom: CoefficientDomain, n: int, d: int, h) -> tuple[int, float]:
    """Degree and height bound for the kernel vector of an n x m system (n < m)."""
    return n * d, h_fact(dom, n) + (n - 1) * h_int(dom, d) + n * h


# extended ring

def bound_mpoly_mul(P, Q) -> dict:
    """Bounds on Ord, Deg, deg and height of P*Q for homogeneous P, Q."""
    dom = P.dom
    S, T = P.Ord(), Q.Ord()
    D, E = P.Deg(), Q.Deg()
    ht = h_int(dom, max(0, min(P.degree, Q.degree))) + P.height() + Q.height()
    if len(P) > 1 and len(Q) > 1:
        tP = sum(h_int(dom, comb(Di + max(Si, 0), Di)) for Di, Si in zip(D, S))
        tQ = sum(h_int(dom, comb(Ei + max(Ti, 0), Ei)) for Ei, Ti in zip(E, T))
        ht += min(tP, tQ)
    return {
        "Ord": tuple(max(a, b) for a, b in zip(S, T)),
        "Deg": tuple(a + b for a, b in zip(D, E)),
        "deg": P.degree + Q.degree,
        "height": ht,
    }


def bound_partial_action(P, k: int, alg: OreAlgebra) -> dict:
    """Bounds on D^k . P for Deg(P) != 0."""
    dom = alg.domain
    D = P.Deg()
    if not any(D):
        raise BoundError("Deg(P) must be nonzero")
    return {
        "Ord": tuple(s + k for s in P.Ord()),
        "Deg": D,
        "deg": P.degree,
        "height": k * h_int(dom, 4) * sum(D) + alg.c_iter(k, max(P.degree, 0), P.height()),
    }


def bound_normal_form(P, ops: Sequence[OreOperator], m: int) -> dict:
    """Bounds on the normal form V of prod (p_i^{D_i})^[m] P."""
    alg = ops[0].alg
    dom = alg.domain
    D = P.Deg()
    deg = max(P.degree, 0) + m * sum(Di * max(L.degree, 0) for Di, L in zip(D, ops))
    ht = P.height()
    for Di, L in zip(D, ops):
        dl = max(L.degree, 0)
        ht += m * (h_int(dom, Di + 1) + Di * h_int(dom, L.order + m) + Di * h_int(dom, dl)
                   + Di * alg.c_iter(m, dl, L.height()))
    return {"Ord": tuple(L.order - 1 for L in ops), "Deg": D, "deg": deg, "height": ht}


# closure bounds

def bound_lclm(n: int, r_list: Sequence[int], d: int, h, alg: OreAlgebra) -> SizeBound:
    dom = alg.domain
    r = sum(r_list)
    N = n * (r + 1) - r
    if n == 1:
        return SizeBound(r, d, h)
    ht = h_int(dom, r) + h_fact(dom, N - 1) + (N - 1) * h_int(dom, d) + N * alg.c_iter(r, d, h)
    return SizeBound(r, N * d, ht)


def order_m(D: Sequence[int], r: Sequence[int]) -> int:
    return math.prod(comb(Di + ri - 1, Di) for Di, ri in zip(D, r))


def bound_main(D_list, r_list, d_list, h_list, deg_P: int, h_P, alg: OreAlgebra) -> SizeBound:
    if not len(D_list) == len(r_list) == len(d_list) == len(h_list):
        raise BoundError("parameter lists differ in length")
    dom = alg.domain
    m = order_m(D_list, r_list)
    sdd = sum(Di * di for Di, di in zip(D_list, d_list))
    degree = m * deg_P + m * m * sdd
    ht = h_fact(dom, m) + m * alg.c_iter(m, deg_P, h_P) + (m - 1) * h_int(dom, deg_P + m * sdd)
    for Di, ri, di, hi in zip(D_list, r_list, d_list, h_list):
        ht += m * m * (h_int(dom, 4) * Di + h_int(dom, Di + 1) + Di * h_int(dom, ri + m) + h_int(dom, di)
                       + alg.c_iter(m, di, hi))
    return SizeBound(m, degree, ht)


def bound_sym_product(r1: int, r2: int, d: int, h, alg: OreAlgebra) -> SizeBound:
    dom = alg.domain
    rr = r1 * r2
    ht = (h_fact(dom, rr) + (rr - 1) * h_int(dom, 2 * rr * d) + rr * h_int(dom, 1)
          + 2 * rr * rr * (2 * h_int(dom, 4) + 3 * h_int(dom, rr) + h_int(dom, d) + alg.c_iter(rr, d, h)))
    return SizeBound(rr, 2 * d * rr * rr, ht)


def bound_sym_power(k: int, r: int, d: int, h, alg: OreAlgebra) -> SizeBound:
    """Specialized form with m = binom(k+r, k); the general bound gives binom(k+r-1, k)."""
    dom = alg.domain
    m = comb(k + r, k)
    ht = (h_fact(dom, m) + m * h_int(dom, 1) + (m - 1) * h_int(dom, m * k * d)
          + m * m * (k * h_int(dom, 4) + h_int(dom, k + 1) + k * h_int(dom, r + m) + h_int(dom, d)
                     + alg.c_iter(m, d, h)))
    return SizeBound(m, k * d * m * m, ht)


def sym_power_orders(k: int, r: int) -> dict:
    """Both order bounds for the k-th symmetric power, which disagree."""
    return {"specialized": comb(k + r, k), "general": comb(k + r - 1, k)}


def bound_associate(r: int, deg_A: int, h_A, deg_L: int, h_L, alg: OreAlgebra) -> SizeBound:
    dom = alg.domain
    ht = (h_fact(dom, r) + r * alg.c_iter(r, deg_A, h_A) + (r - 1) * h_int(dom, deg_A + r * deg_L)
          + r * r * (4 * h_int(dom, 2) + h_int(dom, r) + h_int(dom, deg_L) + alg.c_iter(r, deg_L, h_L)))
    return SizeBound(r, r * deg_A + r * r * deg_L, ht)


def bound_wronskian(r: int, d: int, h, alg: OreAlgebra) -> SizeBound:
    dom = alg.domain
    m = r ** r
    ht = (h_fact(dom, m) + m * h_int(dom, 1) + (m - 1) * h_int(dom, m * r * r * d)
          + m * m * r * ((r + 1) * (h_int(dom, 4) + h_int(dom, r)) + h_int(dom, d) + alg.c_iter(m, d, h)))
    return SizeBound(m, m * m * r * r * d, ht)


def bound_special(kind: str, alg: OreAlgebra, **params) -> SizeBound:
    try:
        if kind == "sym_product":
            return bound_sym_product(params["r1"], params["r2"], params["d"], params["h"], alg)
        if kind == "sym_power":
            return bound_sym_power(params["k"], params["r"], params["d"], params["h"], alg)
        if kind == "associate":
            return bound_associate(params["r"], params["deg_A"], params["h_A"], params["deg_L"], params["h_L"], alg)
        if kind == "wronskian":
            return bound_wronskian(params["r"], params["d"], params["h"], alg)
    except KeyError as exc:
        raise BoundError(f"missing parameter {exc.args[0]!r} for {kind}") from None
    raise BoundError(f"unknown kind {kind!r}")


# order-degree curves

def curve_lclm_params(r_list: Sequence[int], d_list: Sequence[int], r: int) -> int:
    sr = sum(r_list)
    if r + 1 <= sr:
        raise BoundError("order too small")
    num = (r + 1) * sum(d_list) - sum(a * b for a, b in zip(r_list, d_list))
    den = r + 1 - sr
    return max(0, -(-num // den))


def curve_poly_params(m: int, sdd: int, deg_P: int, r: int) -> int:
    if r + 1 <= m:
        raise BoundError("order too small")
    num = r * m * sdd + m * deg_P
    return -(-num // (r + 1 - m))


def curve_lclm(ops: Sequence[OreOperator], r: int) -> int:
    return curve_lclm_params([L.order for L in ops], [L.degree for L in ops], r)


def curve_poly(P, ideal, r: int) -> int:
    D = P.Deg()
    ops = ideal.generators
    m = order_m(D, [L.order for L in ops])
    return curve_poly_params(m, sum(Di * L.degree for Di, L in zip(D, ops)), max(P.degree, 0), r)


def bound_curves(kind: str, params: dict, r: int) -> int:
    if kind == "lclm":
        return curve_lclm_params(params["r_list"], params["d_list"], r)
    if kind == "poly":
        return curve_poly_params(params["m"], params["sdd"], params.get("deg_P", 0), r)
    raise BoundError(f"unknown kind {kind!r}")
