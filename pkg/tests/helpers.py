"""Samplers and bound checkers shared by the property suites and the acceptance tests.

Each ``check_*`` returns a list of violation messages, empty when the
inequality holds.  Heights are compared with a 1e-9 slack.
"""

from __future__ import annotations

import numpy as np

from orecl.bounds import (bound_kernel, bound_mpoly_mul, bound_op_mul, bound_partial_action, bound_poly_mul,
                          bound_rising, h_int)
from orecl.closure.multipoly import MultiPoly, mpoly_mul, partial_action
from orecl.domains import DEG_ONLY, LOG_ABS, ONE_PLUS_DEG, Integers, PolyPrimeField, PrimeField
from orecl.linalg import PolyMatrix, nullspace_vector
from orecl.ore import OreAlgebra, OreOperator, make_algebra, op_mul, rising_factorial
from orecl.poly import UniPoly

TOL = 1e-9
P_SMALL = 1091

DOMAINS = {
    "int": lambda: Integers(LOG_ABS),
    "gfp": lambda: PrimeField(P_SMALL, ONE_PLUS_DEG),
    "gfpt-deg": lambda: PolyPrimeField(P_SMALL, "t", DEG_ONLY),
    "gfpt-1pd": lambda: PolyPrimeField(P_SMALL, "t", ONE_PLUS_DEG),
}
ALGEBRAS = ("diff", "shift", "difference")


def rand_elem(dom, rng: np.random.Generator, size: int = 2, nonzero: bool = False):
    """Integers in [-size, size]; GF(p)[t] elements of t-degree <= size."""
    while True:
        if dom.kind == "int":
            a = int(rng.integers(-size, size + 1))
        elif dom.kind == "gfp":
            a = int(rng.integers(0, dom.p))
        else:
            a = dom.elem([int(v) for v in rng.integers(0, dom.p, size=int(rng.integers(0, size + 2)))])
        if not nonzero or not dom.is_zero(a):
            return a


def rand_poly(dom, rng: np.random.Generator, deg: int, size: int = 2, monic_deg: bool = False) -> UniPoly:
    c = [rand_elem(dom, rng, size) for _ in range(deg + 1)]
    if monic_deg and deg >= 0:
        c[-1] = rand_elem(dom, rng, size, nonzero=True)
    return UniPoly(dom, c)


def rand_op(alg: OreAlgebra, rng: np.random.Generator, order: int, deg: int, size: int = 2) -> OreOperator:
    coeffs = [rand_poly(alg.domain, rng, deg, size) for _ in range(order)]
    coeffs.append(rand_poly(alg.domain, rng, deg, size, monic_deg=True))
    return OreOperator(alg, coeffs)


def rand_homogeneous(dom, rng: np.random.Generator, D: tuple, S: tuple, deg: int, terms: int,
                     size: int = 2) -> MultiPoly:
    """Homogeneous MultiPoly of degree D_i in group i using y[i, 0..S_i]."""
    n = len(D)
    out = {}
    for _ in range(terms):
        vs = []
        for i in range(n):
            vs += [(i + 1, int(rng.integers(0, S[i] + 1))) for _ in range(D[i])]
        mono = {}
        for v in vs:
            mono[v] = mono.get(v, 0) + 1
        key = tuple(sorted(mono.items()))
        c = rand_poly(dom, rng, deg, size, monic_deg=True)
        out[key] = out.get(key, UniPoly(dom)) + c
    P = MultiPoly(dom, n, out)
    return P if not P.is_zero() else MultiPoly(dom, n, {key: UniPoly.const(dom, dom.one())})


def _le(a, b) -> bool:
    return a <= b + TOL


# domain axioms

def check_height_axioms(dom, a, b, items: list) -> list[str]:
    h = dom.height
    out = []
    if h(dom.zero()) != 0:
        out.append("h(0) != 0")
    if h(a) < 0:
        out.append(f"h({a}) < 0")
    if abs(h(a) - h(dom.neg(a))) > TOL:
        out.append(f"h({a}) != h(-{a})")
    if not _le(h(dom.mul(a, b)), h(a) + h(b)):
        out.append(f"h({a}*{b}) > h(a) + h(b)")
    if items:
        s = dom.sum(items)
        if not _le(h(s), h_int(dom, len(items) - 1) + max(h(v) for v in items)):
            out.append(f"sum rule fails on {items}")
    return out


def check_poly_mul(p: UniPoly, q: UniPoly) -> list[str]:
    pq = p * q
    if p.is_zero() or q.is_zero():
        return [] if pq.is_zero() else ["product of zero is nonzero"]
    if not _le(pq.height(), bound_poly_mul(p, q)):
        return [f"h(pq) = {pq.height()} > {bound_poly_mul(p, q)}"]
    return []


# operators

def check_op_mul(M: OreOperator, L: OreOperator) -> list[str]:
    ML = op_mul(M, L)
    out = []
    if not M.lc().is_zero() and ML.order != M.order + L.order and M.dom.kind == "int":
        out.append("order of a product over an integral domain is not additive")
    if not _le(ML.height(), bound_op_mul(M, L)):
        out.append(f"h(ML) = {ML.height()} > {bound_op_mul(M, L)}")
    return out


def check_rising(p: UniPoly, n: int, alg: OreAlgebra) -> list[str]:
    rf = rising_factorial(p, n, alg)
    if p.is_zero():
        return []
    if not _le(rf.height(), bound_rising(p, n, alg)):
        return [f"h(p^[{n}]) = {rf.height()} > {bound_rising(p, n, alg)}"]
    return []


# linear algebra

def check_kernel(A: PolyMatrix, method: str = "auto") -> list[str]:
    """Kernel bounds: A v = 0, deg(v_i) <= n d, h(v_i) <= h(n!) + (n-1) h(d) + n h."""
    n = A.nrows
    v = nullspace_vector(A, method=method)
    out = []
    if all(p.is_zero() for p in v):
        out.append("zero kernel vector")
    if any(not p.is_zero() for p in A.mul_vec(v)):
        out.append("A v != 0")
    deg_b, ht_b = bound_kernel(A.dom, n, max(A.max_degree(), 0), A.max_height())
    for p in v:
        if p.degree > deg_b:
            out.append(f"deg {p.degree} > {deg_b}")
        if not _le(p.height(), ht_b):
            out.append(f"height {p.height()} > {ht_b}")
    return out


# extended ring

def check_mpoly_mul(P: MultiPoly, Q: MultiPoly) -> list[str]:
    R = mpoly_mul(P, Q)
    b = bound_mpoly_mul(P, Q)
    out = []
    if R.is_zero():
        return ["product of nonzero MultiPolys is zero"] if P.dom.kind == "int" else []
    if any(a > c for a, c in zip(R.Ord(), b["Ord"])):
        out.append(f"Ord {R.Ord()} > {b['Ord']}")
    if R.Deg() != b["Deg"]:
        out.append(f"Deg {R.Deg()} != {b['Deg']}")
    if R.degree > b["deg"]:
        out.append(f"deg {R.degree} > {b['deg']}")
    if not _le(R.height(), b["height"]):
        out.append(f"height {R.height()} > {b['height']}")
    return out


def check_partial_action(P: MultiPoly, k: int, alg: OreAlgebra) -> list[str]:
    R = partial_action(P, alg, k)
    b = bound_partial_action(P, k, alg)
    out = []
    if R.is_zero():
        return out
    if any(a > c for a, c in zip(R.Ord(), b["Ord"])):
        out.append(f"Ord {R.Ord()} > {b['Ord']}")
    if R.Deg() != b["Deg"]:
        out.append(f"Deg {R.Deg()} != {b['Deg']}")
    if R.degree > b["deg"]:
        out.append(f"deg {R.degree} > {b['deg']}")
    if not _le(R.height(), b["height"]):
        out.append(f"height {R.height()} > {b['height']}")
    return out


def algebra(name: str, dom_key: str = "int") -> OreAlgebra:
    return make_algebra(name, DOMAINS[dom_key]())
