"""Independent membership oracle for the ideal generated by D^k L_i . y[i,0].

Operators are rebuilt from their integer coefficients in sympy and the powers
D^k L_i come from the commutation rule D p = sigma(p) D + delta(p) applied
here directly, so nothing is shared with the package's operator arithmetic.
Q lies in the ideal iff eliminating every y[i,j] with j >= r_i (solving the
generator whose top variable it is) leaves zero.
"""

from __future__ import annotations

import sympy

x = sympy.Symbol("x")


def _sigma(name: str, p):
    return p if name == "diff" else p.subs(x, x + 1)


def _delta(name: str, p):
    if name == "diff":
        return sympy.diff(p, x)
    if name == "shift":
        return sympy.Integer(0)
    return sympy.expand(p.subs(x, x + 1) - p)


def poly_expr(q) -> sympy.Expr:
    return sum((sympy.Integer(int(c)) * x ** i for i, c in enumerate(q.c)), sympy.Integer(0))


def op_coeffs(L) -> list:
    return [poly_expr(c) for c in L.coeffs]


def lmul_gen(name: str, coeffs: list) -> list:
    """Coefficients of D * sum_j c_j D^j."""
    out = [sympy.Integer(0)] * (len(coeffs) + 1)
    for j, c in enumerate(coeffs):
        out[j + 1] += sympy.expand(_sigma(name, c))
        out[j] += _delta(name, c)
    return [sympy.expand(c) for c in out]


def ysym(i: int, j: int) -> sympy.Symbol:
    return sympy.Symbol(f"y_{i}_{j}")


def mpoly_expr(P) -> sympy.Expr:
    acc = sympy.Integer(0)
    for mono, c in P.terms.items():
        term = poly_expr(c)
        for (i, j), e in mono:
            term *= ysym(i, j) ** e
        acc += term
    return sympy.expand(acc)


def eliminations(name: str, ops: list, top: dict) -> dict:
    """y[i,j] for r_i <= j <= top[i] as rational functions of y[i,0..r_i-1]."""
    subs = {}
    for i, L in enumerate(ops, start=1):
        coeffs = op_coeffs(L)
        r = len(coeffs) - 1
        val = {j: ysym(i, j) for j in range(r)}
        for k in range(0, max(top.get(i, -1) - r + 1, 0)):
            lead = coeffs[-1]
            rest = sum((c * val[j] for j, c in enumerate(coeffs[:-1])), sympy.Integer(0))
            val[r + k] = sympy.cancel(-rest / lead)
            subs[ysym(i, r + k)] = val[r + k]
            coeffs = lmul_gen(name, coeffs)
    return subs


def in_ideal(Q, ops: list) -> bool:
    """True iff the integer MultiPoly Q lies in the ideal of the operators ``ops``."""
    name = ops[0].alg.name
    top: dict = {}
    for mono in Q.terms:
        for (i, j), _ in mono:
            top[i] = max(top.get(i, -1), j)
    subs = eliminations(name, ops, top)
    expr = mpoly_expr(Q).xreplace(subs)
    num, _ = sympy.fraction(sympy.together(expr))
    return sympy.expand(num) == 0
