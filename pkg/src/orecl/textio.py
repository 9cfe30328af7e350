"""Text and JSON forms of operators and MultiPolys.

Operators are sums of ``poly * D^k`` with the algebra's symbol for D, e.g.
``"(x+1)*Sn^2 - 3*Sn + x"``.  Coefficients must stand left of D since x and D
do not commute.  MultiPolys use ``y[i,j]`` variables with coefficients in x,
e.g. ``"y[1,0]*y[2,1] - y[1,1]*y[2,0]"``.  Over GF(p)[t] coefficients may
contain t.
"""

from __future__ import annotations

import json
from collections import defaultdict
from tokenize import TokenError

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .closure.multipoly import MultiPoly
from .domains import CoefficientDomain, PolyPrimeField
from .ore import OreAlgebra, OreOperator
from .poly import UniPoly

_TRANSFORMS = standard_transformations + (convert_xor,)


class ParseError(ValueError):
    pass


def _parse(text: str, names: dict):
    try:
        return sympy.expand(parse_expr(text, local_dict=names, transformations=_TRANSFORMS))
    except (SyntaxError, TypeError, sympy.SympifyError, TokenError) as exc:
        raise ParseError(f"cannot parse {text!r}: {exc}") from None


def _scalar(c, tpow: int, dom: CoefficientDomain):
    if not c.is_Integer:
        raise ParseError(f"coefficient {c} is not an integer")
    if isinstance(dom, PolyPrimeField):
        return dom.elem([0] * tpow + [int(c)])
    if tpow:
        raise ParseError("t only occurs in GF(p)[t] coefficients")
    return dom.from_int(int(c))


def _split_term(term, x, D, t):
    """(integer, t power, x power, D power) of one expanded term."""
    comm, nc = term.args_cnc()
    coef = sympy.Integer(1)
    tp = 0
    for f in comm:
        base, e = f.as_base_exp()
        if base == t:
            tp += int(e)
        elif f.is_Number:
            coef *= f
        else:
            raise ParseError(f"unexpected factor {f}")
    xp = dp = 0
    seen_d = False
    for f in nc:
        base, e = f.as_base_exp()
        if base == x:
            if seen_d:
                raise ParseError("coefficients must stand left of the operator symbol")
            xp += int(e)
        elif base == D:
            seen_d = True
            dp += int(e)
        else:
            raise ParseError(f"unexpected factor {f}")
    return coef, tp, xp, dp


def parse_operator(text: str, alg: OreAlgebra) -> OreOperator:
    dom = alg.domain
    x = sympy.Symbol("x", commutative=False)
    D = sympy.Symbol(alg.symbol, commutative=False)
    t = sympy.Symbol(getattr(dom, "var", "t"))
    expr = _parse(text, {"x": x, alg.symbol: D, t.name: t})
    acc: dict = defaultdict(lambda: defaultdict(dom.zero))
    for term in sympy.Add.make_args(expr):
        if term == 0:
            continue
        c, tp, xp, dp = _split_term(term, x, D, t)
        acc[dp][xp] = dom.add(acc[dp][xp], _scalar(c, tp, dom))
    if not acc:
        return OreOperator(alg, [])
    coeffs = []
    for k in range(max(acc) + 1):
        row = acc.get(k, {})
        deg = max(row, default=-1)
        coeffs.append(UniPoly(dom, [row.get(e, dom.zero()) for e in range(deg + 1)]))
    return OreOperator(alg, coeffs)


def parse_poly(text: str, dom: CoefficientDomain) -> UniPoly:
    x = sympy.Symbol("x", commutative=False)
    t = sympy.Symbol(getattr(dom, "var", "t"))
    expr = _parse(text, {"x": x, t.name: t})
    acc: dict = defaultdict(dom.zero)
    for term in sympy.Add.make_args(expr):
        if term == 0:
            continue
        c, tp, xp, _ = _split_term(term, x, None, t)
        acc[xp] = dom.add(acc[xp], _scalar(c, tp, dom))
    deg = max(acc, default=-1)
    return UniPoly(dom, [acc.get(e, dom.zero()) for e in range(deg + 1)])


def parse_multipoly(text: str, dom: CoefficientDomain, n: int | None = None) -> MultiPoly:
    y = sympy.IndexedBase("y")
    x = sympy.Symbol("x")
    t = sympy.Symbol(getattr(dom, "var", "t"))
    expr = _parse(text, {"y": y, "x": x, t.name: t})
    terms: dict = defaultdict(lambda: defaultdict(dom.zero))
    top = 0
    for term in sympy.Add.make_args(expr):
        if term == 0:
            continue
        mono: dict = defaultdict(int)
        coef = sympy.Integer(1)
        tp = xp = 0
        for f in sympy.Mul.make_args(term):
            base, e = f.as_base_exp()
            if isinstance(base, sympy.Indexed):
                if len(base.indices) != 2 or not all(i.is_Integer for i in base.indices):
                    raise ParseError(f"bad variable {base}")
                i, j = (int(v) for v in base.indices)
                if i < 1 or j < 0:
                    raise ParseError(f"bad variable {base}")
                mono[(i, j)] += int(e)
                top = max(top, i)
            elif base == x:
                xp += int(e)
            elif base == t:
                tp += int(e)
            elif f.is_Number:
                coef *= f
            else:
                raise ParseError(f"unexpected factor {f}")
        key = tuple(sorted(mono.items()))
        terms[key][xp] = dom.add(terms[key][xp], _scalar(coef, tp, dom))
    n = n if n is not None else max(top, 1)
    if top > n:
        raise ParseError(f"variable group {top} exceeds {n}")
    out = {}
    for key, row in terms.items():
        deg = max(row, default=-1)
        out[key] = UniPoly(dom, [row.get(e, dom.zero()) for e in range(deg + 1)])
    return MultiPoly(dom, n, out)


def format_operator(L: OreOperator) -> str:
    return L.to_str()


def operator_to_json(L: OreOperator) -> dict:
    return {"algebra": L.alg.name, "coeffs": [c.to_str() for c in L.coeffs]}


def operator_from_json(obj: dict | str, alg: OreAlgebra) -> OreOperator:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if obj.get("algebra", alg.name) != alg.name:
        raise ParseError(f"operator belongs to the {obj['algebra']} algebra")
    return OreOperator(alg, [parse_poly(s, alg.domain) for s in obj["coeffs"]])


def multipoly_to_json(P: MultiPoly) -> dict:
    terms = []
    for mono, c in sorted(P.terms.items()):
        terms.append({"monomial": [[i, j, e] for (i, j), e in mono], "coeff": c.to_str()})
    return {"groups": P.n, "text": P.to_str(), "terms": terms}
