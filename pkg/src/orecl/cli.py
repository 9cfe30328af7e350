"""Command line interface ``orecl``."""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds as B
from .bench.experiments import ExperimentConfig
from .closure import (AnnihilatorIdeal, ClosureError, annihilator, annihilator_at, annihilator_inhomogeneous,
                      clm_at, lclm)
from .closure.multipoly import MultiPoly, MultiPolyError, associate_P, sym_power_P, sym_product_P, wronskian_P
from .domains import DomainError, make_domain
from .linalg import LinalgError
from .ore import OreOperator, make_algebra
from .textio import ParseError, multipoly_to_json, operator_to_json, parse_multipoly, parse_operator

ALGEBRAS = ("shift", "diff", "difference")
CLOSURES = ("symprod", "sympow", "associate", "wronskian", "annihilate")


def _sizes(L: OreOperator) -> dict:
    return {"order": L.order, "degree": L.degree, "height": L.height()}


def _emit(args, text: str, payload: dict):
    if args.out == "json":
        print(json.dumps(payload, indent=1, default=str))
    else:
        print(text)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--algebra", choices=ALGEBRAS, default="shift")
    p.add_argument("--domain", default="int", help="int, gfp:P or gfp:t:P")
    p.add_argument("--height-mode", default=None, help="log-abs, one-plus-deg or deg-only")
    p.add_argument("--out", choices=("text", "csv", "json"), default="text")


def _algebra(args):
    return make_algebra(args.algebra, make_domain(args.domain, args.height_mode))


def _ops(args, alg) -> list[OreOperator]:
    return [parse_operator(s, alg) for s in args.operators]


def cmd_lclm(args) -> int:
    alg = _algebra(args)
    ops = _ops(args, alg)
    if args.curve_r is not None:
        d = B.curve_lclm(ops, args.curve_r)
        _emit(args, str(d), {"r": args.curve_r, "d": d})
        return 0
    if args.order is not None:
        if args.degree is None:
            raise ClosureError("--order needs --degree")
        res = clm_at(ops, args.order, args.degree)
        L = res.operator
        _emit(args, L.to_str(), {"operator": operator_to_json(L), "sizes": _sizes(L)})
        return 0
    res = lclm(ops, minimize=args.minimize)
    L = res.operator
    d = max(K.degree for K in ops)
    h = max(K.height() for K in ops)
    bd = B.bound_lclm(len(ops), [K.order for K in ops], d, h, alg)
    _emit(args, L.to_str(), {"operator": operator_to_json(L), "sizes": _sizes(L),
                             "raw_height": res.raw.height(), "bound": bd.as_dict()})
    return 0


def _closure_P(args, alg, ops) -> tuple[MultiPoly, AnnihilatorIdeal, str]:
    dom = alg.domain
    kind = args.command
    if kind == "symprod":
        if len(ops) != 2:
            raise ClosureError("symprod takes two operators")
        return sym_product_P(dom), AnnihilatorIdeal(tuple(ops)), kind
    if kind == "sympow":
        if len(ops) != 1:
            raise ClosureError("sympow takes one operator")
        return sym_power_P(dom, args.power), AnnihilatorIdeal(tuple(ops)), kind
    if kind == "associate":
        if len(ops) != 2:
            raise ClosureError("associate takes L and A")
        return associate_P(ops[1], ops[0].order), AnnihilatorIdeal((ops[0],)), kind
    if kind == "wronskian":
        return wronskian_P(dom, len(ops)), AnnihilatorIdeal(tuple(ops)), kind
    if args.poly is None:
        raise ClosureError("annihilate needs --poly")
    return parse_multipoly(args.poly, dom, len(ops)), AnnihilatorIdeal(tuple(ops)), kind


def _special_bound(kind: str, ops, alg, power: int):
    d = max(K.degree for K in ops)
    h = max(K.height() for K in ops)
    if kind == "symprod":
        return B.bound_sym_product(ops[0].order, ops[1].order, d, h, alg)
    if kind == "sympow":
        return B.bound_sym_power(power, ops[0].order, d, h, alg)
    if kind == "associate":
        L, A = ops
        return B.bound_associate(L.order, A.degree, A.height(), L.degree, L.height(), alg)
    if kind == "wronskian":
        return B.bound_wronskian(len(ops), d, h, alg)
    return None


def cmd_closure(args) -> int:
    alg = _algebra(args)
    ops = _ops(args, alg)
    P, ideal, kind = _closure_P(args, alg, ops)
    if args.curve_r is not None:
        d = B.curve_poly(P, ideal, args.curve_r)
        _emit(args, str(d), {"r": args.curve_r, "d": d})
        return 0
    if args.order is not None:
        if args.degree is None:
            raise ClosureError("--order needs --degree")
        res = annihilator_at(P, ideal, args.order, args.degree)
        L, p = res.L, res.p
    elif not P.is_homogeneous():
        L, p = annihilator_inhomogeneous(P, ideal), None
    else:
        res = annihilator(P, ideal)
        L, p = res.L, res.p
    bd = _special_bound(kind, ops, alg, args.power)
    payload = {"P": multipoly_to_json(P), "operator": operator_to_json(L), "sizes": _sizes(L),
               "multiplier": p.to_str() if p is not None else None,
               "bound": bd.as_dict() if bd is not None else None}
    _emit(args, L.to_str(), payload)
    return 0


def cmd_bounds(args) -> int:
    alg = _algebra(args)
    ops = _ops(args, alg)
    kind = args.kind
    if kind == "lclm":
        if args.curve_r is not None:
            d = B.curve_lclm(ops, args.curve_r)
            _emit(args, str(d), {"r": args.curve_r, "d": d})
            return 0
        d = max(K.degree for K in ops)
        h = max(K.height() for K in ops)
        bd = B.bound_lclm(len(ops), [K.order for K in ops], d, h, alg)
    else:
        if args.curve_r is not None:
            args.command = kind
            P, ideal, _ = _closure_P(args, alg, ops)
            d = B.curve_poly(P, ideal, args.curve_r)
            _emit(args, str(d), {"r": args.curve_r, "d": d})
            return 0
        bd = _special_bound(kind, ops, alg, args.power)
    text = f"order {bd.order}\ndegree {bd.degree}\nheight {bd.height}"
    _emit(args, text, bd.as_dict())
    return 0


def cmd_experiment(args) -> int:
    kw = {}
    if args.id == 1:
        kw["allow_heavy"] = args.allow_heavy
        if args.domain_filter:
            kw["domains"] = tuple(args.domain_filter)
    sizes = tuple(args.sizes) if args.sizes else None
    rep = ExperimentConfig(args.id, sizes, args.trials, args.seed, kw).run()
    timing = not args.no_timing
    if args.out == "json":
        sys.stdout.write(rep.to_json(timing) + "\n")
    else:
        sys.stdout.write(rep.to_csv(timing))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orecl", description="Closure properties of D-finite functions in Ore algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lclm", help="common left multiple of operators")
    _common(p)
    p.add_argument("operators", nargs="+")
    p.add_argument("--minimize", action="store_true", help="search for the least order")
    p.add_argument("--order", type=int, help="order of an order-degree ansatz")
    p.add_argument("--degree", type=int, help="degree of an order-degree ansatz")
    p.add_argument("--curve-r", type=int, help="print the degree curve value at this order")
    p.set_defaults(func=cmd_lclm)

    for name, helptext in (("symprod", "symmetric product of two operators"),
                           ("sympow", "symmetric power of one operator"),
                           ("associate", "associate of L by A (pass L then A)"),
                           ("wronskian", "Wronskian of n operators"),
                           ("annihilate", "annihilator of a polynomial expression (--poly)")):
        p = sub.add_parser(name, help=helptext)
        _common(p)
        p.add_argument("operators", nargs="+")
        p.add_argument("--power", type=int, default=2)
        p.add_argument("--poly", help='expression such as "y[1,0]*y[2,1] - y[1,1]*y[2,0]"')
        p.add_argument("--order", type=int)
        p.add_argument("--degree", type=int)
        p.add_argument("--curve-r", type=int)
        p.set_defaults(func=cmd_closure)

    p = sub.add_parser("bounds", help="a-priori size bounds without computing")
    _common(p)
    p.add_argument("kind", choices=("lclm",) + CLOSURES[:-1])
    p.add_argument("operators", nargs="+")
    p.add_argument("--power", type=int, default=2)
    p.add_argument("--curve-r", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("experiment", help="reproduce an experiment and print its table")
    p.add_argument("id", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--sizes", type=int, nargs="+")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    p.add_argument("--domain", dest="domain_filter", action="append", help="restrict experiment 1 to a domain")
    p.add_argument("--allow-heavy", action="store_true", help="permit size 32 over the integers")
    p.add_argument("--no-timing", action="store_true", help="zero the millis column for byte-identical output")
    p.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ClosureError, MultiPolyError, ParseError, DomainError, LinalgError, B.BoundError, ValueError) as exc:
        print(f"orecl: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
