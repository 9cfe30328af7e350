"""Randomized closure computations checked by the solution oracle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from orecl.bench.oracle import verify_annihilator
from orecl.bench.sampling import random_operator, stream
from orecl.closure import AnnihilatorIdeal, MultiPoly, annihilator, lclm
from orecl.closure.multipoly import associate_P, sym_power_P, sym_product_P, wronskian_P
from orecl.domains import make_domain
from orecl.ore import make_algebra

KINDS = ("lclm", "symprod", "sympow", "associate", "wronskian")
ALGEBRAS = ("shift", "diff", "difference")


@dataclass
class Case:
    index: int
    kind: str
    algebra: str
    domain: str
    detail: str
    verified: bool


def _ops(alg, rng, count: int, order: int, degree: int, height: int):
    return [random_operator(order, degree, height, alg.domain, alg, rng) for _ in range(count)]


def run_case(index: int, seed: int = 0) -> Case:
    rng = stream(seed, 5, index)
    kind = KINDS[index % len(KINDS)]
    name = ALGEBRAS[(index // len(KINDS)) % len(ALGEBRAS)]
    spec = "gfp:t:1091" if index % 4 == 3 else "int"
    dom = make_domain(spec, "deg-only" if spec != "int" else None)
    alg = make_algebra(name, dom)
    h = 1 if spec != "int" else 2
    if kind == "lclm":
        n = int(rng.integers(2, 4))
        ops = [random_operator(int(rng.integers(1, 3)), int(rng.integers(0, 3)), h, dom, alg, rng) for _ in range(n)]
        L = lclm(ops).operator
        P = MultiPoly(dom, n)
        for i in range(1, n + 1):
            P = P + MultiPoly.var(dom, n, i, 0)
        ok = verify_annihilator(L, P, ops, N=50, seed=index)
        return Case(index, kind, name, spec, f"n={n}", ok)
    if kind == "symprod":
        ops = _ops(alg, rng, 2, 2, int(rng.integers(0, 3)), h)
        P, detail = sym_product_P(dom), ""
    elif kind == "sympow":
        k = int(rng.integers(2, 4))
        ops = _ops(alg, rng, 1, 2, int(rng.integers(0, 3)), h)
        P, detail = sym_power_P(dom, k), f"k={k}"
    elif kind == "associate":
        ops = _ops(alg, rng, 1, 3, int(rng.integers(0, 3)), h)
        A = random_operator(int(rng.integers(0, 3)), int(rng.integers(0, 3)), h, dom, alg, rng)
        P, detail = associate_P(A, 3), f"ord A={A.order}"
    else:
        r = int(rng.integers(2, 4))
        # r = 3 with x-degree 1 needs a 27 x 28 system whose kernel has ~10^4-bit entries
        ops = _ops(alg, rng, r, r, 1 if r == 2 else 0, h)
        P, detail = wronskian_P(dom, r), f"r={r}"
    res = annihilator(P, AnnihilatorIdeal(tuple(ops)))
    ok = verify_annihilator(res.L, P, ops, N=50, multiplier=res.p, seed=index)
    return Case(index, kind, name, spec, detail, ok)


def soundness_run(count: int = 100, seed: int = 0) -> list[Case]:
    return [run_case(i, seed) for i in range(count)]


def coverage(cases: list[Case]) -> set[tuple[str, str]]:
    return {(c.kind, c.algebra) for c in cases}


__all__ = ["Case", "run_case", "soundness_run", "coverage", "np"]
