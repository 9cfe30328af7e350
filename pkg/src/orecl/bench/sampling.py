"""Seeded random instances.

Every trial draws from its own PCG64 stream built as
``SeedSequence(seed, spawn_key=key)``, so a trial never depends on how many
numbers other trials consumed and trials can run in any order.
"""

from __future__ import annotations

import math

import numpy as np

from ..domains import CoefficientDomain, PolyPrimeField
from ..ore import OreAlgebra, OreOperator, make_algebra
from ..poly import UniPoly


def stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=tuple(key))))


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return stream(seed)


def int_radius(height_budget: int) -> int:
    """Largest |a| with log(1 + |a|) <= s, i.e. floor(e^s) - 1."""
    return max(0, math.floor(math.exp(height_budget)) - 1)


def _elem(dom: CoefficientDomain, rng: np.random.Generator, s: int, nonzero: bool = False):
    if dom.kind == "int":
        b = int_radius(s)
        if b == 0:
            return dom.one() if nonzero else dom.zero()
        while True:
            a = int(rng.integers(-b, b + 1))
            if a or not nonzero:
                return a
    p = dom.p
    if isinstance(dom, PolyPrimeField):
        while True:
            a = dom.elem(int(c) for c in rng.integers(0, p, size=s + 1))
            if a or not nonzero:
                return a
    lo = 1 if nonzero else 0
    return dom.from_int(int(rng.integers(lo, p)))


def random_operator(order: int, degree: int, height_budget: int, domain: CoefficientDomain,
                    algebra: OreAlgebra | str, seed) -> OreOperator:
    """Operator with exactly the given order and degree; x^degree in the leading coefficient is nonzero."""
    if min(order, degree, height_budget) < 0:
        raise ValueError("budgets must be nonnegative")
    alg = make_algebra(algebra, domain) if isinstance(algebra, str) else algebra
    rng = _as_rng(seed)
    coeffs = []
    for j in range(order + 1):
        c = [_elem(domain, rng, height_budget) for _ in range(degree + 1)]
        if j == order:
            c[degree] = _elem(domain, rng, height_budget, nonzero=True)
        coeffs.append(UniPoly(domain, c))
    return OreOperator(alg, coeffs)
