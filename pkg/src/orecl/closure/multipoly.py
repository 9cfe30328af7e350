"""Polynomials in the variables y[i,j] with coefficients in R[x].

y[i,j] stands for the j-th derivative (or shift) of the i-th input function.
Groups are numbered from 1.  A monomial is a sorted tuple of ((i, j), e)
pairs with positive exponents; the empty tuple is the monomial 1.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping

from ..domains import CoefficientDomain
from ..ore import SIGMA_MODE, OreAlgebra, OreOperator
from ..poly import UniPoly

Monomial = tuple


class MultiPolyError(ValueError):
    pass


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for v, e in b:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


def mono_from_vars(vs: Iterable[tuple[int, int]]) -> Monomial:
    acc: dict = defaultdict(int)
    for v in vs:
        acc[v] += 1
    return tuple(sorted(acc.items()))


def mono_vars(m: Monomial) -> list[tuple[int, int]]:
    return [v for v, e in m for _ in range(e)]


def mono_deg(m: Monomial, n: int) -> tuple[int, ...]:
    out = [0] * n
    for (i, _), e in m:
        out[i - 1] += e
    return tuple(out)


class MultiPoly:
    """Immutable sparse element of R[x][y[i,j]] with n variable groups."""

    __slots__ = ("dom", "n", "_terms")

    def __init__(self, dom: CoefficientDomain, n: int, terms: Mapping[Monomial, UniPoly] | None = None):
        self.dom = dom
        self.n = n
        clean = {}
        for m, c in (terms or {}).items():
            if not c.is_zero():
                for (i, j), e in m:
                    if not 1 <= i <= n or j < 0 or e <= 0:
                        raise MultiPolyError(f"bad variable y[{i},{j}]^{e} for {n} groups")
                clean[m] = c
        self._terms = clean

    # constructors
    @classmethod
    def var(cls, dom: CoefficientDomain, n: int, i: int, j: int) -> "MultiPoly":
        return cls(dom, n, {(((i, j), 1),): UniPoly.const(dom, dom.one())})

    @classmethod
    def const(cls, dom: CoefficientDomain, n: int, p: UniPoly | int = 1) -> "MultiPoly":
        if not isinstance(p, UniPoly):
            p = UniPoly.const(dom, dom.from_int(p))
        return cls(dom, n, {(): p})

    @classmethod
    def linear(cls, dom: CoefficientDomain, n: int, i: int, coeffs: Iterable[UniPoly]) -> "MultiPoly":
        """sum_j coeffs[j] * y[i,j]."""
        return cls(dom, n, {(((i, j), 1),): c for j, c in enumerate(coeffs)})

    # accessors
    @property
    def terms(self) -> Mapping[Monomial, UniPoly]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def coeff(self, m: Monomial) -> UniPoly:
        return self._terms.get(m, UniPoly(self.dom))

    def Deg(self) -> tuple[int, ...]:
        out = [0] * self.n
        for m in self._terms:
            for i, d in enumerate(mono_deg(m, self.n)):
                out[i] = max(out[i], d)
        return tuple(out)

    def Ord(self) -> tuple[int, ...]:
        """Largest j per group, -1 for groups that do not occur."""
        out = [-1] * self.n
        for m in self._terms:
            for (i, j), _ in m:
                out[i - 1] = max(out[i - 1], j)
        return tuple(out)

    @property
    def degree(self) -> int:
        return max((c.degree for c in self._terms.values()), default=-1)

    def height(self):
        return max((c.height() for c in self._terms.values()), default=self.dom.height(self.dom.zero()))

    def is_homogeneous(self) -> bool:
        degs = {mono_deg(m, self.n) for m in self._terms}
        return len(degs) <= 1

    def homogeneous_components(self) -> dict[tuple[int, ...], "MultiPoly"]:
        comps: dict = defaultdict(dict)
        for m, c in self._terms.items():
            comps[mono_deg(m, self.n)][m] = c
        return {k: MultiPoly(self.dom, self.n, v) for k, v in sorted(comps.items())}

    # arithmetic
    def _check(self, other: "MultiPoly"):
        if self.n != other.n or self.dom != other.dom:
            raise MultiPolyError("operands differ in group count or domain")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out[m] + c if m in out else c
        return MultiPoly(self.dom, self.n, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.dom, self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        return mpoly_mul(self, other)

    def scale(self, p: UniPoly) -> "MultiPoly":
        return MultiPoly(self.dom, self.n, {m: p * c for m, c in self._terms.items()})

    def map_coeffs(self, fn) -> "MultiPoly":
        return MultiPoly(self.dom, self.n, {m: fn(c) for m, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def to_str(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=lambda t: (sum(e for _, e in t), t), reverse=True):
            c = self._terms[m]
            ms = "*".join(f"y[{i},{j}]" + (f"^{e}" if e > 1 else "") for (i, j), e in m)
            cs = c.to_str()
            if not ms:
                parts.append(cs if len(c.c) <= 1 and not cs.startswith("(") else f"({cs})")
            elif cs == "1":
                parts.append(ms)
            elif cs == "-1":
                parts.append("-" + ms)
            else:
                compound = " + " in cs or " - " in cs
                parts.append(f"({cs})*{ms}" if compound else f"{cs}*{ms}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({self.to_str()})"


def mpoly_mul(P: MultiPoly, Q: MultiPoly) -> MultiPoly:
    P._check(Q)
    acc: dict = {}
    for m1, c1 in P.terms.items():
        for m2, c2 in Q.terms.items():
            m = mono_mul(m1, m2)
            t = c1 * c2
            acc[m] = acc[m] + t if m in acc else t
    return MultiPoly(P.dom, P.n, acc)


def mpoly_pow(P: MultiPoly, k: int) -> MultiPoly:
    out = MultiPoly.const(P.dom, P.n, 1)
    for _ in range(k):
        out = mpoly_mul(out, P)
    return out


@lru_cache(maxsize=None)
def _mono_action(m: Monomial, abg: tuple[int, int, int], one_image: int) -> tuple:
    """D applied to the monomial m as ((monomial, multiplicity), ...)."""
    if not m:
        return (((), 1),) if one_image else ()
    vs = mono_vars(m)
    (i, j) = vs[-1]
    if len(vs) == 1:
        return (((((i, j + 1), 1),), 1),)
    rest = mono_from_vars(vs[:-1])
    d_rest = _mono_action(rest, abg, one_image)
    a, b, g = abg
    y0 = (((i, j), 1),)
    y1 = (((i, j + 1), 1),)
    acc: dict = defaultdict(int)
    for mm, k in d_rest:
        if a:
            acc[mono_mul(mm, y1)] += a * k
        if b:
            acc[mono_mul(mm, y0)] += b * k
    if b:
        acc[mono_mul(rest, y1)] += b
    if g:
        acc[mono_mul(rest, y0)] += g
    return tuple((mm, k) for mm, k in sorted(acc.items()) if k)


def partial_action(P: MultiPoly, alg: OreAlgebra, k: int = 1) -> MultiPoly:
    """D^k . P using D.(pP) = sigma(p)(D.P) + delta(p)P and the product rule."""
    if k < 0:
        raise MultiPolyError("k must be nonnegative")
    dom = P.dom
    one_image = 1 if alg.mode == SIGMA_MODE else 0
    abg = tuple(alg.action)
    for _ in range(k):
        acc: dict = {}

        def put(mm, c):
            if mm in acc:
                acc[mm] = acc[mm] + c
            else:
                acc[mm] = c

        for m, c in P.terms.items():
            sc = alg.apply_sigma(c)
            for mm, mult in _mono_action(m, abg, one_image):
                put(mm, sc.scale(dom.from_int(mult)) if mult != 1 else sc)
            if alg.delta != "zero":
                dc = alg.apply_delta(c)
                if not dc.is_zero():
                    put(m, dc)
        P = MultiPoly(dom, P.n, acc)
    return P


def operator_on_y(L: OreOperator, n: int, i: int) -> MultiPoly:
    """L . y[i,0] = sum_j l_j y[i,j]."""
    return MultiPoly.linear(L.dom, n, i, L.coeffs)


def apply_operator(L: OreOperator, P: MultiPoly) -> MultiPoly:
    """L . P for an operator acting on the extended ring."""
    acc = MultiPoly(P.dom, P.n)
    cur = P
    for k, lk in enumerate(L.coeffs):
        if k:
            cur = partial_action(cur, L.alg, 1)
        if not lk.is_zero():
            acc = acc + cur.scale(lk)
    return acc


# the polynomials of the closure constructions

def sym_product_P(dom: CoefficientDomain) -> MultiPoly:
    return mpoly_mul(MultiPoly.var(dom, 2, 1, 0), MultiPoly.var(dom, 2, 2, 0))


def sym_power_P(dom: CoefficientDomain, k: int) -> MultiPoly:
    if k < 1:
        raise MultiPolyError("power must be positive")
    return mpoly_pow(MultiPoly.var(dom, 1, 1, 0), k)


def associate_P(A: OreOperator, r: int) -> MultiPoly:
    if A.order >= r:
        raise MultiPolyError("associate requires ord(A) < ord(L)")
    return operator_on_y(A, 1, 1)


def _perm_sign(p) -> int:
    s = 1
    p = list(p)
    for a in range(len(p)):
        for b in range(a + 1, len(p)):
            if p[a] > p[b]:
                s = -s
    return s


def wronskian_P(dom: CoefficientDomain, r: int) -> MultiPoly:
    """Leibniz expansion of det(y[i,j]) with rows j = 0..r-1 and columns i = 1..r."""
    if r < 1:
        raise MultiPolyError("Wronskian size must be positive")
    terms = {}
    one = dom.one()
    for perm in permutations(range(r)):
        m = mono_from_vars((perm[j] + 1, j) for j in range(r))
        s = _perm_sign(perm)
        terms[m] = UniPoly.const(dom, one if s > 0 else dom.neg(one))
    return MultiPoly(dom, r, terms)


def build_P(kind: str, dom: CoefficientDomain, *, k: int | None = None, A: OreOperator | None = None,
            r: int | None = None) -> MultiPoly:
    if kind == "sym_product":
        return sym_product_P(dom)
    if kind == "sym_power":
        if k is None:
            raise MultiPolyError("sym_power needs k")
        return sym_power_P(dom, k)
    if kind == "associate":
        if A is None or r is None:
            raise MultiPolyError("associate needs A and the order of L")
        return associate_P(A, r)
    if kind == "wronskian":
        if r is None:
            raise MultiPolyError("wronskian needs r")
        return wronskian_P(dom, r)
    raise MultiPolyError(f"unknown kind {kind!r}")
