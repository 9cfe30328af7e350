"""Normal forms modulo the ideal generated by the D^k L_i . y[i,0].

For P homogeneous with Deg(P) = (D_1..D_n) and Ord(P) < (r_i + m), the
normal form V has Ord(V) < (r_1..r_n) and satisfies

    prod_i (p_i^{D_i})^[m] * P  ==  V   (mod the ideal),

with p_i = lc(L_i).  Since monomials in y[i,j] with j < r_i are independent
modulo the ideal, V is unique once the multiplier is fixed, so the fast and
the literal routes below must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ..ore import OreAlgebra, OreOperator, rising_factorial
from ..poly import UniPoly
from .multipoly import MultiPoly, MultiPolyError, mono_deg, mono_from_vars, mono_mul, mpoly_mul


@dataclass(frozen=True, eq=False)
class AnnihilatorIdeal:
    """The ideal generated by D^k L_i . y[i,0] for all k >= 0."""

    generators: tuple[OreOperator, ...]
    _powers: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise MultiPolyError("the ideal needs at least one operator")
        for L in gens:
            if L.is_zero():
                raise MultiPolyError("generators must be nonzero")
            if L.alg != gens[0].alg:
                raise MultiPolyError("generators must share one algebra")

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def alg(self) -> OreAlgebra:
        return self.generators[0].alg

    @property
    def dom(self):
        return self.alg.domain

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(L.order for L in self.generators)

    @cached_property
    def lcs(self) -> tuple[UniPoly, ...]:
        return tuple(L.lc() for L in self.generators)

    def gen_power(self, i: int, k: int) -> OreOperator:
        """D^k L_i for a 1-based group index i."""
        pw = self._powers.setdefault(i, [self.generators[i - 1]])
        while len(pw) <= k:
            pw.append(pw[-1].lmul_gen())
        return pw[k]

    def generator_poly(self, i: int, k: int) -> MultiPoly:
        return MultiPoly.linear(self.dom, self.n, i, self.gen_power(i, k).coeffs)


def multiplier(ideal: AnnihilatorIdeal, D: tuple[int, ...], m: int) -> UniPoly:
    """prod_i (p_i^{D_i})^[m]."""
    alg = ideal.alg
    out = UniPoly.const(ideal.dom, ideal.dom.one())
    for p, Di in zip(ideal.lcs, D):
        if Di:
            out = out * rising_factorial(p ** Di, m, alg)
    return out


def _check(P: MultiPoly, ideal: AnnihilatorIdeal, m: int):
    if P.n != ideal.n:
        raise MultiPolyError("P and the ideal have different group counts")
    if m < 0:
        raise MultiPolyError("m must be nonnegative")
    if not P.is_homogeneous():
        raise MultiPolyError("P must be homogeneous; use annihilator_inhomogeneous")
    for S, r in zip(P.Ord(), ideal.orders):
        if S >= r + m:
            raise MultiPolyError("Ord(P) must be below (r_i + m)")


class _GroupForms:
    """Normal forms of the single variables y[i,j] of one group.

    ``N[j]`` lists coefficients of y[i,0..r-1] with
    p^[a] y[i,j] == sum_l N[j][l] y[i,l], where a = max(0, j - r + 1).
    """

    def __init__(self, ideal: AnnihilatorIdeal, i: int):
        self.ideal = ideal
        self.i = i
        self.alg = ideal.alg
        self.r = ideal.orders[i - 1]
        self.p = ideal.lcs[i - 1]
        dom = ideal.dom
        self.zero = UniPoly(dom)
        self.one = UniPoly.const(dom, dom.one())
        self.N: list[list[UniPoly]] = [[self.one if l == j else self.zero for l in range(self.r)]
                                       for j in range(self.r)]
        self._sig: list[UniPoly] = [self.p]
        self._rf: dict = {}

    def sigma_p(self, s: int) -> UniPoly:
        while len(self._sig) <= s:
            self._sig.append(self.alg.apply_sigma(self._sig[-1]))
        return self._sig[s]

    def rf(self, a: int, b: int) -> UniPoly:
        """(sigma^a p)^[b]."""
        key = (a, b)
        if key not in self._rf:
            out = self.one
            for s in range(a, a + b):
                out = out * self.sigma_p(s)
            self._rf[key] = out
        return self._rf[key]

    def form(self, j: int) -> list[UniPoly]:
        r = self.r
        while len(self.N) <= j:
            k = len(self.N) - r
            G = self.ideal.gen_power(self.i, k).coeffs
            pk = self.rf(0, k)
            new = [self.zero] * r
            for l in range(r):
                g = G[l] if l < len(G) else self.zero
                if not g.is_zero():
                    new[l] = new[l] - g * pk
            for l in range(r, r + k):
                g = G[l]
                if g.is_zero():
                    continue
                t = l - r + 1
                gs = g * self.rf(t, k - t)
                for q, nq in enumerate(self.N[l]):
                    if not nq.is_zero():
                        new[q] = new[q] - gs * nq
            self.N.append(new)
        return self.N[j]

    def factor(self, j: int, m: int) -> MultiPoly:
        """Normal form of p^[m] y[i,j]."""
        a = max(0, j - self.r + 1)
        scale = self.rf(a, m - a)
        return MultiPoly.linear(self.ideal.dom, self.ideal.n, self.i, [scale * c for c in self.form(j)])


class NormalFormer:
    """Caches single-variable forms per ideal for repeated normal form calls."""

    def __init__(self, ideal: AnnihilatorIdeal):
        self.ideal = ideal
        self.groups = [_GroupForms(ideal, i) for i in range(1, ideal.n + 1)]
        self._factors: dict = {}

    def _factor(self, i: int, j: int, m: int) -> MultiPoly:
        key = (i, j, m)
        if key not in self._factors:
            self._factors[key] = self.groups[i - 1].factor(j, m)
        return self._factors[key]

    def _group_power(self, i: int, part: tuple, m: int) -> MultiPoly:
        """Product of the single-variable forms over one group's part of a monomial."""
        key = (i, part, m)
        if key not in self._factors:
            out = MultiPoly.const(self.ideal.dom, self.ideal.n)
            for (_, j), e in part:
                f = self._factor(i, j, m)
                for _ in range(e):
                    out = mpoly_mul(out, f)
            self._factors[key] = out
        return self._factors[key]

    def __call__(self, P: MultiPoly, m: int) -> tuple[UniPoly, MultiPoly]:
        ideal = self.ideal
        _check(P, ideal, m)
        D = P.Deg()
        terms = dict(P.terms)
        # substitute one group at a time, merging equal monomials in between
        for i in range(1, ideal.n + 1):
            new: dict = {}
            for mono, c in terms.items():
                part = tuple(ve for ve in mono if ve[0][0] == i)
                if not part:
                    new[mono] = new[mono] + c if mono in new else c
                    continue
                rest = tuple(ve for ve in mono if ve[0][0] != i)
                for fm, fc in self._group_power(i, part, m).terms.items():
                    key = tuple(sorted(rest + fm))
                    t = c * fc
                    new[key] = new[key] + t if key in new else t
            terms = new
        return multiplier(ideal, D, m), MultiPoly(ideal.dom, ideal.n, terms)


def normal_form(P: MultiPoly, ideal: AnnihilatorIdeal, m: int) -> tuple[UniPoly, MultiPoly]:
    """(prod_i (p_i^{D_i})^[m], V) with Ord(V) < (r_i)."""
    return NormalFormer(ideal)(P, m)


def normal_form_literal(P: MultiPoly, ideal: AnnihilatorIdeal, m: int) -> tuple[UniPoly, MultiPoly]:
    """The same normal form by level-wise rewriting, top level first."""
    _check(P, ideal, m)
    alg = ideal.alg
    dom = ideal.dom
    n = ideal.n
    D = P.Deg()
    r = ideal.orders
    for lvl in range(m, 0, -1):
        s = [alg.apply_sigma(p, lvl - 1) for p in ideal.lcs]
        tops = [(i + 1, r[i] + lvl - 1) for i in range(n)]
        Qt = [MultiPoly(dom, n, {(((i + 1, r[i] + lvl - 1), 1),): s[i]}) - ideal.generator_poly(i + 1, lvl - 1)
              for i in range(n)]
        acc = MultiPoly(dom, n)
        for mono, c in P.terms.items():
            js = [0] * n
            rest = []
            for v, e in mono:
                if v in tops:
                    js[v[0] - 1] += e
                else:
                    rest.append((v, e))
            coef = c
            for i in range(n):
                if D[i] - js[i]:
                    coef = coef * s[i] ** (D[i] - js[i])
            term = MultiPoly(dom, n, {tuple(rest): coef})
            for i in range(n):
                for _ in range(js[i]):
                    term = mpoly_mul(term, Qt[i])
            acc = acc + term
        P = acc
    return multiplier(ideal, D, m), P
