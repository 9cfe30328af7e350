"""Independent check that an operator annihilates P(f_1, ..., f_n).

Solutions of the inputs are produced from their operators alone: sequences by
unrolling the recurrence (shift and difference algebras) and power series at
an ordinary point (differential algebra).  Nothing here touches the normal
form or linear algebra code, so it can judge their output.

Arithmetic is exact: flint ``fmpq`` for integer domains and ``nmod`` for prime
fields.  Coefficients in GF(p)[t] are specialized at a random t0 first.
"""

from __future__ import annotations

from math import comb

import flint
import numpy as np

from ..closure.multipoly import MultiPoly
from ..domains import PolyPrimeField
from ..ore import OreOperator
from ..poly import UniPoly
from .sampling import stream


class OracleError(ValueError):
    pass


MAX_OFFSET = 500


class _Field:
    """Scalars and polynomials of the coefficient field after specialization."""

    def __init__(self, dom, t0: int | None = None):
        self.dom = dom
        self.kind = dom.kind
        self.p = getattr(dom, "p", None)
        if isinstance(dom, PolyPrimeField) and t0 is None:
            raise OracleError("GF(p)[t] needs a specialization point")
        self.t0 = t0

    def scalar(self, a):
        if self.kind == "int":
            return flint.fmpq(int(a))
        if self.kind == "gfpt":
            v = 0
            for c in reversed(a):
                v = (v * self.t0 + c) % self.p
            return flint.nmod(v, self.p)
        return flint.nmod(int(a), self.p)

    def from_int(self, n: int):
        return flint.fmpq(n) if self.kind == "int" else flint.nmod(n, self.p)

    def poly(self, coeffs) -> flint.fmpq_poly | flint.nmod_poly:
        if self.kind == "int":
            return flint.fmpq_poly(list(coeffs))
        return flint.nmod_poly([int(c) for c in coeffs], self.p)

    def upoly(self, q: UniPoly):
        return self.poly([self.scalar(a) for a in q.c])

    def trunc(self, f, k: int):
        return self.poly(f.coeffs()[:max(k, 0)])


def _shift_form(L: OreOperator, F: _Field) -> list:
    """Coefficients a_j with L f(n) = sum_j a_j(n) f(n+j) on sequences."""
    ell = [F.upoly(c) for c in L.coeffs]
    if L.alg.name == "shift":
        return ell
    if L.alg.name != "difference":
        raise OracleError("sequence form needs the shift or difference algebra")
    r = len(ell) - 1
    out = []
    for j in range(r + 1):
        acc = F.poly([])
        for k in range(j, r + 1):
            acc += ell[k] * ((-1) ** (k - j) * comb(k, j))
        out.append(acc)
    return out


def _regular_start(guards: list, N: int) -> int:
    for s in range(MAX_OFFSET):
        if all(g(n) != 0 for g in guards for n in range(s, s + N)):
            return s
    raise OracleError("no regular solution window")


def _unroll(a: list, start: int, N: int, initials: list) -> list:
    r = len(a) - 1
    f = list(initials[:r])
    if len(f) < r:
        raise OracleError(f"need {r} initial values")
    for n in range(start, start + N - r):
        lc = a[r](n)
        if lc == 0:
            raise OracleError("no regular solution window")
        k = n - start
        s = f[0] * 0
        for j in range(r):
            s += a[j](n) * f[k + j]
        f.append(-s / lc)
    return f[:N]


def _series(ell: list, N: int, initials: list, F: _Field) -> list:
    """Coefficients c_0..c_{N-1} of the power series solution of sum_j ell_j(u) f^(j) = 0."""
    r = len(ell) - 1
    lc0 = ell[r](0)
    if lc0 == 0:
        raise OracleError("expansion point is singular")
    rows = [e.coeffs() for e in ell]
    c = list(initials[:r])
    if len(c) < r:
        raise OracleError(f"need {r} initial values")
    zero = F.from_int(0)
    for n in range(0, N - r):
        s = zero
        for j, row in enumerate(rows):
            for e, a in enumerate(row):
                if (j == r and e == 0) or a == 0:
                    continue
                k = n - e + j
                if k < j:
                    continue
                ff = 1
                for i in range(j):
                    ff *= k - i
                s += a * ff * c[k]
        ff = 1
        for i in range(1, r + 1):
            ff *= n + i
        c.append(-s / (lc0 * ff))
    return c[:N]


def _translated(L: OreOperator, F: _Field, a: int) -> list:
    shift = F.poly([F.from_int(a), F.from_int(1)])
    return [F.upoly(c)(shift) for c in L.coeffs]


def _ordinary_point(ops: list[OreOperator], F: _Field) -> int:
    lcs = [F.upoly(L.lc()) for L in ops]
    for k in range(2 * MAX_OFFSET):
        a = (k + 1) // 2 * (1 if k % 2 else -1)
        if all(g(a) != 0 for g in lcs):
            return a
    raise OracleError("no regular solution window")


def solution_stream(L: OreOperator, N: int, initials, start: int = 0, t0: int | None = None) -> list:
    """First N terms of a solution of L.

    Sequences (shift, difference) are indexed from ``start``; for the
    differential algebra the result lists Taylor coefficients at x = start.
    """
    F = _Field(L.dom, t0)
    init = [x if isinstance(x, (flint.fmpq, flint.nmod)) else F.scalar(x) for x in initials]
    if L.alg.name == "diff":
        return _series(_translated(L, F, start), N, init, F)
    return _unroll(_shift_form(L, F), start, N, init)


def _random_initials(F: _Field, rng: np.random.Generator, r: int) -> list:
    if F.kind == "int":
        return [F.from_int(int(v)) for v in rng.integers(-9, 10, size=r)]
    return [F.from_int(int(v)) for v in rng.integers(1, F.p, size=r)]


def _monomial_terms(P: MultiPoly, F: _Field):
    return [(mono, F.upoly(c)) for mono, c in P.terms.items()]


def _check_inputs(L: OreOperator, P: MultiPoly, inputs: list[OreOperator]):
    if len(inputs) != P.n:
        raise OracleError("one input operator per variable group is required")
    for K in inputs:
        if K.alg != L.alg:
            raise OracleError("inputs and L must share one algebra")
    if P.dom != L.dom:
        raise OracleError("P and L must share one domain")


def _verify_sequences(L, P, inputs, N, multiplier, F, rng) -> bool:
    span = max(max(P.Ord()), 0)
    r = L.order
    checks = N - span - r
    if checks < 5:
        raise OracleError("window too small")
    forms = [_shift_form(K, F) for K in inputs]
    guards = [a[-1] for a in forms]
    if multiplier is not None:
        guards.append(F.upoly(multiplier))
    start = _regular_start(guards, N)
    seqs = [_unroll(a, start, N, _random_initials(F, rng, len(a) - 1)) for a in forms]
    if L.alg.name == "shift":
        Y = [[s[j:] for j in range(span + 1)] for s in seqs]
    else:
        Y = []
        for s in seqs:
            ds = [s]
            for _ in range(span):
                prev = ds[-1]
                ds.append([prev[t + 1] - prev[t] for t in range(len(prev) - 1)])
            Y.append(ds)
    glen = N - span
    terms = _monomial_terms(P, F)
    g = []
    for t in range(glen):
        n = start + t
        acc = F.from_int(0)
        for mono, c in terms:
            v = c(n)
            for (i, j), e in mono:
                v *= Y[i - 1][j][t] ** e
            acc += v
        g.append(acc)
    a = _shift_form(L, F)
    for t in range(checks):
        n = start + t
        if sum((a[j](n) * g[t + j] for j in range(r + 1)), F.from_int(0)) != 0:
            return False
    return True


def _verify_series(L, P, inputs, N, F, rng) -> bool:
    span = max(max(P.Ord()), 0)
    r = L.order
    checks = N - span - r
    if checks < 5:
        raise OracleError("window too small")
    a = _ordinary_point(inputs, F)
    sols = []
    for K in inputs:
        c = _series(_translated(K, F, a), N, _random_initials(F, rng, K.order), F)
        f = F.poly(c)
        ders = [f]
        for _ in range(span):
            ders.append(ders[-1].derivative())
        sols.append(ders)
    K = N - span
    shift = F.poly([F.from_int(a), F.from_int(1)])
    g = F.poly([])
    for mono, c in P.terms.items():
        v = F.upoly(c)(shift)
        for (i, j), e in mono:
            for _ in range(e):
                v = F.trunc(v * sols[i - 1][j], K)
        g += v
    out = F.poly([])
    for j, lj in enumerate(_translated(L, F, a)):
        out += F.trunc(lj * g, K)
        g = g.derivative()
    coeffs = out.coeffs()[:checks]
    return all(x == 0 for x in coeffs)


def verify_annihilator(L: OreOperator, P: MultiPoly, inputs: list[OreOperator], N: int = 50,
                       multiplier: UniPoly | None = None, seed: int = 0) -> bool:
    """True iff L kills P(f_1, ..., f_n) on a window of N input terms, exactly.

    The f_i are solutions of the inputs with random initial values.  For
    sequences, indices where ``multiplier`` vanishes are avoided, since
    ``multiplier * L . P`` lying in the ideal says nothing about them.
    """
    _check_inputs(L, P, list(inputs))
    if L.is_zero():
        return False
    rng = stream(seed, 0xC0DE)
    t0 = int(rng.integers(1, L.dom.p)) if isinstance(L.dom, PolyPrimeField) else None
    F = _Field(L.dom, t0)
    if L.alg.name == "diff":
        return _verify_series(L, P, list(inputs), N, F, rng)
    return _verify_sequences(L, P, list(inputs), N, multiplier, F, rng)
