"""Dense univariate polynomials over a coefficient domain."""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .domains import CoefficientDomain, DomainError


@lru_cache(maxsize=256)
def _taylor_matrix(n: int, a: int, p: int) -> np.ndarray:
    """M[j, k] = C(k, j) a^(k-j) mod p."""
    M = np.zeros((n, n), dtype=np.int64)
    for k in range(n):
        for j in range(k + 1):
            M[j, k] = comb(k, j) * pow(a, k - j, p) % p
    return M


class UniPoly:
    """Immutable dense polynomial sum(c[i] x^i) with coefficients in ``dom``.

    The stored coefficient tuple never ends in a zero, so ``deg(0) = -1``.
    """

    __slots__ = ("dom", "c", "_hash")

    def __init__(self, dom: CoefficientDomain, coeffs: Iterable = (), *, _trusted: bool = False):
        self.dom = dom
        if _trusted:
            self.c = coeffs if isinstance(coeffs, tuple) else tuple(coeffs)
        else:
            c = list(coeffs)
            while c and dom.is_zero(c[-1]):
                c.pop()
            self.c = tuple(c)
        self._hash = None

    @classmethod
    def const(cls, dom: CoefficientDomain, a) -> "UniPoly":
        return cls(dom, (a,))

    @classmethod
    def from_ints(cls, dom: CoefficientDomain, ints: Sequence[int]) -> "UniPoly":
        return cls(dom, [dom.from_int(i) for i in ints])

    @classmethod
    def x(cls, dom: CoefficientDomain) -> "UniPoly":
        return cls(dom, (dom.zero(), dom.one()), _trusted=True)

    # accessors
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lc(self):
        if not self.c:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.c[-1]

    def height(self):
        if not self.c:
            return self.dom.height(self.dom.zero())
        return max(self.dom.height(a) for a in self.c)

    def __getitem__(self, i: int):
        return self.c[i] if 0 <= i < len(self.c) else self.dom.zero()

    def __len__(self):
        return len(self.c)

    # arithmetic
    def _wrap(self, coeffs) -> "UniPoly":
        return UniPoly(self.dom, coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        d = self.dom
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = d.add(out[i], v)
        return self._wrap(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.dom, tuple(self.dom.neg(a) for a in self.c), _trusted=True)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if not self.c or not other.c:
            return UniPoly(self.dom)
        if len(self.c) == 1:
            return other.scale(self.c[0])
        if len(other.c) == 1:
            return self.scale(other.c[0])
        return self._wrap(self.dom.poly_mul(list(self.c), list(other.c)))

    def scale(self, a) -> "UniPoly":
        d = self.dom
        if d.is_zero(a):
            return UniPoly(d)
        return self._wrap([d.mul(a, v) for v in self.c])

    def __pow__(self, n: int) -> "UniPoly":
        out = UniPoly.const(self.dom, self.dom.one())
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def exquo_scalar(self, a) -> "UniPoly":
        return UniPoly(self.dom, tuple(self.dom.exquo(v, a) for v in self.c), _trusted=True)

    def exquo(self, other: "UniPoly") -> "UniPoly":
        if len(other.c) == 1:
            return self.exquo_scalar(other.c[0])
        return self._wrap(self.dom.poly_exquo(list(self.c), list(other.c)))

    def shift_x(self, a: int = 1) -> "UniPoly":
        """p(x + a) for an integer a (Taylor shift)."""
        if a == 0 or len(self.c) <= 1:
            return self
        d = self.dom
        n = len(self.c)
        if d.kind in ("gfp", "gfpt"):
            return self._shift_mod(a)
        out = [d.zero()] * n
        for k, ck in enumerate(self.c):
            if d.is_zero(ck):
                continue
            # (x+a)^k = sum_j C(k,j) a^(k-j) x^j
            for j in range(k + 1):
                out[j] = d.add(out[j], d.mul(ck, d.from_int(comb(k, j) * a ** (k - j))))
        return self._wrap(out)

    def _shift_mod(self, a: int) -> "UniPoly":
        d = self.dom
        p = d.p
        M = _taylor_matrix(len(self.c), a % p, p)
        if d.kind == "gfp":
            out = (M @ np.array(self.c, dtype=np.int64)) % p
            return self._wrap([int(v) for v in out])
        w = max(len(c) for c in self.c)
        C = np.zeros((len(self.c), w), dtype=np.int64)
        for i, c in enumerate(self.c):
            C[i, :len(c)] = c
        out = (M @ C) % p
        return self._wrap([d.elem(row) for row in out.tolist()])

    def compose_linear(self, a1: int, a0: int) -> "UniPoly":
        """p(a1*x + a0) for integers a1, a0."""
        if a1 == 1:
            return self.shift_x(a0)
        d = self.dom
        out = [d.zero()] * len(self.c)
        for k, ck in enumerate(self.c):
            if d.is_zero(ck):
                continue
            for j in range(k + 1):
                out[j] = d.add(out[j], d.mul(ck, d.from_int(comb(k, j) * a1 ** j * a0 ** (k - j))))
        return self._wrap(out)

    def derivative(self) -> "UniPoly":
        d = self.dom
        return self._wrap([d.mul(d.from_int(i), self.c[i]) for i in range(1, len(self.c))])

    def eval(self, a):
        d = self.dom
        acc = d.zero()
        for v in reversed(self.c):
            acc = d.add(d.mul(acc, a), v)
        return acc

    def map_coeffs(self, fn, dom: CoefficientDomain | None = None) -> "UniPoly":
        return UniPoly(dom or self.dom, [fn(v) for v in self.c])

    # comparison
    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.c == other.c and self.dom == other.dom

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    def __repr__(self):
        return f"UniPoly({self.to_str()})"

    def to_str(self, var: str = "x") -> str:
        d = self.dom
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if d.is_zero(a):
                continue
            s = d.to_str(a)
            if i == 0:
                parts.append(s if ("+" not in s[1:] and "-" not in s[1:]) else f"({s})")
                continue
            mono = var if i == 1 else f"{var}^{i}"
            if s == "1":
                parts.append(mono)
            elif s == "-1":
                parts.append(f"-{mono}")
            elif "+" in s[1:] or "-" in s[1:]:
                parts.append(f"({s})*{mono}")
            else:
                parts.append(f"{s}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_content(polys: Iterable[UniPoly], dom: CoefficientDomain):
    """gcd in R of all coefficients of all polynomials."""
    return dom.content([a for p in polys for a in p.c])


def content_primitive(p: UniPoly):
    """Split p = content * primitive with the content taken in R.

    The sign (or leading unit) is kept with the primitive part, so the
    content is unit-normal.
    """
    if p.is_zero():
        raise DomainError("zero input")
    dom = p.dom
    g = poly_content([p], dom)
    g = dom.normalize(g)[1]
    return g, p.exquo_scalar(g)


def poly_gcd(polys: Sequence[UniPoly]) -> UniPoly:
    """Normalized gcd in R[x] of a list of polynomials; raises if all are zero."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise DomainError("zero input")
    dom = polys[0].dom
    polys = sorted(polys, key=lambda q: q.degree)
    g = list(polys[0].c)
    for q in polys[1:]:
        if len(g) == 1:
            break
        g = dom.poly_gcd(g, list(q.c))
    if len(g) == 1:
        # a constant in R: finish with the R-content of everything
        c = dom.content([a for p in polys for a in p.c])
        return UniPoly(dom, (dom.normalize(c)[1],))
    return _normal_poly(UniPoly(dom, g))


def _normal_poly(p: UniPoly) -> UniPoly:
    dom = p.dom
    unit, _ = dom.normalize(p.lc())
    if isinstance(unit, int) and dom.kind == "int":
        return -p if unit < 0 else p
    if dom.kind == "gfp":
        return p.scale(dom.inv(p.lc())) if p.lc() != 1 else p
    if dom.kind == "gfpt":
        inv = pow(unit[0], dom.p - 2, dom.p)
        return p.scale((inv,))
    return p
