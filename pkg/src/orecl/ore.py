"""Ore algebras R[x][D] with the commutation rule D p = sigma(p) D + delta(p)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .domains import CoefficientDomain, DomainError
from .poly import UniPoly

SIGMA_MODE = "sigma"
DELTA_MODE = "delta"


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class OreAlgebra:
    """Description of sigma, delta, the height growth function c and the action on products.

    ``sigma`` is the image of x as ``(a1, a0)``, i.e. ``sigma(x) = a1*x + a0``.
    ``delta`` is one of ``"zero"``, ``"deriv"`` (d/dx) or ``"diff"`` (sigma - id).
    ``c(d, h)`` bounds the height of ``±sigma(p) + delta(q)``; ``c_closed(n, d, h)``
    optionally replaces the recursive iterate.
    """

    name: str
    domain: CoefficientDomain
    sigma: tuple[int, int]
    delta: str
    c: Callable[[int, float], float]
    action: tuple[int, int, int]
    mode: str
    c_closed: Callable[[int, int, float], float] | None = None
    symbol: str = "D"

    def __post_init__(self):
        a1, a0 = self.sigma
        if self.delta not in ("zero", "deriv", "diff"):
            raise AlgebraError(f"unknown delta {self.delta!r}")
        if self.delta == "deriv" and (a1, a0) != (1, 0):
            raise AlgebraError("d/dx is a sigma-derivation only for sigma = id")
        if self.mode not in (SIGMA_MODE, DELTA_MODE):
            raise AlgebraError(f"unknown base action {self.mode!r}")
        if self.mode == SIGMA_MODE:
            if self.delta != "zero":
                raise AlgebraError("this option is only available when delta=0")
            if tuple(self.action) != (1, 0, 0):
                raise AlgebraError("sigma-mode forces (alpha, beta, gamma) = (1, 0, 0)")
        if any(v not in (-1, 0, 1) for v in self.action):
            raise AlgebraError("alpha, beta, gamma must lie in {-1, 0, 1}")

    def __eq__(self, other):
        return isinstance(other, OreAlgebra) and (self.name, self.domain, self.sigma, self.delta,
                                                  self.action, self.mode) == (
            other.name, other.domain, other.sigma, other.delta, other.action, other.mode)

    def __hash__(self):
        return hash((self.name, self.domain, self.sigma, self.delta))

    # sigma and delta on R[x]
    def apply_sigma(self, p: UniPoly, k: int = 1) -> UniPoly:
        if k == 0:
            return p
        a1, a0 = self.sigma
        if (a1, a0) == (1, 0):
            return p
        if a1 == 1:
            return p.shift_x(k * a0)
        for _ in range(k):
            p = p.compose_linear(a1, a0)
        return p

    def apply_delta(self, p: UniPoly) -> UniPoly:
        if self.delta == "zero":
            return UniPoly(p.dom)
        if self.delta == "deriv":
            return p.derivative()
        return self.apply_sigma(p) - p

    def base_action(self, p: UniPoly) -> UniPoly:
        """D . p for p in R[x]."""
        return self.apply_sigma(p) if self.mode == SIGMA_MODE else self.apply_delta(p)

    # height growth
    def c_iter(self, n: int, d: int, h: float) -> float:
        if n < 0:
            raise AlgebraError("iterate count must be nonnegative")
        if n == 0:
            return h
        if self.c_closed is not None:
            return self.c_closed(n, d, h)
        for _ in range(n):
            h = self.c(d, h)
        return h

    def c_iter_recursive(self, n: int, d: int, h: float) -> float:
        if n < 0:
            raise AlgebraError("iterate count must be nonnegative")
        for _ in range(n):
            h = self.c(d, h)
        return h

    # convenience constructors
    def op(self, coeffs: Iterable) -> "OreOperator":
        dom = self.domain
        polys = []
        for c in coeffs:
            if isinstance(c, UniPoly):
                polys.append(c)
            elif isinstance(c, (list, tuple)) and dom.kind != "gfpt":
                polys.append(UniPoly.from_ints(dom, c))
            elif isinstance(c, (list, tuple)):
                polys.append(UniPoly(dom, [dom.elem(e) if isinstance(e, (list, tuple)) else dom.from_int(e)
                                           for e in c]))
            else:
                polys.append(UniPoly.from_ints(dom, [c]))
        return OreOperator(self, polys)

    def one(self) -> "OreOperator":
        return OreOperator(self, [UniPoly.const(self.domain, self.domain.one())])

    def gen(self) -> "OreOperator":
        z = UniPoly(self.domain)
        return OreOperator(self, [z, UniPoly.const(self.domain, self.domain.one())])


def differential(dom: CoefficientDomain) -> OreAlgebra:
    h1 = dom.height_int(1)
    return OreAlgebra(
        name="diff", domain=dom, sigma=(1, 0), delta="deriv",
        c=lambda d, h: h1 + dom.height_int(d) + h,
        c_closed=lambda n, d, h: n * (h1 + dom.height_int(d)) + h,
        action=(0, 1, 0), mode=DELTA_MODE, symbol="Dx",
    )


def shift(dom: CoefficientDomain) -> OreAlgebra:
    h2 = dom.height_int(2)
    return OreAlgebra(
        name="shift", domain=dom, sigma=(1, 1), delta="zero",
        c=lambda d, h: d * h2 + h,
        c_closed=lambda n, d, h: d * dom.height_int(n + 1) + h,
        action=(1, 0, 0), mode=SIGMA_MODE, symbol="Sn",
    )


def difference(dom: CoefficientDomain) -> OreAlgebra:
    h1, h2 = dom.height_int(1), dom.height_int(2)
    return OreAlgebra(
        name="difference", domain=dom, sigma=(1, 1), delta="diff",
        c=lambda d, h: d * h2 + h1 + h,
        c_closed=lambda n, d, h: n * (d * h2 + h1) + h,
        action=(1, 1, 0), mode=DELTA_MODE, symbol="Delta",
    )


PRESETS = {"diff": differential, "shift": shift, "difference": difference}


def make_algebra(name: str, dom: CoefficientDomain) -> OreAlgebra:
    try:
        return PRESETS[name](dom)
    except KeyError:
        raise AlgebraError(f"unknown algebra {name!r}") from None


class OreOperator:
    """Immutable element sum(coeffs[i] D^i) of an Ore algebra."""

    __slots__ = ("alg", "coeffs", "_hash")

    def __init__(self, alg: OreAlgebra, coeffs: Sequence[UniPoly]):
        c = list(coeffs)
        while c and c[-1].is_zero():
            c.pop()
        self.alg = alg
        self.coeffs: tuple[UniPoly, ...] = tuple(c)
        self._hash = None

    @property
    def dom(self) -> CoefficientDomain:
        return self.alg.domain

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return max((p.degree for p in self.coeffs), default=-1)

    def height(self):
        if not self.coeffs:
            return self.dom.height(self.dom.zero())
        return max(p.height() for p in self.coeffs)

    def lc(self) -> UniPoly:
        if not self.coeffs:
            raise DomainError("zero operator has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> UniPoly:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else UniPoly(self.dom)

    def _check(self, other: "OreOperator"):
        if self.alg != other.alg:
            raise AlgebraError("operators live in different algebras")

    def __add__(self, other: "OreOperator") -> "OreOperator":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return OreOperator(self.alg, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self) -> "OreOperator":
        return OreOperator(self.alg, [-p for p in self.coeffs])

    def __sub__(self, other: "OreOperator") -> "OreOperator":
        return self + (-other)

    def lmul_poly(self, p: UniPoly) -> "OreOperator":
        """p * self."""
        return OreOperator(self.alg, [p * c for c in self.coeffs])

    def lmul_gen(self) -> "OreOperator":
        """D * self via the commutation rule."""
        alg = self.alg
        out = [UniPoly(self.dom) for _ in range(len(self.coeffs) + 1)]
        for j, lj in enumerate(self.coeffs):
            if lj.is_zero():
                continue
            out[j + 1] = out[j + 1] + alg.apply_sigma(lj)
            if alg.delta != "zero":
                out[j] = out[j] + alg.apply_delta(lj)
        return OreOperator(alg, out)

    def gen_powers(self, n: int) -> list["OreOperator"]:
        """[self, D*self, ..., D^n*self]."""
        out = [self]
        for _ in range(n):
            out.append(out[-1].lmul_gen())
        return out

    def __mul__(self, other: "OreOperator") -> "OreOperator":
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return OreOperator(self.alg, [])
        pw = other.gen_powers(self.order)
        n = self.order + other.order + 1
        out = [UniPoly(self.dom) for _ in range(n)]
        for i, mi in enumerate(self.coeffs):
            if mi.is_zero():
                continue
            for j, c in enumerate(pw[i].coeffs):
                if not c.is_zero():
                    out[j] = out[j] + mi * c
        return OreOperator(self.alg, out)

    def apply_to_base(self, q: UniPoly) -> UniPoly:
        """Action of the operator on R[x]."""
        acc = UniPoly(self.dom)
        cur = q
        for i, li in enumerate(self.coeffs):
            if i:
                cur = self.alg.base_action(cur)
            if not li.is_zero():
                acc = acc + li * cur
        return acc

    def map_coeffs(self, fn) -> "OreOperator":
        return OreOperator(self.alg, [fn(p) for p in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, OreOperator):
            return NotImplemented
        return self.alg == other.alg and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def to_str(self) -> str:
        if not self.coeffs:
            return "0"
        sym = self.alg.symbol
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            p = self.coeffs[i]
            if p.is_zero():
                continue
            ps = p.to_str()
            compound = " + " in ps or " - " in ps or ps.startswith("(")
            if i == 0:
                parts.append(f"({ps})" if compound else ps)
                continue
            mono = sym if i == 1 else f"{sym}^{i}"
            if ps == "1":
                parts.append(mono)
            elif ps == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"({ps})*{mono}" if compound else f"{ps}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"OreOperator[{self.alg.name}]({self.to_str()})"


def rising_factorial(p: UniPoly, n: int, alg: OreAlgebra) -> UniPoly:
    """p^[n] = p sigma(p) ... sigma^(n-1)(p)."""
    if n < 0:
        raise AlgebraError("n must be nonnegative")
    out = UniPoly.const(p.dom, p.dom.one())
    for k in range(n):
        out = out * alg.apply_sigma(p, k)
    return out


def op_mul(M: OreOperator, L: OreOperator) -> OreOperator:
    return M * L


def c_iter(alg: OreAlgebra, n: int, d: int, h: float) -> float:
    return alg.c_iter(n, d, h)


def apply_to_base(L: OreOperator, q: UniPoly) -> UniPoly:
    return L.apply_to_base(q)
