"""Coefficient domains R with ring operations and a size function.

Three domains are provided:

* ``Integers``: Python ints, height ``log(1+|a|)`` as a float.
* ``PrimeField``: residues mod a word-size prime, used for modular images.
* ``PolyPrimeField``: GF(p)[t], elements are tuples of residues (low to high),
  height ``1+deg`` or ``deg`` (with h(0)=0) as an int.

Every domain also provides dense polynomial kernels over R (lists of
elements, index = power of x) so that ``UniPoly`` can dispatch to FLINT.
"""

from __future__ import annotations

import math
from array import array
from functools import reduce
from typing import Sequence

import flint

LOG_ABS = "log-abs"
ONE_PLUS_DEG = "one-plus-deg"
DEG_ONLY = "deg-only"
HEIGHT_MODES = (LOG_ABS, ONE_PLUS_DEG, DEG_ONLY)


class DomainError(ValueError):
    pass


def _strip(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


class CoefficientDomain:
    """Abstract ring R with a height function."""

    kind: str = "abstract"
    height_mode: str = LOG_ABS
    characteristic: int = 0

    # ring structure
    def zero(self):
        raise NotImplementedError

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def exquo(self, a, b):
        """Exact quotient a/b; raises if b does not divide a."""
        raise NotImplementedError

    def gcd(self, a, b):
        raise NotImplementedError

    def normalize(self, a):
        """Unit-normal associate of a, together with the unit u with a = u*normal."""
        raise NotImplementedError

    def height(self, a):
        raise NotImplementedError

    def height_int(self, n: int):
        return self.height(self.from_int(n))

    def to_str(self, a) -> str:
        raise NotImplementedError

    def sum(self, items):
        return reduce(self.add, items, self.zero())

    def content(self, items: Sequence):
        g = self.zero()
        for a in items:
            if not self.is_zero(a):
                g = self.gcd(g, a)
                if self.is_unit(g):
                    return self.one()
        return g

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def height_le(self, a, b) -> bool:
        """Compare heights with the tolerance appropriate to the mode."""
        if self.height_mode == LOG_ABS:
            return a <= b + 1e-9
        return a <= b

    # dense polynomial kernels over R
    def poly_mul(self, a: list, b: list) -> list:
        if not a or not b:
            return []
        out = [self.zero()] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if self.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = self.add(out[i + j], self.mul(ai, bj))
        return _strip_dom(self, out)

    def poly_exquo(self, a: list, b: list) -> list:
        """Exact division of dense polynomials over R."""
        if not b:
            raise ZeroDivisionError("division by zero polynomial")
        a = list(a)
        db = len(b) - 1
        lb = b[-1]
        q = [self.zero()] * max(len(a) - db, 0)
        for k in range(len(a) - 1, db - 1, -1):
            if self.is_zero(a[k]):
                continue
            c = self.exquo(a[k], lb)
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] = self.sub(a[k - db + j], self.mul(c, b[j]))
        if any(not self.is_zero(c) for c in a):
            raise DomainError("polynomial division is not exact")
        return _strip_dom(self, q)

    def poly_gcd(self, a: list, b: list) -> list:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def _key(self):
        return ()


def _strip_dom(dom: CoefficientDomain, c: list) -> list:
    while c and dom.is_zero(c[-1]):
        c.pop()
    return c


class Integers(CoefficientDomain):
    kind = "int"

    def __init__(self, height_mode: str = LOG_ABS):
        if height_mode != LOG_ABS:
            raise DomainError("the integer domain only supports log-abs heights")
        self.height_mode = height_mode

    def _key(self):
        return (self.height_mode,)

    def __repr__(self):
        return "Integers()"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return int(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a in (1, -1)

    def exquo(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise DomainError(f"{b} does not divide {a}")
        return q

    def gcd(self, a, b):
        return math.gcd(a, b)

    def normalize(self, a):
        return (-1, -a) if a < 0 else (1, a)

    def height(self, a) -> float:
        return math.log(abs(a) + 1) if a else 0.0

    def to_str(self, a):
        return str(a)

    def poly_mul(self, a, b):
        if not a or not b:
            return []
        if len(a) < 3 or len(b) < 3:
            return super().poly_mul(a, b)
        return [int(c) for c in (flint.fmpz_poly(a) * flint.fmpz_poly(b)).coeffs()]

    def poly_exquo(self, a, b):
        try:
            q = flint.fmpz_poly(a) / flint.fmpz_poly(b)
        except (ZeroDivisionError, ValueError) as exc:
            raise DomainError("polynomial division is not exact") from exc
        return [int(c) for c in q.coeffs()]

    def poly_gcd(self, a, b):
        g = flint.fmpz_poly(a).gcd(flint.fmpz_poly(b))
        c = [int(x) for x in g.coeffs()]
        if c and c[-1] < 0:
            c = [-x for x in c]
        return c


class PrimeField(CoefficientDomain):
    """GF(p) for a word-size prime p; heights are degree based (t-degree 0)."""

    kind = "gfp"

    def __init__(self, p: int, height_mode: str = ONE_PLUS_DEG):
        if height_mode not in (ONE_PLUS_DEG, DEG_ONLY):
            raise DomainError("prime fields use degree based heights")
        if p < 2 or p >= 2**62:
            raise DomainError("modulus must be a word-size prime")
        self.p = int(p)
        self.characteristic = self.p
        self.height_mode = height_mode

    def _key(self):
        return (self.p, self.height_mode)

    def __repr__(self):
        return f"PrimeField({self.p})"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return int(n) % self.p

    def add(self, a, b):
        s = a + b
        return s - self.p if s >= self.p else s

    def sub(self, a, b):
        s = a - b
        return s + self.p if s < 0 else s

    def neg(self, a):
        return (self.p - a) if a else 0

    def mul(self, a, b):
        return a * b % self.p

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def exquo(self, a, b):
        return a * self.inv(b) % self.p

    def gcd(self, a, b):
        return 1 if (a or b) else 0

    def normalize(self, a):
        return (a, 1) if a else (1, 0)

    def height(self, a) -> int:
        if a == 0:
            return 0
        return 1 if self.height_mode == ONE_PLUS_DEG else 0

    def to_str(self, a):
        return str(a)

    def poly_mul(self, a, b):
        if not a or not b:
            return []
        return [int(c) for c in (flint.nmod_poly(a, self.p) * flint.nmod_poly(b, self.p)).coeffs()]

    def poly_exquo(self, a, b):
        q, r = divmod(flint.nmod_poly(a, self.p), flint.nmod_poly(b, self.p))
        if not r.is_zero():
            raise DomainError("polynomial division is not exact")
        return [int(c) for c in q.coeffs()]

    def poly_gcd(self, a, b):
        return [int(c) for c in flint.nmod_poly(a, self.p).gcd(flint.nmod_poly(b, self.p)).coeffs()]


class PolyPrimeField(CoefficientDomain):
    """GF(p)[t] with elements stored as tuples of residues, lowest degree first."""

    kind = "gfpt"

    def __init__(self, p: int, var: str = "t", height_mode: str = ONE_PLUS_DEG):
        if height_mode not in (ONE_PLUS_DEG, DEG_ONLY):
            raise DomainError("polynomial domains use degree based heights")
        self.p = int(p)
        self.var = var
        self.characteristic = self.p
        self.height_mode = height_mode
        self._ctx = flint.nmod_mpoly_ctx.get(("x", var), modulus=self.p)

    def _key(self):
        return (self.p, self.var, self.height_mode)

    def __repr__(self):
        return f"PolyPrimeField({self.p}, {self.var!r}, {self.height_mode!r})"

    def elem(self, coeffs) -> tuple:
        return tuple(_strip([int(c) % self.p for c in coeffs]))

    def _fl(self, a) -> flint.nmod_poly:
        return flint.nmod_poly(list(a), self.p)

    def _un(self, f: flint.nmod_poly) -> tuple:
        return tuple(int(c) for c in f.coeffs())

    def zero(self):
        return ()

    def one(self):
        return (1,)

    def from_int(self, n):
        n = int(n) % self.p
        return (n,) if n else ()

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        p = self.p
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        return tuple(_strip(out)) if len(a) == len(b) else tuple(out)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        p = self.p
        return tuple((p - c) % p for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        if len(a) == 1:
            c = a[0]
            return tuple(c * x % self.p for x in b)
        if len(b) == 1:
            c = b[0]
            return tuple(c * x % self.p for x in a)
        if min(len(a), len(b)) * (self.p - 1) ** 2 < 2**64:
            # Kronecker substitution into a python int, 64-bit slots cannot overflow
            A = int.from_bytes(array("Q", a).tobytes(), "little")
            B = int.from_bytes(array("Q", b).tobytes(), "little")
            out = array("Q")
            out.frombytes((A * B).to_bytes(8 * (len(a) + len(b) - 1), "little"))
            p = self.p
            return tuple([c % p for c in out])
        return self._un(self._fl(a) * self._fl(b))

    def is_zero(self, a):
        return not a

    def is_unit(self, a):
        return len(a) == 1

    def exquo(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        q, r = divmod(self._fl(a), self._fl(b))
        if not r.is_zero():
            raise DomainError("element division is not exact")
        return self._un(q)

    def gcd(self, a, b):
        if not a:
            return self.normalize(b)[1]
        if not b:
            return self.normalize(a)[1]
        return self._un(self._fl(a).gcd(self._fl(b)))

    def normalize(self, a):
        if not a:
            return (1,), ()
        lc = a[-1]
        inv = pow(lc, self.p - 2, self.p)
        return (lc,), tuple(c * inv % self.p for c in a)

    def degree(self, a) -> int:
        return len(a) - 1

    def height(self, a) -> int:
        if not a:
            return 0
        d = len(a) - 1
        return d + 1 if self.height_mode == ONE_PLUS_DEG else d

    def to_str(self, a):
        if not a:
            return "0"
        terms = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms)

    # dense polynomial kernels via Kronecker substitution into GF(p)[z]
    def _kron(self, a: list, slot: int) -> flint.nmod_poly:
        flat = [0] * (len(a) * slot)
        for i, c in enumerate(a):
            flat[i * slot: i * slot + len(c)] = c
        return flint.nmod_poly(flat, self.p)

    def _unkron(self, f: flint.nmod_poly, slot: int) -> list:
        flat = [int(c) for c in f.coeffs()]
        n = (len(flat) + slot - 1) // slot
        return _strip_dom(self, [tuple(_strip(flat[i * slot:(i + 1) * slot])) for i in range(n)])

    def poly_mul(self, a, b):
        if not a or not b:
            return []
        slot = max(map(len, a)) + max(map(len, b))
        return self._unkron(self._kron(a, slot) * self._kron(b, slot), slot)

    def _mp(self, a: list) -> flint.nmod_mpoly:
        d = {}
        for i, c in enumerate(a):
            for j, v in enumerate(c):
                if v:
                    d[(i, j)] = v
        return self._ctx.from_dict(d)

    def _unmp(self, f: flint.nmod_mpoly) -> list:
        terms = f.to_dict()
        if not terms:
            return []
        dx = max(k[0] for k in terms)
        rows = [[] for _ in range(dx + 1)]
        for (i, j), v in terms.items():
            r = rows[i]
            if len(r) <= j:
                r.extend([0] * (j + 1 - len(r)))
            r[j] = int(v)
        return [tuple(r) for r in rows]

    def poly_exquo(self, a, b):
        try:
            return self._unmp(self._mp(a) / self._mp(b))
        except (ZeroDivisionError, ValueError) as exc:
            raise DomainError("polynomial division is not exact") from exc

    def poly_gcd(self, a, b):
        return self._unmp(self._mp(a).gcd(self._mp(b)))


def make_domain(spec: str, height_mode: str | None = None) -> CoefficientDomain:
    """Parse ``int``, ``gfp:1091`` or ``gfp:t:1091``."""
    parts = spec.split(":")
    if parts[0] == "int":
        return Integers(height_mode or LOG_ABS)
    if parts[0] == "gfp" and len(parts) == 2:
        return PrimeField(int(parts[1]), height_mode or ONE_PLUS_DEG)
    if parts[0] == "gfp" and len(parts) == 3:
        return PolyPrimeField(int(parts[2]), parts[1], height_mode or ONE_PLUS_DEG)
    raise DomainError(f"unknown domain {spec!r}")
