"""Kernel vectors of matrices over R[x]."""

from __future__ import annotations

from ..poly import UniPoly, _normal_poly, poly_content, poly_gcd
from .bareiss import bareiss_cramer, exact_profile
from .engine import EngineConfig, EngineResult, GridTooSmall, modular_cramer
from .matrix import LinalgError, PolyMatrix

METHODS = ("auto", "bareiss", "modular")
REDUCTIONS = (None, "content", "gcd")


def normalize_vector(v: list[UniPoly], reduce: str | None = "content", anchor_last: bool = False) -> list[UniPoly]:
    """Divide by the R-content (or the full R[x] gcd) and make one entry's leading coefficient unit-normal.

    The anchor is the first nonzero entry, or the last one with ``anchor_last``.
    """
    nz = [p for p in v if not p.is_zero()]
    if not nz or reduce is None:
        return list(v)
    dom = nz[0].dom
    if reduce == "gcd":
        g = poly_gcd(nz)
        if g.degree > 0 or not dom.is_unit(g.c[0]):
            v = [p.exquo(g) if not p.is_zero() else p for p in v]
    elif reduce == "content":
        g = dom.normalize(poly_content(nz, dom))[1]
        if not dom.is_unit(g):
            v = [p.exquo_scalar(g) for p in v]
    else:
        raise LinalgError(f"unknown reduction {reduce!r}")
    nzv = [p for p in v if not p.is_zero()]
    lead = nzv[-1] if anchor_last else nzv[0]
    norm = _normal_poly(lead)
    if norm == lead:
        return list(v)
    if dom.kind == "int":
        return [-p for p in v]
    unit = dom.normalize(lead.lc())[0]
    inv = dom.exquo(dom.one(), unit)
    return [p.scale(inv) for p in v]


def nullspace_vector(A: PolyMatrix, method: str = "auto", reduce: str | None = "content",
                     config: EngineConfig | None = None) -> list[UniPoly]:
    """Nonzero v with A v = 0, entries in R[x].

    Before reduction v is the canonical Cramer vector: minors of the leading
    rank-profile block, supported on the pivot columns and the first free one.
    Both methods return that same vector.
    """
    if method not in METHODS:
        raise LinalgError(f"unknown method {method!r}")
    if A.ncols == 0:
        raise LinalgError("trivial kernel")
    v = None
    if method == "auto" and min(A.nrows, A.ncols) >= 8:
        try:
            v = modular_cramer(A, config=config).v
        except GridTooSmall:
            pass
    elif method == "modular":
        v = modular_cramer(A, config=config).v
    if v is None:
        v = bareiss_cramer(A)[0]
    return normalize_vector(v, reduce)


__all__ = ["PolyMatrix", "LinalgError", "nullspace_vector", "normalize_vector", "bareiss_cramer",
           "exact_profile", "modular_cramer", "EngineConfig", "EngineResult", "GridTooSmall"]
