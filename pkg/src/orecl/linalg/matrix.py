"""Matrices over R[x]."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..domains import CoefficientDomain
from ..poly import UniPoly


class LinalgError(ValueError):
    pass


@dataclass(frozen=True)
class PolyMatrix:
    """Dense n x m matrix with UniPoly entries sharing one domain."""

    dom: CoefficientDomain
    rows: tuple[tuple[UniPoly, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, dom: CoefficientDomain, rows: Sequence[Sequence[UniPoly]], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise LinalgError("ragged matrix")
            for e in r:
                if e.dom != dom:
                    raise LinalgError("entries must share one coefficient domain")
        return cls(dom, rows, ncols)

    @classmethod
    def from_ints(cls, dom: CoefficientDomain, rows):
        """Rows of entries given as coefficient lists (low to high) or scalars."""
        conv = []
        for r in rows:
            conv.append([UniPoly.from_ints(dom, e if isinstance(e, (list, tuple)) else [e]) for e in r])
        return cls.from_rows(dom, conv)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def max_degree(self) -> int:
        return max((e.degree for r in self.rows for e in r), default=-1)

    def max_height(self):
        return max((e.height() for r in self.rows for e in r), default=0)

    def mul_vec(self, v: Sequence[UniPoly]) -> list[UniPoly]:
        out = []
        for r in self.rows:
            acc = UniPoly(self.dom)
            for a, b in zip(r, v):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.dom, tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))
