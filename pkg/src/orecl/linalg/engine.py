"""Evaluation/interpolation engine for the canonical Cramer kernel vector.

The vector is computed at many points (x, and t for GF(p)[t]) and modulo
many primes (for Z), then interpolated and lifted.  Degree and magnitude
bounds of the determinants fix the number of points and primes, so the
result is exact once the rank profile is right.  The profile is read off
random evaluations; a wrong profile is caught by the residual check.

An optional output map T lets callers receive ``T @ v`` (for instance the
coefficients of ``M_1 L_1``) without lifting v itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import sympy

from ..domains import CoefficientDomain, Integers, PolyPrimeField, PrimeField
from ..poly import UniPoly
from .matrix import LinalgError, PolyMatrix
from . import modular as K


class GridTooSmall(LinalgError):
    """The field has fewer elements than the interpolation needs."""


@dataclass
class EngineConfig:
    chunk_lanes: int = 8192
    profile_points: int = 3
    seed: int = 20140314
    check_residual: bool = True


@dataclass
class EngineResult:
    rows: list[int]
    pivots: list[int]
    c0: int
    v: list[UniPoly] | None = None
    out: list[UniPoly] | None = None
    arrays: np.ndarray | None = None
    stats: dict = field(default_factory=dict)


@lru_cache(maxsize=None)
def primes_below(bound: int, count: int) -> tuple[int, ...]:
    out = []
    p = bound
    while len(out) < count:
        p = sympy.prevprime(p)
        out.append(int(p))
    return tuple(out)


PRIME_TOP = 2**26


def _tdeg(dom: CoefficientDomain, a) -> int:
    if isinstance(dom, PolyPrimeField):
        return len(a) - 1
    return 0 if not dom.is_zero(a) else -1


def _entry_tdeg(e: UniPoly) -> int:
    return max((_tdeg(e.dom, a) for a in e.c), default=-1)


def _l1(e: UniPoly) -> int:
    return sum(abs(a) for a in e.c)


class _Images:
    """Moduli and evaluation grids for one domain."""

    def __init__(self, dom: CoefficientDomain, dx: int, dt: int, magnitude: int | None):
        self.dom = dom
        self.dx, self.dt = dx, dt
        if isinstance(dom, Integers):
            need = 2 * magnitude + 1
            bits = 0.0
            n = 0
            while True:
                n += 1
                ps = primes_below(PRIME_TOP, n)
                bits = sum(math.log2(p) for p in ps)
                if bits > math.log2(need) + 1:
                    break
            self.moduli = list(primes_below(PRIME_TOP, n))
        else:
            self.moduli = [dom.p]
            if dx >= dom.p or dt >= dom.p:
                raise GridTooSmall("degree bound exceeds the number of evaluation points in GF(p)")


def _coeff_tensor(entries: list[UniPoly], dom, dx: int, dt: int):
    """Integer coefficient table (E, dx+1, dt+1) as a python-int or int64 array."""
    E = len(entries)
    if isinstance(dom, PolyPrimeField):
        arr = np.zeros((E, dx + 1, dt + 1), dtype=np.int64)
        for e, p in enumerate(entries):
            for i, a in enumerate(p.c):
                if a:
                    arr[e, i, :len(a)] = a
        return arr
    big = any(abs(a) >= 2**62 for p in entries for a in p.c)
    arr = np.zeros((E, dx + 1, 1), dtype=object if big else np.int64)
    for e, p in enumerate(entries):
        for i, a in enumerate(p.c):
            arr[e, i, 0] = a
    return arr


def _reduce(arr: np.ndarray, q: int) -> np.ndarray:
    if arr.dtype == object:
        return np.array(np.mod(arr, q), dtype=np.float64)
    return np.mod(arr, q).astype(np.float64)


def _stage_x(tensor_q: np.ndarray, Vx: np.ndarray, q: int) -> np.ndarray:
    """Values (E, npx, dt+1) of the tensor at the x points, t left symbolic."""
    return K.matmul_mod(Vx, tensor_q, q)


def _stage_t(X: np.ndarray, Vt: np.ndarray | None, q: int) -> np.ndarray:
    """Values (E, npx * nt) at the grid, lanes ordered x-major."""
    E, npx, DT1 = X.shape
    if Vt is None:
        return X[:, :, 0]
    return K.matmul_mod(X.reshape(E * npx, DT1), Vt.T, q).reshape(E, npx * Vt.shape[0])


class _Grid:
    """Values of a list of entries on the evaluation grid; zero entries are skipped."""

    def __init__(self, entries: list[UniPoly], dom):
        self.n = len(entries)
        self.nz = np.array([i for i, e in enumerate(entries) if not e.is_zero()], dtype=np.int64)
        live = [entries[i] for i in self.nz]
        self.dx = max(0, max((e.degree for e in live), default=0))
        self.dt = max(0, max((_entry_tdeg(e) for e in live), default=0))
        self.tensor = _coeff_tensor(live, dom, self.dx, self.dt)
        # maximal runs of consecutive nonzero positions: (position start, compact start, length)
        self.runs = []
        for a, pos in enumerate(self.nz.tolist()):
            if self.runs and self.runs[-1][0] + self.runs[-1][2] == pos:
                s, c, n = self.runs[-1]
                self.runs[-1] = (s, c, n + 1)
            else:
                self.runs.append((pos, a, 1))
        self.X = None

    def prepare(self, xs: np.ndarray, q: int):
        self.X = _stage_x(_reduce(self.tensor, q), K.vandermonde(xs, self.dx + 1, q), q)

    def lanes(self, tsub: np.ndarray | None, q: int) -> np.ndarray:
        """Dense values (n, npx * nt) with lanes ordered x-major."""
        X = self.X
        npx, DT1 = X.shape[1], X.shape[2]
        nt = 1 if tsub is None else len(tsub)
        out = np.zeros((self.n, npx * nt))
        if tsub is None:
            for s, c, n in self.runs:
                out[s:s + n] = X[c:c + n, :, 0]
            return out
        Vt = K.vandermonde(tsub, DT1, q)
        if DT1 * float(q - 1) ** 2 >= 2.0**53:
            out[self.nz] = _stage_t(X, Vt, q)
            return out
        VtT = np.ascontiguousarray(Vt.T)
        for s, c, n in self.runs:
            view = out[s:s + n].reshape(n * npx, nt)
            np.matmul(X[c:c + n].reshape(n * npx, DT1), VtT, out=view)
            K.mod_array(view, q)
        return out

    def at(self, idx: np.ndarray, tsub: np.ndarray | None, q: int) -> np.ndarray:
        """Dense values (n, len(idx)) at the given lanes."""
        X = self.X
        out = np.zeros((self.n, len(idx)))
        if tsub is None:
            out[self.nz] = X[:, idx, 0]
            return out
        nt = len(tsub)
        Vt = K.vandermonde(tsub, X.shape[2], q)
        xi, ti = idx // nt, idx % nt
        vals = np.empty((len(self.nz), len(idx)))
        for j in range(len(idx)):
            vals[:, j] = K.matmul_mod(X[:, xi[j], :], Vt[ti[j]][:, None], q)[:, 0]
        out[self.nz] = vals
        return out


def _eval_point(e: UniPoly, x0: int, t0: int, q: int) -> int:
    acc = 0
    dom = e.dom
    for a in reversed(e.c):
        if isinstance(dom, PolyPrimeField):
            av = 0
            for b in reversed(a):
                av = (av * t0 + b) % q
        else:
            av = a % q
        acc = (acc * x0 + av) % q
    return acc


def detect_profile(A: PolyMatrix, config: EngineConfig) -> tuple[list[int], list[int]]:
    """Row and column rank profiles over Quot(R[x]) from random evaluations."""
    dom = A.dom
    rng = np.random.default_rng(config.seed)
    q = dom.p if not isinstance(dom, Integers) else primes_below(PRIME_TOP, 1)[0]
    best = None
    for _ in range(config.profile_points):
        x0 = int(rng.integers(0, q))
        t0 = int(rng.integers(0, q))
        M = np.array([[_eval_point(e, x0, t0, q) for e in r] for r in A.rows], dtype=np.float64)
        if M.size == 0:
            return [], []
        rmask, cmask = K.profile_at(M.reshape(A.nrows, A.ncols), float(q))
        rows = [int(i) for i in np.flatnonzero(rmask)]
        cols = [int(j) for j in np.flatnonzero(cmask)]
        key = (-len(rows), rows, cols)
        if best is None or key < best:
            best = key
    return best[1], best[2]


def _elimination_order(S: np.ndarray):
    """Column order, row order and the filled structure for the pivot block.

    S is the k x (k+1) structural pattern (last column = c0).  Columns are
    sorted by the span of their nonzero rows; rows are chosen greedily with
    a structural nonzero on the diagonal.
    """
    k = S.shape[0]
    if k == 0:
        return [], [], S
    first = [int(np.argmax(S[:, j])) if S[:, j].any() else k for j in range(k)]
    last = [int(k - 1 - np.argmax(S[::-1, j])) if S[:, j].any() else k for j in range(k)]
    qcol = sorted(range(k), key=lambda j: (first[j], last[j], j))
    T = S[:, qcol + [k]].copy()
    prow = list(range(k))
    for i in range(k):
        cands = [p for p in range(i, k) if T[p, i]]
        if not cands:
            continue
        best = min(cands, key=lambda p: (int(T[p].sum()), p))
        if best != i:
            T[[i, best]] = T[[best, i]]
            prow[i], prow[best] = prow[best], prow[i]
        rows_i = [r for r in range(i + 1, k) if T[r, i]]
        cols_i = np.flatnonzero(T[i, i + 1:]) + i + 1
        for r in rows_i:
            T[r, cols_i] = True
    return qcol, prow, T


def _perm_sign(p: list[int]) -> int:
    seen = [False] * len(p)
    s = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, ln = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            ln += 1
        if ln % 2 == 0:
            s = -s
    return s


def _csr(T: np.ndarray):
    k = T.shape[0]
    rptr, ridx, cptr, cidx = [0], [], [0], []
    for i in range(k):
        ridx.extend(int(r) for r in range(i + 1, k) if T[r, i])
        rptr.append(len(ridx))
        cidx.extend(int(c) for c in range(i + 1, k + 1) if T[i, c])
        cptr.append(len(cidx))
    a = lambda v: np.array(v, dtype=np.int64)
    return a(rptr), a(ridx), a(cptr), a(cidx)


def garner(residues: np.ndarray, moduli: list[int]) -> list[int]:
    """Symmetric-range CRT of residues (n_primes, N) -> list of N ints."""
    n, N = residues.shape
    r = residues.astype(np.int64)
    digits = np.zeros_like(r)
    digits[0] = r[0]
    for i in range(1, n):
        qi = moduli[i]
        acc = digits[i - 1] % qi
        # acc = value of mixed-radix prefix modulo q_i, via Horner
        acc = np.zeros(N, dtype=np.int64)
        for j in range(i - 1, -1, -1):
            acc = (acc * (moduli[j] % qi) + digits[j]) % qi
        prod = 1
        for j in range(i):
            prod = prod * moduli[j] % qi
        inv = pow(prod, -1, qi)
        digits[i] = ((r[i] - acc) % qi) * inv % qi
    M = 1
    for m in moduli:
        M *= m
    half = M // 2
    out = []
    dl = digits.T.tolist()
    for row in dl:
        v = 0
        for j in range(n - 1, -1, -1):
            v = v * moduli[j] + row[j]
        out.append(v - M if v > half else v)
    return out


def _to_polys(dom: CoefficientDomain, coeffs: np.ndarray | list, nv: int, dx: int) -> list[UniPoly]:
    """Convert (nv, dx+1[, dt+1]) coefficient data to UniPoly."""
    out = []
    if isinstance(dom, PolyPrimeField):
        for o in range(nv):
            arr = coeffs[o]
            nz_rows = np.flatnonzero(arr.any(axis=1))
            top = int(nz_rows[-1]) + 1 if len(nz_rows) else 0
            cs = []
            for i in range(top):
                row = arr[i]
                nz = np.flatnonzero(row)
                cs.append(tuple(int(c) for c in row[:int(nz[-1]) + 1]) if len(nz) else ())
            out.append(UniPoly(dom, cs, _trusted=True) if top else UniPoly(dom))
        return out
    for o in range(nv):
        out.append(UniPoly(dom, [int(c) for c in coeffs[o]]))
    return out


def modular_cramer(A: PolyMatrix, T: PolyMatrix | None = None, *, want_v: bool = True,
                   return_arrays: bool = False, profile=None,
                   config: EngineConfig | None = None) -> EngineResult:
    """Canonical kernel vector of A (and optionally T @ v) by evaluation/interpolation."""
    config = config or EngineConfig()
    dom = A.dom
    if isinstance(dom, Integers) is False and not isinstance(dom, (PrimeField, PolyPrimeField)):
        raise LinalgError("unsupported domain for the modular engine")
    rows, piv = profile if profile is not None else detect_profile(A, config)
    k = len(rows)
    m = A.ncols
    if k == m:
        raise LinalgError("trivial kernel")
    pset = set(piv)
    c0 = next(j for j in range(m) if j not in pset)
    C = piv + [c0]

    entries = [A.rows[i][j] for i in rows for j in C]
    S = np.array([not e.is_zero() for e in entries], dtype=bool).reshape(k, k + 1)
    qcol, prow, filled = _elimination_order(S)
    sgn = _perm_sign(qcol) * _perm_sign(prow)
    rptr, ridx, cptr, cidx = _csr(filled)
    # permuted entry list (k, k+1)
    perm_entries = [A.rows[rows[prow[i]]][C[(qcol + [k])[j]]] for i in range(k) for j in range(k + 1)]

    # degree / magnitude bounds for v
    dv = 0
    tv = 0
    mag_v = 1
    for i in rows:
        row = [A.rows[i][j] for j in C]
        dv += max((e.degree for e in row), default=0)
        tv += max((_entry_tdeg(e) for e in row), default=0)
        if isinstance(dom, Integers):
            mag_v *= max(1, sum(_l1(e) for e in row))
    if T is not None:
        Tent = [T.rows[o][j] for o in range(T.nrows) for j in C]
        dTx = max(0, max((e.degree for e in Tent), default=0))
        dTt = max(0, max((_entry_tdeg(e) for e in Tent), default=0))
        d_out = dv + dTx
        t_out = tv + dTt
        mag_out = mag_v * max(1, max((sum(_l1(T.rows[o][j]) for j in C) for o in range(T.nrows)), default=1)) \
            if isinstance(dom, Integers) else None
    else:
        d_out, t_out, mag_out = dv, tv, mag_v
    dX = max(dv, d_out) if want_v else d_out
    dT = max(tv, t_out) if want_v else t_out
    if not isinstance(dom, PolyPrimeField):
        dT = 0
        tv = t_out = 0
    mag = max(mag_v, mag_out or 0) if isinstance(dom, Integers) else None
    images = _Images(dom, dX, dT, mag)

    npx = dX + 1
    npt = dT + 1 if isinstance(dom, PolyPrimeField) else 1
    xs = np.arange(npx)
    ts = np.arange(npt)
    gridA = _Grid(perm_entries, dom)
    otherA = [i for i in range(A.nrows) if i not in set(rows)]
    check = config.check_residual and bool(otherA)
    if check:
        gridR = _Grid([A.rows[i][j] for i in otherA for j in C], dom)
    if T is not None:
        gridT = _Grid(Tent, dom)
        n_out = T.nrows

    results_v = []
    results_o = []
    nbad = 0
    for q in images.moduli:
        qf = float(q)
        invtab = K.inverse_table(q) if q <= 1 << 22 else np.zeros(0)
        gridA.prepare(xs, q)
        if check:
            gridR.prepare(xs, q)
        if T is not None:
            gridT.prepare(xs, q)
        vals_v = np.zeros((k + 1, npx, npt)) if want_v else None
        vals_o = np.zeros((n_out, npx, npt)) if T is not None else None
        nt_chunk = max(1, config.chunk_lanes // npx) if npt > 1 else 1
        for t_lo in range(0, npt, nt_chunk):
            tsub = ts[t_lo:t_lo + nt_chunk]
            tpts = tsub if npt > 1 else None
            nt = len(tsub)
            lanes = npx * nt
            B = gridA.lanes(tpts, q).reshape(k, k + 1, lanes)
            Vp = np.empty((k + 1, lanes))
            bad = np.zeros(lanes, dtype=np.bool_)
            K.batched_cramer(B, qf, invtab, rptr, ridx, cptr, cidx, Vp, bad)
            idx = np.flatnonzero(bad)
            if len(idx):
                Vb = np.empty((k + 1, len(idx)))
                K.cramer_lanes(gridA.at(idx, tpts, q).reshape(k, k + 1, len(idx)), qf, Vb)
                Vp[:, idx] = Vb
            nbad += int(bad.sum())
            # undo the column permutation and apply the sign
            V = np.empty_like(Vp)
            for j in range(k):
                V[qcol[j]] = Vp[j]
            V[k] = Vp[k]
            if sgn < 0:
                V = np.mod(qf - V, qf)
            if check:
                vr = gridR.lanes(tpts, q).reshape(len(otherA), k + 1, lanes)
                if not K.residual_lanes(vr, V, qf):
                    raise LinalgError("residual check failed: rank profile was misdetected")
            if want_v:
                vals_v[:, :, t_lo:t_lo + nt] = V.reshape(k + 1, npx, nt)
            if T is not None:
                tv_ = gridT.lanes(tpts, q).reshape(n_out, k + 1, lanes)
                o = np.empty((n_out, lanes))
                K.matvec_lanes(tv_, V, qf, o)
                vals_o[:, :, t_lo:t_lo + nt] = o.reshape(n_out, npx, nt)
        Wx = K.inv_vandermonde(npx, qf)
        Wt = K.inv_vandermonde(npt, qf) if npt > 1 else None
        if want_v:
            results_v.append(_interpolate(vals_v, Wx, Wt, q, dv, tv))
        if T is not None:
            results_o.append(_interpolate(vals_o, Wx, Wt, q, d_out, t_out))

    res = EngineResult(rows=rows, pivots=piv, c0=c0, stats={"bad_lanes": nbad, "moduli": len(images.moduli),
                                                            "points": npx * npt})
    if want_v:
        coeffs = _lift(dom, results_v, images.moduli)
        vs = _to_polys(dom, coeffs, k + 1, dv)
        v = [UniPoly(dom) for _ in range(m)]
        for j, c in enumerate(C):
            v[c] = vs[j]
        res.v = v
    if T is not None:
        coeffs = _lift(dom, results_o, images.moduli)
        if return_arrays and not isinstance(dom, Integers):
            res.arrays = coeffs
        else:
            res.out = _to_polys(dom, coeffs, n_out, d_out)
    return res


def _interpolate(vals: np.ndarray, Wx: np.ndarray, Wt, q: int, dx: int, dt: int) -> np.ndarray:
    nv, npx, npt = vals.shape
    st = np.ascontiguousarray(vals.transpose(1, 0, 2)).reshape(npx, nv * npt)
    cx = K.matmul_mod(Wx, st, q).reshape(npx, nv, npt).transpose(1, 0, 2)
    if Wt is not None:
        cx = K.matmul_mod(np.ascontiguousarray(cx).reshape(nv * npx, npt), Wt.T, q).reshape(nv, npx, npt)
    return np.ascontiguousarray(cx[:, :dx + 1, :dt + 1 if Wt is not None else 1])


def _lift(dom, results: list[np.ndarray], moduli: list[int]):
    if not isinstance(dom, Integers):
        arr = results[0].astype(np.int64)
        return arr if isinstance(dom, PolyPrimeField) else arr[:, :, 0]
    nv, dx1, _ = results[0].shape
    stack = np.stack([r[:, :, 0].reshape(-1) for r in results])
    ints = garner(stack, moduli)
    return [ints[o * dx1:(o + 1) * dx1] for o in range(nv)]
