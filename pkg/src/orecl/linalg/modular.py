"""Word-size modular kernels (float64 arithmetic, exact for moduli below 2**26).

All residues are stored as float64 in [0, q).  A product of two residues is
below 2**52 and therefore exact; reductions use ``t - q*floor(t/q)`` with a
single correction step.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MAX_MODULUS = 2**26


@njit(cache=True, inline="always")
def _red(t, q, qinv):
    t -= q * np.floor(t * qinv)
    if t < 0.0:
        t += q
    elif t >= q:
        t -= q
    return t


@njit(cache=True)
def inv_mod(a, q):
    a = int(a) % int(q)
    if a == 0:
        return 0
    r0, r1 = int(q), a
    s0, s1 = 0, 1
    while r1:
        k = r0 // r1
        r0, r1 = r1, r0 - k * r1
        s0, s1 = s1, s0 - k * s1
    return s0 % int(q)


def inverse_table(q: int) -> np.ndarray:
    """Inverses of 0..q-1 (with 0 -> 0) for small moduli."""
    return _inv_table(q)


@njit(cache=True)
def _inv_table(q):
    tab = np.zeros(q, dtype=np.float64)
    tab[1] = 1.0
    for a in range(2, q):
        # inv(a) = -(q // a) * inv(q mod a)
        tab[a] = ((q - q // a) * int(tab[q % a])) % q
    return tab


@njit(cache=True)
def batched_cramer(B, q, invtab, rptr, ridx, cptr, cidx, V, bad):
    """Cramer vectors of k x (k+1) matrices, one per lane.

    ``B[:, :, pt]`` is the matrix at lane ``pt``; the output ``V[:, pt]`` is
    ``(det(A_{1|0}), ..., det(A_{1|k-1}), -det(A_1))`` where ``A_1`` is the
    leading k x k block and ``A_{1|i}`` has column i replaced by column k.
    Elimination follows the structural pattern (rows ``ridx[rptr[i]:rptr[i+1]]``
    below step i, columns ``cidx[cptr[i]:cptr[i+1]]`` right of it) without
    pivoting; lanes meeting a zero pivot are flagged in ``bad``.
    """
    k = B.shape[0]
    P = B.shape[2]
    qinv = 1.0 / q
    use_tab = invtab.shape[0] == int(q)
    invs = np.empty((k, P))
    f = np.empty(P)
    for pt in range(P):
        bad[pt] = False
    for i in range(k):
        for pt in range(P):
            pv = B[i, i, pt]
            if pv == 0.0:
                bad[pt] = True
                invs[i, pt] = 0.0
            elif use_tab:
                invs[i, pt] = invtab[int(pv)]
            else:
                invs[i, pt] = inv_mod(pv, q)
        for a in range(rptr[i], rptr[i + 1]):
            r = ridx[a]
            for pt in range(P):
                f[pt] = _red(B[r, i, pt] * invs[i, pt], q, qinv)
            for b in range(cptr[i], cptr[i + 1]):
                c = cidx[b]
                for pt in range(P):
                    B[r, c, pt] = _red(B[r, c, pt] - f[pt] * B[i, c, pt], q, qinv)
    # back substitution: y solves A_1 y = col_k; V_i = det * y_i
    y = np.zeros((k, P))
    det = np.ones(P)
    for i in range(k - 1, -1, -1):
        for pt in range(P):
            y[i, pt] = B[i, k, pt]
        for b in range(cptr[i], cptr[i + 1]):
            c = cidx[b]
            if c < k:
                for pt in range(P):
                    y[i, pt] = _red(y[i, pt] - B[i, c, pt] * y[c, pt], q, qinv)
        for pt in range(P):
            y[i, pt] = _red(y[i, pt] * invs[i, pt], q, qinv)
            det[pt] = _red(det[pt] * B[i, i, pt], q, qinv)
    for i in range(k):
        for pt in range(P):
            V[i, pt] = _red(det[pt] * y[i, pt], q, qinv)
    for pt in range(P):
        V[k, pt] = _red(q - det[pt], q, qinv)


@njit(cache=True)
def cramer_scalar(M, q):
    """Cramer vector of one k x (k+1) matrix, valid for any rank.

    Computes v = (-1)^(k-1) w with w_j = (-1)^j det(M without column j).
    """
    k = M.shape[0]
    A = M.copy()
    qinv = 1.0 / q
    v = np.zeros(k + 1)
    piv_col = np.full(k, -1, dtype=np.int64)
    sign = 1
    row = 0
    free = -1
    nfree = 0
    dprod = 1.0
    for c in range(k + 1):
        if row == k:
            if free < 0:
                free = c
            nfree += 1
            continue
        sel = -1
        for r in range(row, k):
            if A[r, c] != 0.0:
                sel = r
                break
        if sel < 0:
            if free < 0:
                free = c
            nfree += 1
            continue
        if sel != row:
            for cc in range(k + 1):
                tmp = A[row, cc]
                A[row, cc] = A[sel, cc]
                A[sel, cc] = tmp
            sign = -sign
        inv = inv_mod(A[row, c], q)
        dprod = _red(dprod * A[row, c], q, qinv)
        for r in range(row + 1, k):
            if A[r, c] != 0.0:
                fct = _red(A[r, c] * inv, q, qinv)
                for cc in range(c, k + 1):
                    A[r, cc] = _red(A[r, cc] - fct * A[row, cc], q, qinv)
        piv_col[row] = c
        row += 1
    if row < k or nfree != 1:
        return v
    u = np.zeros(k + 1)
    u[free] = 1.0
    for r in range(k - 1, -1, -1):
        c = piv_col[r]
        s = 0.0
        for cc in range(c + 1, k + 1):
            s = _red(s + A[r, cc] * u[cc], q, qinv)
        u[c] = _red((q - s) * inv_mod(A[r, c], q), q, qinv)
    # lambda = w_free = (-1)^free det(M without free) = (-1)^free * sign * dprod
    lam = dprod
    e = (free + (k - 1)) % 2
    if (sign < 0) != (e == 1):
        lam = _red(q - lam, q, qinv)
    for j in range(k + 1):
        v[j] = _red(lam * u[j], q, qinv)
    return v


@njit(cache=True)
def cramer_lanes(B, q, V):
    """cramer_scalar on every lane of B (k, k+1, P) into V (k+1, P)."""
    for pt in range(B.shape[2]):
        V[:, pt] = cramer_scalar(np.ascontiguousarray(B[:, :, pt]), q)


@njit(cache=True)
def profile_at(M, q):
    """Row rank profile (mask) and leading columns of M over GF(q)."""
    n, m = M.shape
    qinv = 1.0 / q
    basis = np.zeros((min(n, m), m))
    owner = np.full(m, -1, dtype=np.int64)
    rows = np.zeros(n, dtype=np.bool_)
    nb = 0
    v = np.empty(m)
    for i in range(n):
        for c in range(m):
            v[c] = M[i, c]
        c = 0
        added = False
        while c < m:
            if v[c] == 0.0:
                c += 1
                continue
            b = owner[c]
            if b < 0:
                inv = inv_mod(v[c], q)
                for cc in range(c, m):
                    basis[nb, cc] = _red(v[cc] * inv, q, qinv)
                owner[c] = nb
                nb += 1
                added = True
                break
            fct = v[c]
            for cc in range(c, m):
                v[cc] = _red(v[cc] - fct * basis[b, cc], q, qinv)
            c += 1
        rows[i] = added
        if nb == m:
            break
    cols = np.zeros(m, dtype=np.bool_)
    for c in range(m):
        cols[c] = owner[c] >= 0
    return rows, cols


@njit(cache=True)
def inv_vandermonde(n, q):
    """W with W[i, j] = coefficient of x^i in the Lagrange basis polynomial of node j (nodes 0..n-1)."""
    qinv = 1.0 / q
    # master polynomial prod (x - j)
    Mp = np.zeros(n + 1)
    Mp[0] = 1.0
    for j in range(n):
        for i in range(j + 1, 0, -1):
            Mp[i] = _red(Mp[i - 1] - j * Mp[i], q, qinv)
        Mp[0] = _red(-j * Mp[0] + q, q, qinv)
    W = np.zeros((n, n))
    quo = np.zeros(n)
    for j in range(n):
        # quo = Mp / (x - j) by synthetic division
        acc = 0.0
        for i in range(n, 0, -1):
            acc = _red(Mp[i] + acc * j, q, qinv)
            quo[i - 1] = acc
        den = 1.0
        for i in range(n):
            if i != j:
                den = _red(den * ((j - i) % q), q, qinv)
        dinv = inv_mod(den, q)
        for i in range(n):
            W[i, j] = _red(quo[i] * dinv, q, qinv)
    return W


def vandermonde(points: np.ndarray, ncols: int, q: int) -> np.ndarray:
    """V[i, j] = points[i]^j mod q."""
    V = np.ones((len(points), ncols), dtype=np.float64)
    p = np.asarray(points, dtype=np.float64) % q
    for j in range(1, ncols):
        V[:, j] = np.mod(V[:, j - 1] * p, q)
    return V


@njit(cache=True)
def _mod_flat(a, q):
    qinv = 1.0 / q
    for i in range(a.size):
        a[i] = _red(a[i], q, qinv)


def mod_array(a: np.ndarray, q) -> np.ndarray:
    """Reduce a float64 array of exact integers below 2**53 into [0, q), in place when contiguous."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    _mod_flat(a.reshape(-1), float(q))
    return a


def matmul_mod(A: np.ndarray, B: np.ndarray, q: int) -> np.ndarray:
    """(A @ B) mod q for float64 residue arrays, splitting when sums could overflow.

    B may carry leading batch dimensions, which broadcast as in ``np.matmul``.
    """
    L = A.shape[-1]
    if L == 0:
        return np.zeros(np.broadcast_shapes(A.shape[:-1], B.shape[:-2] + (1,)) + B.shape[-1:])
    if L * float(q - 1) ** 2 < 2.0**53:
        return mod_array(A @ B, q)
    # split A into 13-bit halves
    hi = np.floor(A / 8192.0)
    lo = A - hi * 8192.0
    if L * 8192.0 * (q - 1) >= 2.0**53:
        # chunk the inner dimension
        step = max(1, int(2.0**53 // (8192.0 * (q - 1))))
        acc = None
        for s in range(0, L, step):
            part = matmul_mod(A[..., s:s + step], B[..., s:s + step, :], q)
            acc = part if acc is None else mod_array(acc + part, q)
        return acc
    ph = mod_array(hi @ B, q)
    pl = mod_array(lo @ B, q)
    return mod_array(mod_array(ph * 8192.0, q) + pl, q)


@njit(cache=True)
def matvec_lanes(T, V, q, out):
    """out[o, pt] = sum_j T[o, j, pt] * V[j, pt] mod q."""
    no, nj, P = T.shape
    qinv = 1.0 / q
    for o in range(no):
        for pt in range(P):
            out[o, pt] = 0.0
        for j in range(nj):
            for pt in range(P):
                out[o, pt] = _red(out[o, pt] + T[o, j, pt] * V[j, pt], q, qinv)


@njit(cache=True)
def residual_lanes(A, V, q):
    """True if A[:, :, pt] @ V[:, pt] == 0 for every lane."""
    n, m, P = A.shape
    qinv = 1.0 / q
    for r in range(n):
        for pt in range(P):
            s = 0.0
            for j in range(m):
                s = _red(s + A[r, j, pt] * V[j, pt], q, qinv)
            if s != 0.0:
                return False
    return True


@njit(cache=True)
def banded_echelon_kernel(M, q, order):
    """Kernel vector of a sparse-banded matrix mod q.

    Columns are processed in ``order``.  Row spans are tracked so that work
    stays proportional to the band.  Returns the canonical vector supported on
    the pivot columns and the first non-pivot column (set to q-1, i.e. -1),
    the rank, and the pivot column flags.
    """
    n, m = M.shape
    qinv = 1.0 / q
    pos = np.empty(m, dtype=np.int64)
    for a in range(m):
        pos[order[a]] = a
    # span of each row in order positions
    lo = np.full(n, m, dtype=np.int64)
    hi = np.full(n, -1, dtype=np.int64)
    for r in range(n):
        for c in range(m):
            if M[r, c] != 0.0:
                p = pos[c]
                if p < lo[r]:
                    lo[r] = p
                if p > hi[r]:
                    hi[r] = p
    used = np.zeros(n, dtype=np.bool_)
    piv_row = np.full(m, -1, dtype=np.int64)
    # rows bucketed by current leading position
    alive = np.arange(n)
    nalive = n
    rank = 0
    first_free = -1
    for a in range(m):
        c = order[a]
        best = -1
        for t in range(nalive):
            r = alive[t]
            if lo[r] == a and M[r, c] != 0.0:
                if best < 0 or hi[r] < hi[best]:
                    best = r
        if best < 0:
            if first_free < 0:
                first_free = a
            continue
        piv_row[a] = best
        used[best] = True
        rank += 1
        inv = inv_mod(M[best, c], q)
        for t in range(nalive):
            r = alive[t]
            if r == best or lo[r] != a:
                continue
            if M[r, c] == 0.0:
                continue
            fct = _red(M[r, c] * inv, q, qinv)
            h = hi[best]
            for b in range(a, h + 1):
                cc = order[b]
                if M[best, cc] != 0.0:
                    M[r, cc] = _red(M[r, cc] - fct * M[best, cc], q, qinv)
            if h > hi[r]:
                hi[r] = h
        # compact alive list and refresh leading positions
        w = 0
        for t in range(nalive):
            r = alive[t]
            if used[r]:
                continue
            if lo[r] == a:
                nl = m
                for b in range(a + 1, hi[r] + 1):
                    if M[r, order[b]] != 0.0:
                        nl = b
                        break
                lo[r] = nl
                if nl == m:
                    hi[r] = -1
                    continue
            alive[w] = r
            w += 1
        nalive = w
    v = np.zeros(m)
    piv = np.zeros(m, dtype=np.bool_)
    for a in range(m):
        piv[order[a]] = piv_row[a] >= 0
    if first_free < 0:
        return v, rank, piv
    v[order[first_free]] = q - 1.0
    for a in range(m - 1, -1, -1):
        r = piv_row[a]
        if r < 0:
            continue
        s = 0.0
        for b in range(a + 1, hi[r] + 1):
            cc = order[b]
            if M[r, cc] != 0.0 and v[cc] != 0.0:
                s = _red(s + M[r, cc] * v[cc], q, qinv)
        v[order[a]] = _red((q - s) * inv_mod(M[r, order[a]], q), q, qinv)
    return v, rank, piv
