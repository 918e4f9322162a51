"""Exact and precision-tracked linear algebra over Z, Z/ell^M and Q_ell.

Every elimination here pivots on an entry of minimal ell-adic valuation, so
multipliers stay integral and the only digits lost are the ones carried by
the pivots themselves.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .padic import PadicNumber, PrecisionContext, vint


class SingularSystem(ArithmeticError):
    pass


def int_det(rows) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def frac_det(rows) -> Fraction:
    """Determinant of a rational matrix (Gaussian elimination over Q)."""
    a = [[Fraction(x) for x in r] for r in rows]
    n, det = len(a), Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def leibniz_det(rows, zero):
    """Determinant by the permutation expansion; an oracle for small matrices."""
    n = len(rows)
    total = zero
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = None
        for i, j in enumerate(perm):
            term = rows[i][j] if term is None else term * rows[i][j]
        if term is None:
            term = zero + 1
        total = total - term if inv % 2 else total + term
    return total


def _pval(x: PadicNumber):
    return None if x.valuation is None else x.valuation


def padic_det(rows, ctx: PrecisionContext) -> PadicNumber:
    """Determinant of a square matrix of PadicNumbers, minimal-valuation pivoting."""
    a = [[ctx(x) for x in r] for r in rows]
    n = len(a)
    if n == 0:
        return ctx.one()
    det = ctx.one()
    cols = list(range(n))
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in cols:
                v = _pval(a[i][j])
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            # all remaining entries vanish to their known precision
            floor = min(a[i][j].absprec for i in range(k, n) for j in cols)
            rest = ctx.zero() if floor == float("inf") else PadicNumber(ctx, None, 0, floor)
            return det * rest ** (n - k)
        _, i, j = best
        if i != k:
            a[k], a[i] = a[i], a[k]
            det = -det
        # moving column j into position k is a sign change iff an odd number of
        # still-unused columns precede it
        pos = cols.index(j)
        if pos % 2:
            det = -det
        cols.remove(j)
        piv = a[k][j]
        det = det * piv
        inv = piv.inverse()
        for r in range(k + 1, n):
            if a[r][j].valuation is None:
                continue
            f = a[r][j] * inv
            for c in cols:
                a[r][c] = a[r][c] - f * a[k][c]
            a[r][j] = ctx.zero()
    return det


def solve(A, b, ctx: PrecisionContext):
    """Solve ``A x = b`` for an m-by-k system of full column rank at precision.

    Over-determined systems are allowed; the returned residuals are the
    right-hand entries of the rows left after elimination and should vanish
    for a consistent system.
    """
    m = len(A)
    k = len(A[0]) if m else 0
    a = [[ctx(x) for x in row] + [ctx(bi)] for row, bi in zip(A, b)]
    cols = list(range(k))
    order = []
    for step in range(k):
        best = None
        for i in range(step, m):
            for j in cols:
                v = _pval(a[i][j])
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            raise SingularSystem(f"rank {step} < {k} at precision")
        _, i, j = best
        a[step], a[i] = a[i], a[step]
        cols.remove(j)
        order.append(j)
        inv = a[step][j].inverse()
        for r in range(m):
            if r == step or a[r][j].valuation is None:
                continue
            f = a[r][j] * inv
            for c in cols + [k]:
                a[r][c] = a[r][c] - f * a[step][c]
            a[r][j] = ctx.zero()
    x = [None] * k
    for step, j in enumerate(order):
        x[j] = a[step][k] / a[step][j]
    residuals = [a[i][k] for i in range(k, m)]
    return x, residuals


def modular_echelon(rows, ell: int, M: int):
    """Row-reduce an integer matrix over Z/ell^M with a tracked transform.

    Returns ``(T, rank, pivot_valuations)``: ``T`` is invertible modulo ell and
    rows ``T[rank:]`` annihilate the input modulo ell^M, i.e. they form a
    saturated basis of its left kernel there.
    """
    q = ell**M
    k = len(rows)
    a = [[x % q for x in r] for r in rows]
    T = [[int(i == j) for j in range(k)] for i in range(k)]
    ncols = len(a[0]) if k else 0
    vals = []
    r = 0
    while r < k:
        best = None
        for i in range(r, k):
            for j in range(ncols):
                if a[i][j]:
                    v = vint(a[i][j], ell)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        a[r], a[i] = a[i], a[r]
        T[r], T[i] = T[i], T[r]
        mv = ell ** (M - v)
        uinv = pow(a[r][j] // ell**v, -1, mv)
        for i2 in range(r + 1, k):
            if a[i2][j]:
                f = (a[i2][j] // ell**v) * uinv % mv
                if 2 * f > mv:
                    f -= mv
                a[i2] = [(x - f * y) % q for x, y in zip(a[i2], a[r])]
                T[i2] = [(x - f * y) % q for x, y in zip(T[i2], T[r])]
        vals.append(v)
        r += 1
    return T, r, vals
