"""Exact linear algebra over the Gaussian rationals.

Matrices are first scaled row by row to Gaussian integers (pairs of Python
ints), then reduced fraction-free.  Rank has a fast certificate: reduction
modulo a prime ``p = 1 (mod 4)`` (sending ``i`` to a square root of -1) can
only lower the rank, so a modular rank equal to ``min(rows, cols)`` is the
exact rank.  Anything short of that falls through to Bareiss elimination.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

import numpy as np

from .scalars import GR, exact

__all__ = ["RankResult", "rank", "nullspace", "det", "to_gaussian_int_rows"]

# (p, sqrt(-1) mod p), p = 1 mod 4 and p < 2**31 so int64 products cannot overflow
_PRIMES = ((2147483629, 1518275076), (2147483549, 895500278))


@dataclass(frozen=True)
class RankResult:
    rank: int
    method: str  # "modular-certificate" | "bareiss" | "empty"


def to_gaussian_int_rows(matrix) -> list[tuple[list[int], list[int]]]:
    """Scale each row by the lcm of its denominators; rows become ``(re, im)`` int lists."""
    out = []
    for row in matrix:
        row = [exact(x) for x in row]
        den = 1
        for x in row:
            den = lcm(den, x.re.denominator, x.im.denominator)
        re = [int(x.re * den) for x in row]
        im = [int(x.im * den) for x in row]
        out.append((re, im))
    return out


def _modular_rank(rows, ncols: int, p: int, s: int) -> int:
    if not rows:
        return 0
    m = np.array([[(a + b * s) % p for a, b in zip(re, im)] for re, im in rows], dtype=np.int64)
    r = 0
    nrows = m.shape[0]
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        below = m[r + 1:, c].copy()
        if below.any():
            m[r + 1:] = (m[r + 1:] - below[:, None] * m[r][None, :]) % p
        r += 1
    return r


def _gdiv(a: int, b: int, qr: int, qi: int, nq: int) -> tuple[int, int]:
    """Exact division ``(a + b i) / (qr + qi i)`` with ``nq = qr^2 + qi^2``."""
    x, rx = divmod(a * qr + b * qi, nq)
    y, ry = divmod(b * qr - a * qi, nq)
    if rx or ry:
        raise ArithmeticError("inexact Gaussian-integer division in Bareiss step")
    return x, y


def _fraction_free(rows, ncols: int, jordan: bool):
    """Fraction-free (Bareiss) elimination; Gauss-Jordan form when ``jordan``.

    Returns ``(rows, pivot_columns, last_pivot, swaps)``.  In Jordan form every
    pivot equals ``last_pivot`` and entries stay Gaussian integers.
    """
    rows = [(list(re), list(im)) for re, im in rows]
    nrows = len(rows)
    prev = (1, 0)
    pivots: list[int] = []
    swaps = 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][0][c] or rows[i][1][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            swaps += 1
        pre, pim = rows[r]
        pr, pi = pre[c], pim[c]
        qr, qi = prev
        nq = qr * qr + qi * qi
        targets = range(nrows) if jordan else range(r + 1, nrows)
        for k in targets:
            if k == r:
                continue
            kre, kim = rows[k]
            fr, fi = kre[c], kim[c]
            new_re = [0] * ncols
            new_im = [0] * ncols
            for col in range(ncols):
                xr, xi = kre[col], kim[col]
                yr, yi = pre[col], pim[col]
                a = pr * xr - pi * xi - fr * yr + fi * yi
                b = pr * xi + pi * xr - fr * yi - fi * yr
                if a or b:
                    if qi == 0:
                        if qr != 1:
                            a, ra = divmod(a, qr)
                            b, rb = divmod(b, qr)
                            if ra or rb:
                                raise ArithmeticError("inexact division in Bareiss step")
                    else:
                        a, b = _gdiv(a, b, qr, qi, nq)
                new_re[col] = a
                new_im[col] = b
            rows[k] = (new_re, new_im)
        prev = (pr, pi)
        pivots.append(c)
        r += 1
    return rows, pivots, prev, swaps


def rank(matrix, ncols: int | None = None) -> RankResult:
    """Exact rank of a matrix of exact scalars."""
    matrix = list(matrix)
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if not matrix or ncols == 0:
        return RankResult(0, "empty")
    rows = to_gaussian_int_rows(matrix)
    full = min(len(rows), ncols)
    best = 0
    for p, s in _PRIMES:
        best = max(best, _modular_rank(rows, ncols, p, s))
        if best == full:
            return RankResult(best, "modular-certificate")
    _, pivots, _, _ = _fraction_free(rows, ncols, jordan=False)
    return RankResult(len(pivots), "bareiss")


def nullspace(matrix, ncols: int | None = None) -> list[list[GR]]:
    """A basis of the right kernel, with Gaussian-integer entries.

    With fraction-free Gauss-Jordan form (all pivots equal to ``D``), the
    vector for free column ``f`` has ``D`` at ``f`` and ``-R[row, f]`` at each
    pivot column.
    """
    matrix = list(matrix)
    if ncols is None:
        ncols = len(matrix[0])
    if not matrix:
        return [[GR(1) if i == k else GR(0) for i in range(ncols)] for k in range(ncols)]
    rows, pivots, (dr, di), _ = _fraction_free(to_gaussian_int_rows(matrix), ncols, jordan=True)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [GR(0)] * ncols
        v[f] = GR(dr, di)
        for r, c in enumerate(pivots):
            re, im = rows[r]
            v[c] = GR(-re[f], -im[f])
        basis.append(_primitive(v))
    return basis


def _primitive(v: list[GR]) -> list[GR]:
    """Divide out the common integer content."""
    g = 0
    for x in v:
        g = gcd(g, x.re.numerator, x.im.numerator)
    if g > 1:
        v = [GR(x.re / g, x.im / g) for x in v]
    return v


def det(matrix) -> GR:
    """Exact determinant of a square matrix."""
    matrix = list(matrix)
    n = len(matrix)
    if n == 0:
        return GR(1)
    scaled = to_gaussian_int_rows(matrix)
    scale = GR(1)
    for row, (re, im) in zip(matrix, scaled):
        den = None
        for x, a, b in zip(row, re, im):
            x = exact(x)
            if x != 0:
                den = (GR(a, b) / x)
                break
        if den is None:
            return GR(0)
        scale = scale * den
    rows, pivots, (dr, di), swaps = _fraction_free(scaled, n, jordan=False)
    if len(pivots) < n:
        return GR(0)
    value = GR(dr, di) / scale
    return -value if swaps % 2 else value

