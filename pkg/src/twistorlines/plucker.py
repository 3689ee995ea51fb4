"""Line geometry on the Klein quadric: incidence, the induced involution, transversals, quadrics.

The involution on Pluecker vectors is the one induced by ``j_point`` on
spanning pairs; with the minors taken as ``pij = a_i b_j - a_j b_i`` it reads
``(p01, p02, p03, p12, p13, p23) -> conj(p01, p13, -p12, -p03, p02, p23)``.
"""
from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import exactla
from .geometry import (
    LineP3,
    PluckerVec,
    ProjPoint3,
    _second_singular,
    incidence_form,
    klein_form,
    line_from_plucker,
    proj_equal,
)
from .polyring import PolyForm, monomial_restrictions
from .scalars import APPROX_TOL, GR, gaussian_sqrt, is_zero

__all__ = [
    "plucker_of",
    "incidence",
    "lines_meet",
    "j_plucker",
    "is_twistor",
    "twistor_margin",
    "TransversalResult",
    "transversals",
    "common_transversals",
    "quadric_through_three",
    "quadric_matrix",
    "is_smooth_quadric",
    "ruling_lines_at",
    "line_through_meeting",
]

log = logging.getLogger(__name__)


def _pv(x) -> PluckerVec:
    if isinstance(x, PluckerVec):
        return x
    if isinstance(x, LineP3):
        return x.plucker
    return PluckerVec(tuple(x))


def plucker_of(line: LineP3) -> PluckerVec:
    return line.plucker


def incidence(p, q):
    """Polarized Klein form; zero iff the two lines meet."""
    return incidence_form(_pv(p).p, _pv(q).p)


def lines_meet(p, q, tol: float = APPROX_TOL) -> bool:
    p, q = _pv(p), _pv(q)
    w = incidence(p, q)
    if p.exact and q.exact:
        return bool(w == 0)
    return bool(abs(w) / (np.linalg.norm(p.to_complex()) * np.linalg.norm(q.to_complex())) < tol)


def j_plucker(t) -> PluckerVec:
    p = _pv(t).p
    p01, p02, p03, p12, p13, p23 = (x.conjugate() for x in p)
    return PluckerVec((p01, p13, -p12, -p03, p02, p23))


def twistor_margin(t) -> float:
    """Second singular value of the row-normalized stack ``[t; j(t)]``."""
    p = _pv(t)
    return _second_singular(p.p, j_plucker(p).p)


def is_twistor(line, tol: float = APPROX_TOL) -> bool:
    p = _pv(line)
    return proj_equal(p.p, j_plucker(p).p, tol)


# transversals ---------------------------------------------------------------

@dataclass(frozen=True)
class TransversalResult:
    """Common transversals of a set of pairwise disjoint lines.

    ``kind`` is ``"finite"`` (then ``lines`` holds 0, 1 or 2 lines) or
    ``"infinite"`` (then ``witness`` is a basis of the linear space of
    Pluecker vectors meeting every input line).  ``discriminant`` is the
    discriminant of the Klein form restricted to a 2-dimensional kernel, or
    ``None`` when the kernel has another dimension.
    """

    kind: str
    lines: tuple = ()
    discriminant: object = None
    kernel_dim: int = 0
    witness: tuple = field(default=(), repr=False)

    @property
    def count(self):
        return len(self.lines) if self.kind == "finite" else float("inf")

    @property
    def infinite(self) -> bool:
        return self.kind == "infinite"

    def to_json(self) -> dict:
        from .scalars import scalar_to_json

        out = {"kind": self.kind, "kernel_dim": self.kernel_dim}
        if self.kind == "finite":
            out["count"] = len(self.lines)
            out["lines"] = [L.to_json() for L in self.lines]
        out["discriminant"] = None if self.discriminant is None else scalar_to_json(self.discriminant)
        return out


def _incidence_row(p):
    p01, p02, p03, p12, p13, p23 = p
    return (p23, -p13, p12, p03, -p02, p01)


def _kernel(rows, exact_mode: bool) -> list:
    if exact_mode:
        return exactla.nullspace(rows, 6)
    m = np.array([[complex(x) for x in r] for r in rows])
    m /= np.linalg.norm(m, axis=1, keepdims=True)
    _, s, vh = np.linalg.svd(m)
    rank = int(np.sum(s > APPROX_TOL * max(1.0, s[0])))
    return [tuple(v) for v in vh[rank:].conj()]


def _check_disjoint(lines):
    for L1, L2 in combinations(lines, 2):
        if lines_meet(L1, L2):
            raise ValueError("input lines must be pairwise disjoint")


def _quadratic_roots(a, b, c, exact_mode: bool):
    """Projective roots ``(lam, mu)`` of ``a lam^2 + b lam mu + c mu^2`` and its discriminant."""
    disc = b * b - 4 * a * c
    if exact_mode:
        root = gaussian_sqrt(disc)
        zero = disc == 0
    else:
        root = None
        zero = is_zero(disc, APPROX_TOL * max(1.0, abs(b) ** 2, abs(a * c)))
    if root is None:
        root = cmath.sqrt(complex(disc))
    if is_zero(a, 0.0 if exact_mode else APPROX_TOL):
        # mu * (b lam + c mu) = 0
        if is_zero(b, 0.0 if exact_mode else APPROX_TOL):
            return [(1, 0)], disc
        return [(1, 0), (-c, b)], disc
    if zero:
        return [(-b / (2 * a), 1)], disc
    return [((-b + root) / (2 * a), 1), ((-b - root) / (2 * a), 1)], disc


def transversals(lines) -> TransversalResult:
    """All lines meeting every input line (at least four, pairwise disjoint).

    The kernel of the incidence rows is the linear space of 6-vectors
    pairing to zero with each input; transversals are its points on the
    Klein quadric.  A 2-dimensional kernel gives a binary quadratic with 1
    or 2 roots, a 1-dimensional one gives 0 or 1 line, and anything larger
    (or an identically vanishing quadratic) gives infinitely many.
    """
    lines = list(lines)
    if len(lines) < 4:
        return common_transversals(lines)
    _check_disjoint(lines)
    ps = [_pv(L) for L in lines]
    exact_mode = all(p.exact for p in ps)
    K = _kernel([_incidence_row(p.p) for p in ps], exact_mode)
    dim = len(K)
    if dim == 1:
        v = K[0]
        on = klein_form(v) == 0 if exact_mode else abs(klein_form(v)) < APPROX_TOL * np.linalg.norm(np.array(v, dtype=complex)) ** 2
        found = (line_from_plucker(v),) if on else ()
        return TransversalResult("finite", found, None, 1, tuple(K))
    if dim == 2:
        u, v = K
        a, b, c = klein_form(u), incidence_form(u, v), klein_form(v)
        tol = 0.0 if exact_mode else APPROX_TOL
        if all(is_zero(x, tol) for x in (a, b, c)):
            return TransversalResult("infinite", (), GR(0) if exact_mode else 0j, 2, tuple(K))
        roots, disc = _quadratic_roots(a, b, c, exact_mode)
        found = tuple(line_from_plucker(tuple(lam * x + mu * y for x, y in zip(u, v))) for lam, mu in roots)
        return TransversalResult("finite", found, disc, 2, tuple(K))
    return TransversalResult("infinite", (), None, dim, tuple(K))


def common_transversals(lines) -> TransversalResult:
    """Fewer than four lines always have infinitely many transversals."""
    lines = list(lines)
    if len(lines) >= 4:
        return transversals(lines)
    _check_disjoint(lines)
    ps = [_pv(L) for L in lines]
    exact_mode = all(p.exact for p in ps)
    K = _kernel([_incidence_row(p.p) for p in ps], exact_mode) if ps else []
    return TransversalResult("infinite", (), None, len(K) if ps else 6, tuple(K))


# quadrics -------------------------------------------------------------------

def _line_rows(d: int, line: LineP3) -> list:
    R = monomial_restrictions(d, line.a.z, line.b.z)
    return [[r[m] for r in R] for m in range(d + 1)]


def quadric_through_three(L1: LineP3, L2: LineP3, L3: LineP3) -> PolyForm:
    """The unique quadric containing three pairwise disjoint lines."""
    lines = (L1, L2, L3)
    _check_disjoint(lines)
    rows = [r for L in lines for r in _line_rows(2, L)]
    if all(L.exact for L in lines):
        basis = exactla.nullspace(rows, 10)
        if len(basis) != 1:
            raise ValueError(f"quadrics through the lines form a space of dimension {len(basis)}, expected 1")
        return PolyForm(2, tuple(basis[0]))
    m = np.array([[complex(x) for x in r] for r in rows])
    _, s, vh = np.linalg.svd(m)
    if s[-1] > APPROX_TOL * s[0]:
        raise ValueError("quadric through the lines is not unique")
    return PolyForm(2, tuple(vh[-1].conj()))


def quadric_matrix(Q: PolyForm) -> list:
    """Symmetric ``A`` with ``Q(z) = z^T A z``."""
    if Q.degree != 2 or Q.nvars != 4:
        raise ValueError("not a quadric in CP^3")
    half = GR(1, 0) / 2 if Q.exact else 0.5
    A = [[None] * 4 for _ in range(4)]
    for i in range(4):
        for k in range(4):
            alpha = tuple((m == i) + (m == k) for m in range(4))
            c = Q.coeff(alpha)
            A[i][k] = c if i == k else c * half
    return A


def is_smooth_quadric(Q: PolyForm, tol: float = APPROX_TOL) -> bool:
    A = quadric_matrix(Q)
    if Q.exact:
        return exactla.det(A) != 0
    m = np.array(A, dtype=complex)
    s = np.linalg.svd(m, compute_uv=False)
    return s[-1] > tol * s[0]


def _bilinear(Q: PolyForm, u, v):
    return (Q.evaluate(tuple(x + y for x, y in zip(u, v))) - Q.evaluate(u) - Q.evaluate(v)) / 2


def ruling_lines_at(Q: PolyForm, x) -> tuple[LineP3, LineP3]:
    """The two lines of a smooth quadric through its point ``x``.

    On the tangent plane at ``x`` the quadric is a pair of lines through
    ``x``; writing points of the plane as ``alpha x + beta u + gamma v`` the
    conic is ``Q(beta u + gamma v)``, a binary quadratic in ``(beta, gamma)``.
    """
    x = x if isinstance(x, ProjPoint3) else ProjPoint3(tuple(x))
    exact_mode = Q.exact and x.exact
    if not is_smooth_quadric(Q):
        raise ValueError("quadric is singular")
    if not is_zero(Q.evaluate(x.z), 0.0 if exact_mode else APPROX_TOL):
        raise ValueError("point is not on the quadric")
    grad = [g.evaluate(x.z) for g in Q.partials()]
    if exact_mode:
        plane = exactla.nullspace([grad], 4)
    else:
        _, _, vh = np.linalg.svd(np.array([grad], dtype=complex))
        plane = [tuple(r) for r in vh[1:].conj()]
    u = v = None
    for w1, w2 in combinations(plane, 2):
        if _independent3(x.z, w1, w2, exact_mode):
            u, v = w1, w2
            break
    if u is None:
        raise ArithmeticError("tangent plane basis degenerate")
    a, b, c = Q.evaluate(u), 2 * _bilinear(Q, u, v), Q.evaluate(v)
    roots, _ = _quadratic_roots(a, b, c, exact_mode)
    if len(roots) != 2:
        raise ArithmeticError("tangent conic is a double line; quadric is not smooth")
    out = []
    for beta, gamma in roots:
        y = tuple(beta * p + gamma * q for p, q in zip(u, v))
        out.append(LineP3(x, ProjPoint3(y)))
    return out[0], out[1]


def _independent3(a, b, c, exact_mode: bool) -> bool:
    if exact_mode:
        return exactla.rank([a, b, c], 4).rank == 3
    m = np.array([a, b, c], dtype=complex)
    m /= np.linalg.norm(m, axis=1, keepdims=True)
    return np.linalg.svd(m, compute_uv=False)[2] > 1e-6


def line_through_meeting(x, L2: LineP3, L3: LineP3) -> LineP3:
    """The line through ``x`` meeting both ``L2`` and ``L3`` (``x`` on neither)."""
    x = x if isinstance(x, ProjPoint3) else ProjPoint3(tuple(x))
    if L2.contains_point(x) or L3.contains_point(x):
        raise ValueError("point lies on one of the lines")
    exact_mode = x.exact and L2.exact and L3.exact
    if exact_mode:
        (n,) = exactla.nullspace([x.z, L2.a.z, L2.b.z], 4)
    else:
        m = np.array([x.z, L2.a.z, L2.b.z], dtype=complex)
        n = tuple(np.linalg.svd(m)[2][-1].conj())
    dot = lambda p: sum(ni * pi for ni, pi in zip(n, p))  # noqa: E731
    na, nb = dot(L3.a.z), dot(L3.b.z)
    y = tuple(nb * p - na * q for p, q in zip(L3.a.z, L3.b.z))
    return LineP3(x, ProjPoint3(y))

