"""Points and lines of CP^3 and their Pluecker vectors.

Pluecker coordinates are ordered ``(p01, p02, p03, p12, p13, p23)`` with
``pij = a_i b_j - a_j b_i`` for a line spanned by ``a`` and ``b``; the Klein
relation is ``p01*p23 - p02*p13 + p03*p12 = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from .scalars import (
    APPROX_TOL,
    GR,
    all_exact,
    exact,
    is_zero,
    scalar_from_json,
    scalar_to_json,
)

__all__ = [
    "PLUCKER_ORDER",
    "PLUCKER_PAIRS",
    "ProjPoint3",
    "LineP3",
    "PluckerVec",
    "proj_equal",
    "klein_form",
    "incidence_form",
    "line_from_plucker",
    "e",
]

PLUCKER_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PLUCKER_ORDER = "p01,p02,p03,p12,p13,p23"


def proj_equal(u, v, tol: float = APPROX_TOL) -> bool:
    """Whether two nonzero vectors span the same complex line.

    Exact vectors: all 2x2 minors of ``[u; v]`` vanish.  Approximate: second
    singular value of the row-normalized stack below ``tol``.
    """
    if len(u) != len(v):
        raise ValueError("length mismatch")
    if all_exact(u) and all_exact(v):
        return all(u[i] * v[k] - u[k] * v[i] == 0 for i, k in combinations(range(len(u)), 2))
    return _second_singular(u, v) < tol


def _second_singular(u, v) -> float:
    m = np.array([[complex(x) for x in u], [complex(x) for x in v]])
    m /= np.linalg.norm(m, axis=1, keepdims=True)
    return float(np.linalg.svd(m, compute_uv=False)[1])


def _first_nonzero_normalized(z):
    for x in z:
        if x != 0:
            return tuple(y / x for y in z)
    raise ValueError("zero vector")


@dataclass(frozen=True, eq=False)
class ProjPoint3:
    """A point ``[z0:z1:z2:z3]`` of CP^3, compared up to complex scale."""

    z: tuple

    def __post_init__(self):
        z = tuple(self.z)
        if len(z) != 4:
            raise ValueError("a point of CP^3 has four coordinates")
        if all(is_zero(x, 0.0) for x in z):
            raise ValueError("the zero vector is not a projective point")
        if all_exact(z):
            z = tuple(exact(x) for x in z)
        else:
            z = tuple(complex(x) for x in z)
        object.__setattr__(self, "z", z)

    @property
    def exact(self) -> bool:
        return all_exact(self.z)

    def __getitem__(self, i):
        return self.z[i]

    def __iter__(self):
        return iter(self.z)

    def __len__(self):
        return 4

    def __eq__(self, other):
        if not isinstance(other, ProjPoint3):
            return NotImplemented
        return proj_equal(self.z, other.z)

    def __hash__(self):
        if self.exact:
            return hash(_first_nonzero_normalized(self.z))
        raise TypeError("approximate points are unhashable")

    def scaled(self, c) -> "ProjPoint3":
        return ProjPoint3(tuple(c * x for x in self.z))

    def to_complex(self) -> np.ndarray:
        return np.array([complex(x) for x in self.z])

    def to_json(self):
        return [scalar_to_json(x) for x in self.z]

    @classmethod
    def from_json(cls, obj) -> "ProjPoint3":
        return cls(tuple(scalar_from_json(v) for v in obj))

    def __repr__(self):
        return "[" + ", ".join(str(x) for x in self.z) + "]"


def e(i: int) -> ProjPoint3:
    """Standard basis point ``e_i``."""
    return ProjPoint3(tuple(GR(1) if k == i else GR(0) for k in range(4)))


def klein_form(p):
    return p[0] * p[5] - p[1] * p[4] + p[2] * p[3]


def incidence_form(p, q):
    """Polarization of the Klein form; zero exactly when the two lines meet."""
    return (p[0] * q[5] + p[5] * q[0] - p[1] * q[4] - p[4] * q[1]
            + p[2] * q[3] + p[3] * q[2])


@dataclass(frozen=True, eq=False)
class PluckerVec:
    p: tuple

    def __post_init__(self):
        p = tuple(self.p)
        if len(p) != 6:
            raise ValueError("a Pluecker vector has six coordinates")
        if all(is_zero(x, 0.0) for x in p):
            raise ValueError("zero Pluecker vector")
        p = tuple(exact(x) for x in p) if all_exact(p) else tuple(complex(x) for x in p)
        object.__setattr__(self, "p", p)

    @property
    def exact(self) -> bool:
        return all_exact(self.p)

    def __getitem__(self, i):
        return self.p[i]

    def __iter__(self):
        return iter(self.p)

    def __len__(self):
        return 6

    def klein(self):
        return klein_form(self.p)

    def on_klein_quadric(self, tol: float = APPROX_TOL) -> bool:
        if self.exact:
            return self.klein() == 0
        n = np.linalg.norm(self.to_complex())
        return abs(self.klein()) / n**2 < tol

    def normalized(self) -> "PluckerVec":
        """Divide by the first nonzero coordinate (exact) or by the largest one."""
        if self.exact:
            return PluckerVec(_first_nonzero_normalized(self.p))
        v = self.to_complex()
        return PluckerVec(tuple(v / v[int(np.argmax(np.abs(v)))]))

    def unit(self) -> np.ndarray:
        """Unit 2-norm complex vector with the largest entry made real positive."""
        v = self.to_complex()
        k = int(np.argmax(np.abs(v)))
        v = v * (abs(v[k]) / v[k])
        return v / np.linalg.norm(v)

    def distance(self, other: "PluckerVec") -> float:
        """``sqrt(1 - |<u, v>|^2)`` for the unit representatives.

        Evaluated as the norm of the part of ``v`` orthogonal to ``u``, which
        keeps full relative accuracy for nearly equal lines.
        """
        u, v = self.unit(), other.unit()
        return float(min(1.0, np.linalg.norm(v - np.vdot(u, v) * u)))

    def to_complex(self) -> np.ndarray:
        return np.array([complex(x) for x in self.p])

    def __eq__(self, other):
        if not isinstance(other, PluckerVec):
            return NotImplemented
        return proj_equal(self.p, other.p)

    def __hash__(self):
        if self.exact:
            return hash(_first_nonzero_normalized(self.p))
        raise TypeError("approximate Pluecker vectors are unhashable")

    def to_json(self) -> dict:
        return {"plucker": [scalar_to_json(x) for x in self.p], "order": PLUCKER_ORDER}

    @classmethod
    def from_json(cls, obj: dict) -> "PluckerVec":
        if obj.get("order") != PLUCKER_ORDER:
            raise ValueError(f"Pluecker record must declare order {PLUCKER_ORDER!r}")
        return cls(tuple(scalar_from_json(v) for v in obj["plucker"]))

    def __repr__(self):
        return "PluckerVec(" + ", ".join(str(x) for x in self.p) + ")"


def _minors(a, b) -> tuple:
    return tuple(a[i] * b[k] - a[k] * b[i] for i, k in PLUCKER_PAIRS)


@dataclass(frozen=True, eq=False)
class LineP3:
    """Line of CP^3 spanned by two independent points."""

    a: ProjPoint3
    b: ProjPoint3
    _p: tuple = field(init=False, repr=False)

    def __post_init__(self):
        a = self.a if isinstance(self.a, ProjPoint3) else ProjPoint3(tuple(self.a))
        b = self.b if isinstance(self.b, ProjPoint3) else ProjPoint3(tuple(self.b))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        p = _minors(a.z, b.z)
        if a.exact and b.exact:
            dependent = all(x == 0 for x in p)
        else:
            dependent = _second_singular(a.z, b.z) < APPROX_TOL
        if dependent:
            raise ValueError("spanning points of a line must be independent")
        object.__setattr__(self, "_p", p)

    @classmethod
    def span(cls, a, b) -> "LineP3":
        return cls(a, b)

    @property
    def exact(self) -> bool:
        return self.a.exact and self.b.exact

    @cached_property
    def plucker(self) -> PluckerVec:
        return PluckerVec(self._p)

    def point(self, s, t) -> ProjPoint3:
        return ProjPoint3(tuple(s * x + t * y for x, y in zip(self.a.z, self.b.z)))

    def contains_point(self, z, tol: float = APPROX_TOL) -> bool:
        """Rank of ``[a; b; z]`` is 2."""
        z = z.z if isinstance(z, ProjPoint3) else tuple(z)
        if self.exact and all_exact(z):
            rows = (self.a.z, self.b.z, z)
            for cols in combinations(range(4), 3):
                if _det3([[r[c] for c in cols] for r in rows]) != 0:
                    return False
            return True
        m = np.array([self.a.to_complex(), self.b.to_complex(), [complex(x) for x in z]])
        m /= np.linalg.norm(m, axis=1, keepdims=True)
        return float(np.linalg.svd(m, compute_uv=False)[2]) < tol

    def __eq__(self, other):
        if not isinstance(other, LineP3):
            return NotImplemented
        return self.plucker == other.plucker

    def __hash__(self):
        return hash(self.plucker)

    def to_json(self) -> dict:
        return {"points": [self.a.to_json(), self.b.to_json()]}

    @classmethod
    def from_json(cls, obj: dict) -> "LineP3":
        a, b = obj["points"]
        return cls(ProjPoint3.from_json(a), ProjPoint3.from_json(b))

    def __repr__(self):
        return f"LineP3({self.a!r}, {self.b!r})"


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def line_from_plucker(p) -> LineP3:
    """Recover a spanning pair from a Pluecker vector on the Klein quadric.

    The columns of the skew matrix ``P_ik = p_ik`` span the line; the two
    columns with the largest (exact: first nonzero) entries are used.
    """
    p = p.p if isinstance(p, PluckerVec) else tuple(p)
    m = [[0] * 4 for _ in range(4)]
    for (i, k), v in zip(PLUCKER_PAIRS, p):
        m[i][k] = v
        m[k][i] = -v
    cols = [tuple(m[r][c] for r in range(4)) for c in range(4)]
    if all_exact(p):
        cols = [tuple(exact(x) for x in col) for col in cols]
        for c1, c2 in combinations(range(4), 2):
            if any(x != 0 for x in _minors(cols[c1], cols[c2])):
                return LineP3(ProjPoint3(cols[c1]), ProjPoint3(cols[c2]))
        raise ValueError("vector is not a decomposable Pluecker vector")
    arr = np.array([[complex(x) for x in col] for col in cols])
    best = None
    for c1, c2 in combinations(range(4), 2):
        s = np.linalg.svd(arr[[c1, c2]], compute_uv=False)
        if best is None or s[1] > best[0]:
            best = (s[1], c1, c2)
    _, c1, c2 = best
    return LineP3(ProjPoint3(tuple(arr[c1])), ProjPoint3(tuple(arr[c2])))
