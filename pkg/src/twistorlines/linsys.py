"""Linear systems of surfaces through lines, fat points and points.

Each component of a configuration contributes linear functionals on the
coefficient vector of a degree-``d`` form: a line the ``d + 1`` coefficients
of the restriction, a fat point the four partials at the point, a simple
point one evaluation.  ``h0`` is the kernel dimension and ``h1`` is the
length of the scheme minus the rank.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, lcm

import numpy as np

from . import exactla
from .geometry import LineP3, ProjPoint3
from .plucker import is_twistor, lines_meet
from .polyring import PolyForm, j_form, monomial_restrictions, monomials, restrict_to_line
from .scalars import GR, all_exact, random_gaussian
from .twistor import j_point, random_point

__all__ = [
    "Configuration",
    "CohomologyReport",
    "LinearSystemBasis",
    "Refusal",
    "condition_rows",
    "condition_matrix",
    "cohomology",
    "linear_system",
    "nu",
    "nu_closed_form",
    "general_member",
    "is_base_point",
    "j_invariant_member",
    "augment_j_pairs",
    "normalize_j_invariant",
    "primitive_form",
    "planar_cohomology",
    "bidegree_cohomology",
]

log = logging.getLogger(__name__)


class Refusal(ValueError):
    """A request that has no mathematical answer (empty system, parity obstruction)."""


# configurations -------------------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    """Pairwise disjoint lines, fat points ``2q`` and simple points.

    A fat point may lie on one of the lines; its scheme then adds length 2
    instead of 4.  Every other incidence between components is rejected.
    """

    lines: tuple = ()
    fat_points: tuple = ()
    simple_points: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        object.__setattr__(self, "fat_points", tuple(_pt(p) for p in self.fat_points))
        object.__setattr__(self, "simple_points", tuple(_pt(p) for p in self.simple_points))
        self.validate()

    def validate(self):
        n = len(self.lines)
        for i in range(n):
            for k in range(i):
                if lines_meet(self.lines[i], self.lines[k]):
                    raise ValueError(f"lines {k} and {i} meet")
        pts = self.fat_points + self.simple_points
        for i in range(len(pts)):
            for k in range(i):
                if pts[i] == pts[k]:
                    raise ValueError("configuration points must be distinct")
        for q in self.fat_points:
            if sum(L.contains_point(q) for L in self.lines) > 1:
                raise ValueError("a fat point lies on two lines")
        for q in self.simple_points:
            if any(L.contains_point(q) for L in self.lines):
                raise ValueError("a simple point lies on a configuration line")

    def with_points(self, fat=(), simple=()) -> "Configuration":
        return Configuration(self.lines, self.fat_points + tuple(fat), self.simple_points + tuple(simple))

    @property
    def exact(self) -> bool:
        return (all(L.exact for L in self.lines)
                and all(p.exact for p in self.fat_points + self.simple_points))

    def fat_on_line(self, q: ProjPoint3) -> bool:
        return any(L.contains_point(q) for L in self.lines)

    def length(self, d: int) -> int:
        """Length of the scheme restricted to degree ``d`` (number of independent conditions it could impose)."""
        total = len(self.lines) * (d + 1) + len(self.simple_points)
        for q in self.fat_points:
            total += 2 if self.fat_on_line(q) else 4
        return total

    def is_j_invariant(self) -> bool:
        if not all(is_twistor(L) for L in self.lines):
            return False
        for pts in (self.fat_points, self.simple_points):
            for p in pts:
                if not any(j_point(p) == r for r in pts):
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "lines": [L.to_json() for L in self.lines],
            "fat_points": [p.to_json() for p in self.fat_points],
            "simple_points": [p.to_json() for p in self.simple_points],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Configuration":
        return cls(
            tuple(LineP3.from_json(L) for L in obj.get("lines", [])),
            tuple(ProjPoint3.from_json(p) for p in obj.get("fat_points", [])),
            tuple(ProjPoint3.from_json(p) for p in obj.get("simple_points", [])),
        )


def _pt(p) -> ProjPoint3:
    return p if isinstance(p, ProjPoint3) else ProjPoint3(tuple(p))


# condition rows --------------------------------------------------------------

def _evaluation_row(d: int, q, nvars: int = 4) -> list:
    pw = [[GR(1) if all_exact(q) else 1 + 0j] for _ in range(nvars)]
    for i in range(nvars):
        for _ in range(d):
            pw[i].append(pw[i][-1] * q[i])
    out = []
    for alpha in monomials(d, nvars):
        v = pw[0][alpha[0]]
        for i in range(1, nvars):
            v = v * pw[i][alpha[i]]
        out.append(v)
    return out


def _partial_rows(d: int, q) -> list:
    pw = [[GR(1) if all_exact(q) else 1 + 0j] for _ in range(4)]
    for i in range(4):
        for _ in range(d):
            pw[i].append(pw[i][-1] * q[i])
    rows = []
    for i in range(4):
        row = []
        for alpha in monomials(d):
            if alpha[i] == 0:
                row.append(pw[0][0] * 0)
                continue
            v = pw[0][0] * alpha[i]
            for k in range(4):
                v = v * pw[k][alpha[k] - (k == i)]
            row.append(v)
        rows.append(row)
    return rows


def condition_rows(item, d: int, kind: str | None = None) -> list:
    """Rows of linear functionals imposed by a line, a fat point or a simple point.

    ``kind`` is ``"fat"`` or ``"simple"`` for points (default ``"simple"``).
    """
    if isinstance(item, LineP3):
        R = monomial_restrictions(d, item.a.z, item.b.z)
        return [[r[m] for r in R] for m in range(d + 1)]
    q = _pt(item).z
    kind = kind or "simple"
    if kind == "simple":
        return [_evaluation_row(d, q)]
    if kind == "fat":
        if d == 0:
            raise ValueError("a fat point needs degree at least 1")
        return _partial_rows(d, q)
    raise ValueError(f"unknown condition kind {kind!r}")


def condition_matrix(config: Configuration, d: int) -> list:
    rows = []
    for L in config.lines:
        rows += condition_rows(L, d)
    for q in config.fat_points:
        rows += condition_rows(q, d, "fat")
    for q in config.simple_points:
        rows += condition_rows(q, d, "simple")
    return rows


# reports ----------------------------------------------------------------------

@dataclass(frozen=True)
class CohomologyReport:
    """``h0 = cols - rank`` and ``h1 = rows - rank`` where ``rows`` is the scheme length."""

    d: int
    cols: int
    rows: int
    rank: int
    matrix_rows: int = 0
    method: str = ""

    @property
    def h0(self) -> int:
        return self.cols - self.rank

    @property
    def h1(self) -> int:
        return self.rows - self.rank

    def to_json(self) -> dict:
        return {"d": self.d, "cols": self.cols, "rows": self.rows, "rank": self.rank,
                "h0": self.h0, "h1": self.h1}


@dataclass(frozen=True)
class LinearSystemBasis:
    d: int
    basis: tuple
    config: Configuration = field(default_factory=Configuration, repr=False)

    def __len__(self):
        return len(self.basis)


def _matrix_rank(rows, ncols):
    if not rows:
        return exactla.RankResult(0, "empty")
    if all(all_exact(r) for r in rows):
        return exactla.rank(rows, ncols)
    m = np.array([[complex(x) for x in r] for r in rows])
    s = np.linalg.svd(m, compute_uv=False)
    return exactla.RankResult(int(np.sum(s > 1e-9 * s[0])), "svd")


def cohomology(config: Configuration, d: int) -> CohomologyReport:
    if d < 0:
        raise ValueError("negative degree")
    cols = comb(d + 3, 3)
    rows = condition_matrix(config, d)
    r = _matrix_rank(rows, cols)
    rep = CohomologyReport(d, cols, config.length(d), r.rank, len(rows), r.method)
    if rep.h0 < 0 or rep.h1 < 0:
        raise AssertionError(f"negative cohomology in {rep}")
    return rep


def linear_system(config: Configuration, d: int) -> LinearSystemBasis:
    """Exact basis of the forms of degree ``d`` vanishing on the configuration."""
    if not config.exact:
        raise ValueError("linear systems are computed for exact configurations only")
    cols = comb(d + 3, 3)
    rows = condition_matrix(config, d)
    vecs = exactla.nullspace(rows, cols)
    return LinearSystemBasis(d, tuple(PolyForm(d, tuple(v)) for v in vecs), config)


# nu ---------------------------------------------------------------------------

def _nu(d: int) -> int:
    if d < 0:
        raise ValueError("negative degree")
    return (comb(d + 3, 3) - 1) // (d + 1)


def nu(kind: str, d: int) -> int:
    """Lower bounds for twistor-line counts: ``plain``, ``normal``, ``smooth`` or ``jinv``."""
    if d < 0:
        raise ValueError("negative degree")
    if kind == "plain":
        return _nu(d)
    if kind == "normal":
        return _nu(d - 1) if d >= 2 else 0
    if kind == "smooth":
        return _nu(d - 3) if d >= 4 else 0
    if kind == "jinv":
        return _nu(d - 9) if d >= 9 else 0
    raise ValueError(f"unknown kind {kind!r}")


def nu_closed_form(kind: str, d: int) -> int:
    """Closed quadratic expressions, split by ``d mod 3``."""
    if kind == "plain":
        num = d * d + 5 * d + (4 if d % 3 == 2 else 0)
        return num // 6
    if kind == "smooth":
        if d < 3:
            raise ValueError("closed form for the smooth bound needs d >= 3")
        num = (d - 3) * (d + 2) if d % 3 in (0, 1) else d * d - d - 2
        return num // 6
    raise ValueError(f"no closed form for {kind!r}")


# members ----------------------------------------------------------------------

def general_member(basis: LinearSystemBasis, seed=None, height: int = 10) -> PolyForm:
    """Random integer combination of the basis with coefficients in ``[-height, height]``."""
    if not basis.basis:
        raise Refusal("the linear system is empty")
    if len(basis.basis) == 1:
        return basis.basis[0]
    rng = np.random.default_rng(seed)
    for _ in range(20):
        coeffs = rng.integers(-height, height + 1, size=len(basis.basis))
        if not coeffs.any():
            continue
        f = PolyForm.zero(basis.d)
        for c, g in zip(coeffs, basis.basis):
            if c:
                f = f + g.scale(int(c))
        if not f.is_zero():
            return f
    raise ArithmeticError("could not draw a nonzero member")


def is_base_point(basis: LinearSystemBasis, p) -> bool:
    z = _pt(p).z
    return all(g.evaluate(z) == 0 if g.exact else abs(g.evaluate(z)) < 1e-9 for g in basis.basis)


def primitive_form(f: PolyForm) -> PolyForm:
    """Rescale by a positive rational so the coefficients are coprime Gaussian integers."""
    den = 1
    for c in f.coeffs:
        den = lcm(den, c.re.denominator, c.im.denominator)
    g = 0
    for c in f.coeffs:
        g = gcd(g, int(c.re * den), int(c.im * den))
    if g == 0:
        return f
    return f.scale(Fraction(den, g))


def normalize_j_invariant(f: PolyForm) -> PolyForm:
    """Given ``j(f) = a f`` with ``d`` even, return a multiple with ``j(f) = f``."""
    if f.degree % 2:
        raise Refusal("odd degree forms are never j-invariant (j^2 = -1 forces |a|^2 = -1)")
    jf = j_form(f)
    a = jf.proportionality(f)
    if a is None:
        raise ValueError("form is not j-invariant")
    g = f.scale(GR(0, 1)) if a == -1 else f + jf
    return primitive_form(g)


def augment_j_pairs(config: Configuration, d: int, rng, height: int = 10, max_tries: int = 20,
                    h0: int | None = None) -> Configuration:
    """Append ``(h0 - 1)/2`` random pairs ``{p, j(p)}`` so that exactly one form survives."""
    if h0 is None:
        h0 = cohomology(config, d).h0
    if h0 % 2 == 0:
        raise Refusal(f"h0 = {h0} is even; augmentation by j-pairs cannot reach h0 = 1")
    m = (h0 - 1) // 2
    for attempt in range(max_tries):
        extra = []
        for _ in range(m):
            p = random_point(rng, height)
            extra += [p, j_point(p)]
        try:
            aug = config.with_points(simple=extra)
        except ValueError:
            log.info("augmentation draw %d hit the configuration; resampling", attempt)
            continue
        if cohomology(aug, d).h0 == 1:
            return aug
        log.info("augmentation draw %d did not cut h0 down to 1; resampling", attempt)
    raise ArithmeticError("augmentation did not reach h0 = 1")


def j_invariant_member(config: Configuration, d: int, seed=None, strategy: str = "auto",
                       height: int = 10, max_tries: int = 20) -> PolyForm:
    """A member ``f`` of ``|I_Z(d)|`` with ``j_form(f) == f`` exactly.

    ``augment`` adds ``(h0 - 1)/2`` random pairs ``{p, j(p)}`` of simple
    points so the system becomes a single j-stable form; it needs ``h0``
    odd.  ``symmetrize`` returns ``f + j(f)`` for a random member ``f``
    (or ``i f`` when that sum vanishes).  ``auto`` augments when ``h0`` is
    odd and symmetrizes otherwise.
    """
    if d % 2:
        raise Refusal(f"no j-invariant form of odd degree {d} exists")
    if not config.is_j_invariant():
        raise ValueError("configuration is not mapped to itself by j")
    rep = cohomology(config, d)
    if rep.h0 == 0:
        raise Refusal("the linear system is empty")
    if strategy == "auto":
        strategy = "augment" if rep.h0 % 2 else "symmetrize"
    rng = np.random.default_rng(seed)
    if strategy == "augment":
        aug = augment_j_pairs(config, d, rng, height, max_tries, h0=rep.h0)
        f = normalize_j_invariant(linear_system(aug, d).basis[0])
    elif strategy == "symmetrize":
        basis = linear_system(config, d)
        for _ in range(max_tries):
            f0 = general_member(basis, int(rng.integers(2**31)), height)
            g = f0 + j_form(f0)
            f = f0.scale(GR(0, 1)) if g.is_zero() else g
            if not f.is_zero():
                f = primitive_form(f)
                break
        else:
            raise ArithmeticError("symmetrization kept producing zero")
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if j_form(f) != f:
        raise AssertionError("extracted member is not fixed by j")
    for L in config.lines:
        if not restrict_to_line(f, L).is_zero():
            raise AssertionError("extracted member misses a configuration line")
    return f


# plane curves and P1 x P1 -------------------------------------------------------

def planar_cohomology(points, t: int) -> tuple[int, int]:
    """``(h0, h1)`` of the ideal of distinct points of P^2 in degree ``t``."""
    pts = [tuple(p) for p in points]
    cols = comb(t + 2, 2)
    rows = [_evaluation_row(t, p, 3) for p in pts]
    r = _matrix_rank(rows, cols).rank if rows else 0
    return cols - r, len(pts) - r


def bidegree_cohomology(points, bidegree: tuple[int, int]) -> tuple[int, int]:
    """``(h0, h1)`` for points ``((x0, x1), (y0, y1))`` of P^1 x P^1 and forms of bidegree ``(a, b)``."""
    a, b = bidegree
    cols = (a + 1) * (b + 1)
    rows = []
    for (x0, x1), (y0, y1) in points:
        row = []
        for i in range(a + 1):
            for k in range(b + 1):
                row.append(x0 ** (a - i) * x1 ** i * y0 ** (b - k) * y1 ** k)
        rows.append([GR(v) if isinstance(v, (int, Fraction)) else v for v in row])
    r = _matrix_rank(rows, cols).rank if rows else 0
    return cols - r, len(rows) - r


def random_planar_points(n: int, seed=None, height: int = 10) -> list:
    rng = np.random.default_rng(seed)
    return [tuple(random_gaussian(rng, height) for _ in range(3)) for _ in range(n)]
