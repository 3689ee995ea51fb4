"""Surface analysis: line containment, smoothness, singularity search, irreducibility, collinearity."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import exactla
from .geometry import LineP3
from .linefinder import LineFinderOptions, LineFound, LineSearch, find_lines
from .linsys import Configuration, cohomology
from .numeric import NumericForm
from .plucker import TransversalResult, transversals
from .polyring import BinaryForm, PolyForm, binary_gcd, restrict_to_line, substitute
from .scalars import GR

__all__ = [
    "contains_line",
    "smooth_along_line",
    "SingularCandidate",
    "singularity_probe",
    "IrreducibilityResult",
    "irreducibility_slice_certificate",
    "CollinearityReport",
    "collinearity_report",
    "SurfaceReport",
    "analyze_surface",
    "LineFound",
    "find_lines",
]

log = logging.getLogger(__name__)


def contains_line(f: PolyForm, L: LineP3) -> bool:
    return restrict_to_line(f, L).is_zero()


def smooth_along_line(f: PolyForm, L: LineP3) -> bool:
    """Exact: no point of ``L`` where all four partials vanish."""
    if not contains_line(f, L):
        raise ValueError("line is not on the surface")
    if f.degree == 1:
        return True
    parts = [restrict_to_line(g, L) for g in f.partials()]
    if all(p.is_zero() for p in parts):
        return False
    if not all(p.exact for p in parts):
        raise ValueError("smooth_along_line needs exact input")
    return binary_gcd(*parts).degree == 0


# singularity probe ------------------------------------------------------------

@dataclass(frozen=True)
class SingularCandidate:
    point: tuple
    residual: float

    def to_json(self) -> dict:
        return {"point": [[z.real, z.imag] for z in self.point], "residual": self.residual}


def _grad_residual(F: NumericForm, Z: np.ndarray) -> np.ndarray:
    g = F.grad(Z)
    nz = np.linalg.norm(Z, axis=-1)
    return np.linalg.norm(g, axis=-1) / nz ** (F.degree - 1)


def _chart_newton(F: NumericForm, chart: int, Y: np.ndarray, iters: int) -> np.ndarray:
    """Damped Gauss-Newton on the 4 partials with ``z[chart] = 1``; ``Y`` holds the other 3 coordinates."""
    free = [i for i in range(4) if i != chart]
    lam = np.full(len(Y), 1e-3)

    def lift(Y):
        Z = np.empty((len(Y), 4), dtype=complex)
        Z[:, chart] = 1
        Z[:, free] = Y
        return Z

    Z = lift(Y)
    g = F.grad(Z)
    r = np.linalg.norm(g, axis=1)
    eye = np.eye(3)
    for _ in range(iters):
        J = F.hess(Z)[:, :, free]
        JH = np.conj(np.swapaxes(J, 1, 2))
        A = JH @ J
        A = A + (lam * (np.trace(A, axis1=1, axis2=2).real / 3 + 1e-300))[:, None, None] * eye
        rhs = -(JH @ g[..., None])[..., 0]
        try:
            step = np.linalg.solve(A, rhs[..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = np.stack([np.linalg.lstsq(A[q], rhs[q], rcond=None)[0] for q in range(len(A))])
        Yn = Y + step
        Yn = np.where(np.isfinite(Yn), Yn, Y)
        Zn = lift(Yn)
        gn = F.grad(Zn)
        rn = np.linalg.norm(gn, axis=1)
        ok = rn < r
        Y = np.where(ok[:, None], Yn, Y)
        Z = np.where(ok[:, None], Zn, Z)
        g = np.where(ok[:, None], gn, g)
        r = np.where(ok, rn, r)
        lam = np.maximum(np.where(ok, lam / 3, np.minimum(lam * 4, 1e8)), 1e-15)
    return Z


def singularity_probe(f: PolyForm, n_starts: int = 200, seed=None, tol: float = 1e-10,
                      iters: int = 60) -> list[SingularCandidate]:
    """Multistart search for common zeros of the partials (probabilistic, never a proof of smoothness).

    ``n_starts`` is the total over the four affine charts.  Residuals are
    ``|grad f(z)| / |z|^(d-1)`` with max-normalized coefficients.
    """
    d = f.degree
    if d < 2:
        raise ValueError("degree must be at least 2")
    F = NumericForm(f)
    rng = np.random.default_rng(seed)
    per = max(1, -(-n_starts // 4))
    found = []
    for chart in range(4):
        Y0 = (rng.standard_normal((per, 3)) + 1j * rng.standard_normal((per, 3))) / np.sqrt(2)
        Z = _chart_newton(F, chart, Y0, iters)
        ok = np.all(np.isfinite(Z), axis=1)
        Z = Z[ok]
        res = _grad_residual(F, Z)
        for z, r in zip(Z[res < 1e-6], res[res < 1e-6]):
            found.append(z)
    # re-chart and polish, then keep those under tol
    out: list[SingularCandidate] = []
    for z in found:
        c = int(np.argmax(np.abs(z)))
        z = z / z[c]
        free = [i for i in range(4) if i != c]
        Z = _chart_newton(F, c, z[free][None, :], 10)[0]
        Z = Z / np.linalg.norm(Z)
        r = float(_grad_residual(F, Z[None, :])[0])
        if r >= tol:
            continue
        if any(np.linalg.norm(Z - np.vdot(p.point, Z) * np.array(p.point)) < 1e-6 for p in out):
            continue
        out.append(SingularCandidate(tuple(complex(x) for x in Z), r))
    log.info("singularity_probe: %d candidates after %d starts", len(out), per * 4)
    return out


def probe_message(candidates, n_starts: int) -> str:
    if not candidates:
        return f"no singularity found after {n_starts} starts"
    return f"{len(candidates)} singular candidate(s) after {n_starts} starts"


# irreducibility ------------------------------------------------------------------

@dataclass(frozen=True)
class IrreducibilityResult:
    status: str  # "Certified" | "Inconclusive"
    plane: tuple = ()
    witness: str = ""
    attempts: int = 0

    @property
    def certified(self) -> bool:
        return self.status == "Certified"

    def to_json(self) -> dict:
        return {"status": self.status, "attempts": self.attempts, "witness": self.witness,
                "plane": [[str(x) for x in v] for v in self.plane]}


def _z_coefficients(F: PolyForm, x) -> list:
    """``F(x, 1, z)`` as ascending coefficients in ``z``."""
    out = [GR(0)] * (F.degree + 1)
    for (a, b, e), c in F.terms():
        out[e] = out[e] + c * GR(x) ** a
    return out


def _sylvester(p: list, q: list) -> list:
    """Sylvester matrix of two polynomials given by ascending coefficients."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [GR(0)] * size
        for k, c in enumerate(reversed(p)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [GR(0)] * size
        for k, c in enumerate(reversed(q)):
            row[i + k] = c
        rows.append(row)
    return rows


def _interpolate(xs: list, ys: list) -> list:
    """Ascending coefficients of the polynomial through ``(xs, ys)`` (Newton form, exact)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [GR(0)] * n
    for k in range(n - 1, -1, -1):
        # poly = poly * (x - xs[k]) + coef[k]
        new = [GR(0)] * n
        for i in range(n - 1):
            new[i + 1] = new[i + 1] + poly[i]
        for i in range(n):
            new[i] = new[i] - poly[i] * xs[k]
        new[0] = new[0] + coef[k]
        poly = new
    return poly


def _resultant_form(F1: PolyForm, F2: PolyForm) -> BinaryForm:
    """``Res_z(F1, F2)`` as a binary form in ``(x, y)`` of degree ``deg F1 * deg F2``."""
    D = F1.degree * F2.degree
    xs = [GR(k) for k in range(D + 1)]
    ys = [exactla.det(_sylvester(_z_coefficients(F1, x), _z_coefficients(F2, x))) for x in xs]
    r = _interpolate(xs, ys)  # R(x, 1) = sum_k r_k x^k
    return BinaryForm(tuple(r[D - m] for m in range(D + 1)))


def _random_plane(rng, height: int = 7):
    while True:
        V = [tuple(GR(int(v)) for v in rng.integers(-height, height + 1, size=4)) for _ in range(3)]
        if exactla.rank(V, 4).rank == 3:
            return tuple(V)


def _random_line(rng, height: int = 7) -> LineP3:
    while True:
        a, b = (tuple(GR(int(v)) for v in rng.integers(-height, height + 1, size=4)) for _ in range(2))
        if exactla.rank([a, b], 4).rank == 2:
            return LineP3(a, b)


def irreducibility_slice_certificate(f: PolyForm, seed=None, max_planes: int = 5) -> IrreducibilityResult:
    """Certify that ``{f = 0}`` is integral through a smooth plane section.

    A smooth plane curve is irreducible and reduced, and a factorization of
    ``f`` would restrict to one of the section.  Smoothness of the section
    ``F`` is certified when ``Res_z(F_x, F_y)`` and ``Res_z(F_x, F_z)`` have
    no common root, with the leading ``z`` coefficients kept nonzero so the
    resultants detect every common zero.
    """
    if not f.exact:
        raise ValueError("the slice certificate needs an exact form")
    d = f.degree
    if d < 1:
        raise ValueError("degree must be at least 1")
    if f.is_zero():
        return IrreducibilityResult("Inconclusive", (), "zero form", 0)
    if d == 1:
        return IrreducibilityResult("Certified", (), "plane", 0)
    rng = np.random.default_rng(seed)
    # square-factor screen along a random line
    for _ in range(20):
        L = _random_line(rng)
        g = restrict_to_line(f, L)
        if not g.is_zero():
            break
    else:
        return IrreducibilityResult("Inconclusive", (), "form vanishes on every sampled line", 0)
    if binary_gcd(g, g.d_s(), g.d_t()).degree > 0:
        return IrreducibilityResult("Inconclusive", (), f"repeated root along line {L.to_json()}", 0)
    last = ((), "")
    attempts = 0
    draws = 0
    while attempts < max_planes and draws < 20 * max_planes:
        draws += 1
        plane = _random_plane(rng)
        F = substitute(f, plane)
        parts = F.partials()
        top = [p.coeff((0, 0, d - 1)) for p in parts]
        if F.coeff((0, 0, d)) == 0 or any(c == 0 for c in top):
            continue
        attempts += 1
        R12 = _resultant_form(parts[0], parts[1])
        R13 = _resultant_form(parts[0], parts[2])
        if R12.is_zero() or R13.is_zero():
            last = (plane, "partials of the section share a factor")
            continue
        g = binary_gcd(R12, R13)
        if g.degree == 0:
            return IrreducibilityResult("Certified", plane, "smooth plane section", attempts)
        last = (plane, f"resultants share a factor of degree {g.degree}")
    return IrreducibilityResult("Inconclusive", last[0], last[1] or "no admissible plane", attempts)


# collinearity -----------------------------------------------------------------------

@dataclass(frozen=True)
class CollinearityReport:
    has_common_transversal: bool
    transversals: TransversalResult
    lies_on_cubic: bool | None = None
    h0_cubic: int | None = None

    def to_json(self) -> dict:
        return {"has_common_transversal": self.has_common_transversal,
                "transversals": self.transversals.to_json(),
                "lies_on_cubic": self.lies_on_cubic, "h0_cubic": self.h0_cubic}


def collinearity_report(lines) -> CollinearityReport:
    lines = list(lines)
    T = transversals(lines)
    on_cubic = h0 = None
    if len(lines) == 5:
        h0 = cohomology(Configuration(tuple(lines)), 3).h0
        on_cubic = h0 >= 1
    return CollinearityReport(T.infinite or T.count > 0, T, on_cubic, h0)


# surface report ---------------------------------------------------------------------

@dataclass
class SurfaceReport:
    degree: int
    lines: LineSearch
    smooth_along_input_lines: bool | None
    singularity_candidates: list
    singularity_starts: int
    irreducibility: IrreducibilityResult | None
    input_lines_found: list = field(default_factory=list)

    @property
    def n_twistor(self) -> int:
        return self.lines.n_twistor

    @property
    def twistor_bound_ok(self) -> bool:
        """At most ``d^2`` twistor lines (5 for cubics) on a smooth surface."""
        if self.lines.non_isolated or self.singularity_candidates:
            return True
        bound = 5 if self.degree == 3 else self.degree**2
        return self.n_twistor <= bound

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "n_lines": len(self.lines),
            "n_twistor": self.n_twistor,
            "twistor_bound_ok": self.twistor_bound_ok,
            "smooth_along_input_lines": self.smooth_along_input_lines,
            "input_lines_found": self.input_lines_found,
            "singularity_probe": {
                "n_starts": self.singularity_starts,
                "message": probe_message(self.singularity_candidates, self.singularity_starts),
                "candidates": [c.to_json() for c in self.singularity_candidates],
            },
            "irreducibility": None if self.irreducibility is None else self.irreducibility.to_json(),
            "line_search": self.lines.to_json(),
        }


def analyze_surface(f: PolyForm, input_lines=(), seed=0, line_opts: LineFinderOptions | None = None,
                    probe_starts: int | None = None) -> SurfaceReport:
    d = f.degree
    input_lines = list(input_lines)
    for L in input_lines:
        if not contains_line(f, L):
            raise ValueError("surface does not contain an input line")
    smooth = None
    if input_lines and f.exact:
        smooth = all(smooth_along_line(f, L) for L in input_lines)
    line_opts = line_opts or LineFinderOptions(seed=seed)
    search = find_lines(f, line_opts)
    found = [any(x.plucker.distance(L.plucker) < line_opts.dedup_tol for x in search) for L in input_lines]
    probe_starts = probe_starts or 200 * d
    cands = singularity_probe(f, probe_starts, seed) if d >= 2 else []
    irr = irreducibility_slice_certificate(f, seed) if f.exact else None
    rep = SurfaceReport(d, search, smooth, cands, probe_starts, irr, found)
    if not rep.twistor_bound_ok:
        log.error("twistor-line bound exceeded: %d twistor lines on a degree %d surface", rep.n_twistor, d)
    return rep
