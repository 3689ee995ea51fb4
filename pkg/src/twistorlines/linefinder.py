"""Numerical enumeration of the lines on a surface of CP^3.

Lines are sought in the six affine charts of Gr(2,4): a frame with the
identity in columns ``(i, k)`` and four unknowns in the other two columns.
The unknowns solve the ``d + 1`` coefficient equations of ``f(s a + t b)``,
obtained by sampling ``f(a + w b)`` at the ``(d+1)``-th roots of unity and
applying an FFT.  Batched Levenberg-Marquardt runs from random starts;
converged frames are polished in their best-conditioned chart, deduplicated
by Pluecker distance, and classified as twistor or not.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .geometry import PLUCKER_PAIRS, LineP3, PluckerVec, klein_form, line_from_plucker
from .numeric import NumericForm
from .plucker import is_twistor, twistor_margin
from .polyring import PolyForm, restrict_to_line
from .scalars import GR

__all__ = ["LineFinderOptions", "LineFound", "LineSearch", "find_lines", "rationalize_plucker"]

log = logging.getLogger(__name__)

CHARTS = tuple(combinations(range(4), 2))


@dataclass(frozen=True)
class LineFinderOptions:
    n_starts: int | None = None  # per chart; default 200 * degree
    accept_tol: float = 1e-8
    dedup_tol: float = 1e-6
    twistor_tol: float = 1e-8
    max_iter: int = 80
    polish_iter: int = 8
    start_scale: float = 1.0
    max_denominator: int = 10**6
    seed: int | None = 0


@dataclass(frozen=True)
class LineFound:
    plucker: PluckerVec
    residual: float
    twistor_margin: float
    is_twistor: bool
    isolated: bool
    chart: tuple
    exact_plucker: PluckerVec | None = None

    @property
    def exactly_confirmed(self) -> bool:
        return self.exact_plucker is not None

    @property
    def line(self) -> LineP3:
        return line_from_plucker(self.exact_plucker or self.plucker)

    def to_json(self) -> dict:
        out = {
            "plucker": self.plucker.to_json(),
            "residual": self.residual,
            "twistor_margin": self.twistor_margin,
            "is_twistor": self.is_twistor,
            "isolated": self.isolated,
            "chart": list(self.chart),
            "exactly_confirmed": self.exactly_confirmed,
        }
        if self.exact_plucker is not None:
            out["exact_plucker"] = self.exact_plucker.to_json()
            out["exact_is_twistor"] = is_twistor(self.exact_plucker)
        return out


@dataclass
class LineSearch:
    lines: list
    n_starts: int
    n_converged: int
    per_chart: dict
    non_isolated: bool
    options: LineFinderOptions = field(repr=False, default_factory=LineFinderOptions)

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __getitem__(self, i):
        return self.lines[i]

    @property
    def n_twistor(self) -> int:
        return sum(L.is_twistor for L in self.lines)

    def to_json(self) -> dict:
        return {
            "count": len(self.lines),
            "n_twistor": self.n_twistor,
            "non_isolated": self.non_isolated,
            "n_starts": self.n_starts,
            "n_converged": self.n_converged,
            "per_chart": {f"{i}{k}": v for (i, k), v in self.per_chart.items()},
            "tolerances": {"accept_tol": self.options.accept_tol, "dedup_tol": self.options.dedup_tol,
                           "twistor_tol": self.options.twistor_tol},
            "lines": [L.to_json() for L in self.lines],
        }


# chart algebra ----------------------------------------------------------------

def _frames(chart, X: np.ndarray):
    """Spanning rows ``a``, ``b`` (shape ``(..., 4)``) from unknowns ``X`` (``(..., 4)``)."""
    i, k = chart
    l, m = [c for c in range(4) if c not in chart]
    shape = X.shape[:-1] + (4,)
    a = np.zeros(shape, dtype=complex)
    b = np.zeros(shape, dtype=complex)
    a[..., i] = 1
    b[..., k] = 1
    a[..., l], a[..., m] = X[..., 0], X[..., 1]
    b[..., l], b[..., m] = X[..., 2], X[..., 3]
    return a, b


def _system(F: NumericForm, chart, X: np.ndarray):
    """Restriction coefficients ``g`` (``(B, d+1)``) and their Jacobian (``(B, d+1, 4)``)."""
    d = F.degree
    n = d + 1
    w = np.exp(2j * np.pi * np.arange(n) / n)
    a, b = _frames(chart, X)
    P = a[:, None, :] + w[None, :, None] * b[:, None, :]
    h = F(P)
    G = F.grad(P)
    l, m = [c for c in range(4) if c not in chart]
    dh = np.stack([G[..., l], G[..., m], w * G[..., l], w * G[..., m]], axis=-1)
    g = np.fft.fft(h, axis=1) / n
    J = np.fft.fft(dh, axis=1) / n
    return g, J


def _lm(F: NumericForm, chart, X: np.ndarray, iters: int, lam0: float = 1e-3):
    lam = np.full(X.shape[0], lam0)
    g, J = _system(F, chart, X)
    r = np.linalg.norm(g, axis=1)
    eye = np.eye(4)
    for _ in range(iters):
        JH = np.conj(np.swapaxes(J, 1, 2))
        A = JH @ J
        rhs = -(JH @ g[..., None])[..., 0]
        A = A + (lam[:, None, None] * (np.trace(A, axis1=1, axis2=2).real[:, None, None] / 4 + 1e-300)) * eye
        try:
            step = np.linalg.solve(A, rhs[..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = np.stack([np.linalg.lstsq(A[q], rhs[q], rcond=None)[0] for q in range(len(A))])
        Xn = X + step
        Xn = np.where(np.isfinite(Xn), Xn, X)
        gn, Jn = _system(F, chart, Xn)
        rn = np.linalg.norm(gn, axis=1)
        ok = rn < r
        X = np.where(ok[:, None], Xn, X)
        g = np.where(ok[:, None], gn, g)
        J = np.where(ok[:, None, None], Jn, J)
        r = np.where(ok, rn, r)
        lam = np.where(ok, lam / 3, np.minimum(lam * 4, 1e8))
        lam = np.maximum(lam, 1e-15)
    return X, r, J


def _plucker_of_frames(a, b) -> np.ndarray:
    return np.stack([a[..., i] * b[..., k] - a[..., k] * b[..., i] for i, k in PLUCKER_PAIRS], axis=-1)


def _chart_coords(p: np.ndarray, chart):
    """Unknowns of the chart frame spanning the line with Pluecker vector ``p``."""
    L = line_from_plucker(tuple(p))
    M = np.array([L.a.to_complex(), L.b.to_complex()])
    i, k = chart
    S = M[:, [i, k]]
    R = np.linalg.solve(S, M)
    l, m = [c for c in range(4) if c not in chart]
    return np.array([R[0, l], R[0, m], R[1, l], R[1, m]])


def _best_chart(p: np.ndarray):
    idx = int(np.argmax(np.abs(p)))
    return PLUCKER_PAIRS[idx]


def _normalized_residual(F: NumericForm, p: np.ndarray) -> float:
    """Max restriction coefficient with unit-max coefficients and an orthonormal frame."""
    L = line_from_plucker(tuple(p))
    M = np.array([L.a.to_complex(), L.b.to_complex()]).T
    Q, _ = np.linalg.qr(M)
    d = F.degree
    n = d + 1
    w = np.exp(2j * np.pi * np.arange(n) / n)
    # coefficients in the basis s^(d-m) t^m are recovered exactly from the roots of unity
    P = Q[:, 0][None, :] + w[:, None] * Q[:, 1][None, :]
    g = np.fft.fft(F(P)) / n
    return float(np.max(np.abs(g)))


def rationalize_plucker(p: np.ndarray, max_denominator: int = 10**6, tol: float = 1e-9):
    """Exact Pluecker vector near ``p`` with small denominators, or ``None``.

    Each reasonably large coordinate is tried as the normalizing one; a
    candidate is kept only if it lies on the Klein quadric exactly.
    """
    p = np.asarray(p, dtype=complex)
    big = np.abs(p).max()
    for idx in np.argsort(-np.abs(p)):
        if abs(p[idx]) < 1e-3 * big:
            break
        v = p / p[idx]
        out = []
        for x in v:
            re = Fraction(float(x.real)).limit_denominator(max_denominator)
            im = Fraction(float(x.imag)).limit_denominator(max_denominator)
            if abs(float(re) - x.real) > tol or abs(float(im) - x.imag) > tol:
                break
            out.append(GR(re, im))
        else:
            if klein_form(out) == 0:
                return PluckerVec(tuple(out))
    return None


def _exact_confirm(f: PolyForm, p: np.ndarray, max_denominator: int):
    if not f.exact:
        return None
    q = rationalize_plucker(p, max_denominator)
    if q is None:
        return None
    if restrict_to_line(f, line_from_plucker(q)).is_zero():
        return q
    return None


def _cluster(P: np.ndarray, tol: float) -> list:
    """Greedy representatives of Pluecker vectors up to projective distance ``tol``."""
    if len(P) == 0:
        return []
    U = P / np.linalg.norm(P, axis=1, keepdims=True)
    close = np.abs(U.conj() @ U.T) > np.sqrt(1 - tol * tol)
    taken = np.zeros(len(P), dtype=bool)
    reps = []
    for i in range(len(P)):
        if taken[i]:
            continue
        reps.append(P[i])
        taken |= close[i]
    return reps


def find_lines(f: PolyForm, opts: LineFinderOptions | None = None, **kw) -> LineSearch:
    """Multistart search for the lines contained in ``{f = 0}``."""
    opts = opts or LineFinderOptions(**kw)
    d = f.degree
    if d < 1:
        raise ValueError("degree must be at least 1")
    F = NumericForm(f)
    n_chart = opts.n_starts or 200 * d
    rng = np.random.default_rng(opts.seed)
    candidates = []
    per_chart = {}
    for chart in CHARTS:
        X0 = opts.start_scale * (rng.standard_normal((n_chart, 4)) + 1j * rng.standard_normal((n_chart, 4))) / np.sqrt(2)
        X, r, _ = _lm(F, chart, X0, opts.max_iter)
        scale = 1 + np.max(np.abs(X), axis=1) ** d
        good = np.isfinite(r) & (r / scale < 1e-6) & (np.max(np.abs(X), axis=1) < 1e6)
        per_chart[chart] = int(good.sum())
        a, b = _frames(chart, X[good])
        for p in _plucker_of_frames(a, b):
            candidates.append(p)
    n_conv = len(candidates)
    reps = _cluster(np.array(candidates).reshape(-1, 6), 1e-4)
    by_chart: dict = {}
    for p in reps:
        chart = _best_chart(p)
        try:
            by_chart.setdefault(chart, []).append(_chart_coords(p, chart))
        except np.linalg.LinAlgError:
            continue
    polished = []
    for chart, xs in by_chart.items():
        X, _, J = _lm(F, chart, np.array(xs), opts.polish_iter, lam0=1e-12)
        a, b = _frames(chart, X)
        for q, Jq in zip(_plucker_of_frames(a, b), J):
            res = _normalized_residual(F, q)
            if res >= opts.accept_tol:
                continue
            s = np.linalg.svd(Jq, compute_uv=False)
            isolated = len(s) >= 4 and s[3] > 1e-7 * max(s[0], 1e-300)
            polished.append((res, q, chart, isolated))
    polished.sort(key=lambda t: t[0])
    found: list[LineFound] = []
    for res, q, chart, isolated in polished:
        pv = PluckerVec(tuple(q)).normalized()
        if any(pv.distance(L.plucker) < opts.dedup_tol for L in found):
            continue
        margin = twistor_margin(pv)
        exact_p = _exact_confirm(f, pv.to_complex(), opts.max_denominator)
        tw = bool(is_twistor(exact_p)) if exact_p is not None else margin < opts.twistor_tol
        found.append(LineFound(pv, res, margin, tw, bool(isolated), chart, exact_p))
    non_isolated = any(not L.isolated for L in found)
    log.info("find_lines: degree %d, %d starts, %d converged, %d distinct",
             d, n_chart * len(CHARTS), n_conv, len(found))
    return LineSearch(found, n_chart * len(CHARTS), n_conv, per_chart, non_isolated, opts)
