"""The thirteen acceptance checks, runnable from tests, scripts and ``twistor verify``.

Each check returns a :class:`CheckResult`; ``quick`` runs the exact
arithmetic checks, ``full`` adds the numerical ones (singularity probes and
line enumeration).
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .analysis import (
    collinearity_report,
    find_lines,
    irreducibility_slice_certificate,
    singularity_probe,
    smooth_along_line,
)
from .geometry import LineP3, ProjPoint3
from .linefinder import LineFinderOptions
from .linsys import (
    Configuration,
    augment_j_pairs,
    cohomology,
    general_member,
    linear_system,
    normalize_j_invariant,
    nu,
    nu_closed_form,
    planar_cohomology,
)
from .plucker import (
    is_smooth_quadric,
    is_twistor,
    j_plucker,
    line_through_meeting,
    lines_meet,
    quadric_through_three,
    ruling_lines_at,
    transversals,
)
from .polyring import PolyForm, j_form, monomials, restrict_to_line
from .quaternion import HPoint, Quaternion
from .scalars import GR, random_gaussian
from .twistor import (
    fibers_over_real_line,
    j_point,
    pi_project,
    random_point,
    sample_base_points,
    sample_twistor_lines,
    twistor_fiber,
)

__all__ = ["CheckResult", "CHECKS", "QUICK", "run_checks", "fermat_cubic", "random_form"]

log = logging.getLogger(__name__)


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str = ""
    elapsed: float = 0.0
    data: dict = field(default_factory=dict, repr=False)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.number:2d} {self.name} ({self.elapsed:.1f}s): {self.detail}"


def fermat_cubic() -> PolyForm:
    return PolyForm.from_dict(3, {(3, 0, 0, 0): 1, (0, 3, 0, 0): 1, (0, 0, 3, 0): 1, (0, 0, 0, 3): 1})


def random_form(d: int, rng, height: int = 5) -> PolyForm:
    return PolyForm(d, tuple(random_gaussian(rng, height) for _ in monomials(d)))


def _random_line(rng, height: int = 10) -> LineP3:
    while True:
        a, b = random_point(rng, height), random_point(rng, height)
        if a != b:
            return LineP3(a, b)


# 1 ------------------------------------------------------------------------------
def check_nu() -> CheckResult:
    first = [nu("plain", d) for d in range(1, 6)]
    closed = all(nu("plain", d) == nu_closed_form("plain", d) for d in range(1, 101))
    closed_s = all(nu("smooth", d) == nu_closed_form("smooth", d) for d in range(3, 101))
    below = all(nu("plain", d) < d * d for d in range(2, 101))
    ok = first == [1, 3, 4, 6, 9] and closed and closed_s and below
    return CheckResult(1, "nu tables", ok,
                       f"nu(1..5)={first}, closed forms {closed and closed_s}, nu(d)<d^2 {below}")


# 2 ------------------------------------------------------------------------------
def check_involutions(seed: int = 2) -> CheckResult:
    rng = np.random.default_rng(seed)
    pts = [random_point(rng) for _ in range(100)]
    jj_point = all(j_point(j_point(z)) == z for z in pts)
    fixed_free = all(j_point(z) != z for z in pts)
    lines = [_random_line(rng) for _ in range(100)]
    jj_pl = all(j_plucker(j_plucker(L)) == L.plucker for L in lines)
    consistent = all(j_plucker(L) == LineP3(j_point(L.a), j_point(L.b)).plucker for L in lines)
    jj_form = True
    pairing = True
    for n in range(100):
        d = 1 + n % 5
        f = random_form(d, rng)
        sign = 1 if d % 2 == 0 else -1
        if j_form(j_form(f)) != f.scale(sign):
            jj_form = False
        z = pts[n]
        if f.evaluate(j_point(z).z) != sign * j_form(f).evaluate(z.z).conjugate():
            pairing = False
    ok = jj_point and fixed_free and jj_pl and consistent and jj_form and pairing
    return CheckResult(2, "involution laws", ok,
                       f"j_point^2 {jj_point}, fixed-point-free {fixed_free}, j_plucker^2 {jj_pl}, "
                       f"point/Pluecker consistent {consistent}, j_form^2=(-1)^d {jj_form}, pairing {pairing}")


# 3 ------------------------------------------------------------------------------
def check_fibers(seed: int = 3) -> CheckResult:
    hs = sample_base_points(100, seed)
    fibers = [twistor_fiber(h) for h in hs]
    projects = all(pi_project(L.a) == h and pi_project(L.b) == h for L, h in zip(fibers, hs))
    disjoint = all(not lines_meet(fibers[i], fibers[k]) for i in range(100) for k in range(i))
    tw = all(is_twistor(L) for L in fibers)
    rng = np.random.default_rng(seed)
    non = all(not is_twistor(_random_line(rng)) for _ in range(100))
    ok = projects and disjoint and tw and non
    return CheckResult(3, "fiber correctness", ok,
                       f"projection {projects}, pairwise disjoint {disjoint}, fibers twistor {tw}, random lines not twistor {non}")


# 4 ------------------------------------------------------------------------------
def check_maximal_rank(seeds: int = 20, degrees=range(2, 7)) -> CheckResult:
    trials = resamples = failures = 0
    for d in degrees:
        cols = comb(d + 3, 3)
        for k in range(1, nu("plain", d) + 1):
            want = (max(0, cols - k * (d + 1)), max(0, k * (d + 1) - cols))
            for s in range(seeds):
                trials += 1
                for attempt in range(5):
                    lines = sample_twistor_lines(k, (d, k, s, attempt))
                    rep = cohomology(Configuration(tuple(lines)), d)
                    if (rep.h0, rep.h1) == want:
                        break
                    resamples += 1
                    log.warning("degenerate draw d=%d k=%d seed=%d: (h0,h1)=(%d,%d)", d, k, s, rep.h0, rep.h1)
                else:
                    failures += 1
    rate = resamples / trials
    ok = failures == 0 and rate < 0.01
    return CheckResult(4, "cohomology maximal rank", ok,
                       f"{trials} trials, {resamples} resamples ({100 * rate:.2f}%), {failures} failures",
                       data={"trials": trials, "resamples": resamples})


# 5 ------------------------------------------------------------------------------
def check_fat_point(seed: int = 5) -> CheckResult:
    rng = np.random.default_rng(seed)
    vals = []
    for _ in range(10):
        c = Configuration(fat_points=(random_point(rng),))
        vals.append((cohomology(c, 1).h0, cohomology(c, 2).h0))
    ok = all(v == (0, 6) for v in vals)
    return CheckResult(5, "fat point in low degree", ok, f"(h0(1), h0(2)) values: {sorted(set(vals))}")


# 6 ------------------------------------------------------------------------------
def point_on_common_transversal(lines, rng, height: int = 10) -> ProjPoint3:
    """A point of a line meeting the first three lines, off all of them."""
    L1, L2, L3 = lines[:3]
    while True:
        x = L1.point(random_gaussian(rng, height), random_gaussian(rng, height))
        if L2.contains_point(x) or L3.contains_point(x):
            continue
        R = line_through_meeting(x, L2, L3)
        q = R.point(random_gaussian(rng, height), random_gaussian(rng, height))
        if not any(L.contains_point(q) for L in lines):
            return q


def check_transversal_dichotomy(seeds: int = 10) -> CheckResult:
    generic, special = [], []
    for s in range(seeds):
        lines = tuple(sample_twistor_lines(3, (6, s)))
        rng = np.random.default_rng((6, s))
        q = random_point(rng)
        generic.append(cohomology(Configuration(lines, (q,)), 3).h1)
        q = point_on_common_transversal(lines, rng)
        special.append(cohomology(Configuration(lines, (q,)), 3).h1)
    ok = all(h == 0 for h in generic) and all(h == 1 for h in special)
    return CheckResult(6, "fat point on a transversal", ok, f"generic h1 {generic}, on transversal h1 {special}")


# 7 ------------------------------------------------------------------------------
def check_fat_point_on_line(seeds: int = 5) -> CheckResult:
    out = {}
    for k in (2, 3):
        vals = []
        for s in range(seeds):
            lines = tuple(sample_twistor_lines(k, (7, k, s)))
            rng = np.random.default_rng((7, k, s))
            q = lines[0].point(random_gaussian(rng, 10), random_gaussian(rng, 10))
            for x in range(k, k + 4):
                vals.append(cohomology(Configuration(lines, (q,)), x).h1)
        out[k] = vals
    ok = all(h == 0 for v in out.values() for h in v)
    return CheckResult(7, "fat point on a line", ok, f"h1 values k=2: {set(out[2])}, k=3: {set(out[3])}")


# 8 ------------------------------------------------------------------------------
def check_planar_boundary(seed: int = 8) -> CheckResult:
    rng = np.random.default_rng(seed)
    res = {}
    for s in (4, 5):
        p = [random_gaussian(rng, 10) for _ in range(3)]
        r = [random_gaussian(rng, 10) for _ in range(3)]
        collinear = [tuple(a + GR(lam) * b for a, b in zip(p, r)) for lam in range(s)]
        general = [tuple(random_gaussian(rng, 10) for _ in range(3)) for _ in range(s)]
        res[s] = (planar_cohomology(collinear, s - 2)[1], planar_cohomology(general, s - 2)[1])
    ok = all(v == (1, 0) for v in res.values())
    return CheckResult(8, "collinear points in the plane", ok,
                       f"(collinear h1, general h1): s=4 {res[4]}, s=5 {res[5]}")


# 9 ------------------------------------------------------------------------------
def check_unique_quadric(seeds: int = 5, samples: int = 10) -> CheckResult:
    ok = True
    notes = []
    for s in range(seeds):
        lines = tuple(sample_twistor_lines(3, (9, s)))
        rep = cohomology(Configuration(lines), 2)
        Q = linear_system(Configuration(lines), 2).basis[0]
        smooth = is_smooth_quadric(Q)
        a = j_form(Q).proportionality(Q)
        rng = np.random.default_rng((9, s))
        mates = []
        for n in range(samples):
            i = n % 3
            x = lines[i].point(random_gaussian(rng, 10), random_gaussian(rng, 10))
            pair = ruling_lines_at(Q, x)
            others = [lines[m] for m in range(3) if m != i]
            same_ruling = [M for M in pair if not any(lines_meet(M, o) for o in others)]
            mates.append(len(same_ruling) == 1 and is_twistor(same_ruling[0]) and same_ruling[0] == lines[i])
        good = rep.h0 == 1 and smooth and a is not None and all(mates)
        ok &= good
        notes.append(good)
    return CheckResult(9, "unique quadric through three fibers", ok, f"per-seed results {notes}")


# 10 -----------------------------------------------------------------------------
def ruling_fibers(rng, n: int = 5, height: int = 10) -> list:
    """``n`` twistor fibers in one ruling of a j-invariant quadric (fibers over a real line of the chart)."""
    c = Quaternion(random_gaussian(rng, height), random_gaussian(rng, height))
    while True:
        u = Quaternion(random_gaussian(rng, height), random_gaussian(rng, height))
        if not u.is_zero():
            break
    params = []
    while len(params) < n:
        r = random_gaussian(rng, height).re
        if r not in params:
            params.append(r)
    return fibers_over_real_line(c, u, params)


def check_collinearity(seeds: int = 20) -> CheckResult:
    general = []
    for s in range(seeds):
        rep = collinearity_report(sample_twistor_lines(5, (10, s)))
        general.append(rep.transversals.count == 0 and rep.h0_cubic == 0)
    rng = np.random.default_rng(10)
    special = []
    for _ in range(3):
        lines = ruling_fibers(rng)
        Q = quadric_through_three(*lines[:3])
        on_q = all(restrict_to_line(Q, L).is_zero() for L in lines)
        jinv = j_form(Q).proportionality(Q) is not None
        rep = collinearity_report(lines)
        special.append(on_q and jinv and rep.transversals.infinite and rep.h0_cubic >= 1)
    ok = all(general) and all(special)
    return CheckResult(10, "collinearity and the cubic criterion", ok,
                       f"general: {sum(general)}/{len(general)} with no transversal and h0=0; "
                       f"ruling: {sum(special)}/{len(special)} infinite with h0>=1")


# 11 -----------------------------------------------------------------------------
def planted_quartic(seed: int = 11):
    lines = tuple(sample_twistor_lines(6, (11, seed)))
    basis = linear_system(Configuration(lines), 4)
    return lines, basis, general_member(basis, (11, seed))


def check_degree_four(seed: int = 0) -> CheckResult:
    lines6, basis6, f6 = planted_quartic(seed)
    irr = irreducibility_slice_certificate(f6, seed)
    lines4 = tuple(sample_twistor_lines(4, (11, 4, seed)))
    f4 = general_member(linear_system(Configuration(lines4), 4), (11, 4, seed))
    smooth4 = [smooth_along_line(f4, L) for L in lines4]
    cand4 = singularity_probe(f4, 800, seed)
    lines1 = tuple(sample_twistor_lines(1, (11, 1, seed)))
    f1 = general_member(linear_system(Configuration(lines1), 4), (11, 1, seed))
    cand1 = singularity_probe(f1, 800 * 4, seed)
    ok = len(basis6) == 5 and irr.certified and all(smooth4) and not cand1
    return CheckResult(11, "degree four surfaces", ok,
                       f"k=6: h0={len(basis6)}, irreducibility {irr.status}; k=4: smooth along lines {smooth4}, "
                       f"{len(cand4)} singular candidates; k=1: {len(cand1)} candidates after 3200 starts")


# 12 -----------------------------------------------------------------------------
def check_line_finder(seeds: int = 20) -> CheckResult:
    f = fermat_cubic()
    good = 0
    counts = []
    for s in range(seeds):
        r = find_lines(f, LineFinderOptions(seed=s))
        counts.append(len(r))
        if len(r) == 27 and all(L.residual < 1e-8 for L in r):
            good += 1
    rate = good / seeds
    lines6, _, f6 = planted_quartic(0)
    r = find_lines(f6, LineFinderOptions(seed=0))
    planted = all(any(x.plucker.distance(L.plucker) < 1e-8 for x in r) for L in lines6)
    tw = [x for x in r if x.is_twistor]
    confirmed = all(x.exactly_confirmed and is_twistor(x.exact_plucker) for x in tw)
    ok = rate >= 0.95 and planted and len(r) <= 64 and len(tw) >= 6 and confirmed
    return CheckResult(12, "line finder calibration", ok,
                       f"Fermat: 27 lines in {good}/{seeds} seeds (counts {sorted(set(counts))}); "
                       f"quartic: {len(r)} lines, {len(tw)} twistor, planted recovered {planted}, "
                       f"twistor flags exactly confirmed {confirmed}")


# 13 -----------------------------------------------------------------------------
def check_j_invariant_extraction(seed: int = 13) -> CheckResult:
    lines = tuple(sample_twistor_lines(6, (13, seed)))
    config = Configuration(lines)
    h0 = cohomology(config, 4).h0
    aug = augment_j_pairs(config, 4, np.random.default_rng((13, seed)), h0=h0)
    h0_aug = cohomology(aug, 4).h0
    f = normalize_j_invariant(linear_system(aug, 4).basis[0])
    jinv = j_form(f) == f
    contains = all(restrict_to_line(f, L).is_zero() for L in lines)
    ok = h0 == 5 and h0 % 2 == 1 and h0_aug == 1 and len(aug.simple_points) == 4 and jinv and contains
    return CheckResult(13, "j-invariant quartic through six fibers", ok,
                       f"h0={h0}, after {len(aug.simple_points) // 2} pairs h0={h0_aug}, "
                       f"j(f)=f {jinv}, contains fibers {contains}")


CHECKS = {
    1: check_nu,
    2: check_involutions,
    3: check_fibers,
    4: check_maximal_rank,
    5: check_fat_point,
    6: check_transversal_dichotomy,
    7: check_fat_point_on_line,
    8: check_planar_boundary,
    9: check_unique_quadric,
    10: check_collinearity,
    11: check_degree_four,
    12: check_line_finder,
    13: check_j_invariant_extraction,
}
QUICK = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 13)


def run_check(n: int) -> CheckResult:
    t = time.perf_counter()
    try:
        res = CHECKS[n]()
    except Exception as exc:  # a crash is a failed check, reported by name
        log.exception("check %d raised", n)
        res = CheckResult(n, CHECKS[n].__name__, False, f"raised {type(exc).__name__}: {exc}")
    res.elapsed = time.perf_counter() - t
    return res


def run_checks(level: str = "full", numbers=None, echo=print) -> list[CheckResult]:
    if numbers is None:
        numbers = QUICK if level == "quick" else tuple(CHECKS)
    out = []
    for n in numbers:
        res = run_check(n)
        if echo:
            echo(res.line())
        out.append(res)
    return out
