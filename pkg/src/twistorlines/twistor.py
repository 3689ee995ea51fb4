"""The twistor fibration CP^3 -> HP^1 and its fixed-point-free involution.

``pi[z0, z1, z2, z3] = [z0 + z1 j, z2 + z3 j]`` with HP^1 a left quotient.
Over the chart point ``[1, q1 + q2 j]`` the fiber is the line spanned by
``(1, 0, q1, q2)`` and ``(0, 1, -conj(q2), conj(q1))``.
"""
from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from .geometry import LineP3, ProjPoint3, incidence_form
from .quaternion import HPoint, Quaternion
from .scalars import GR, all_exact, is_zero, random_gaussian

__all__ = [
    "pi_project",
    "twistor_fiber",
    "j_point",
    "fiber_through",
    "sample_twistor_lines",
    "sample_base_points",
    "fibers_over_real_line",
    "random_point",
]

log = logging.getLogger(__name__)


def _as_point(z) -> ProjPoint3:
    return z if isinstance(z, ProjPoint3) else ProjPoint3(tuple(z))


def pi_project(z) -> HPoint:
    """``[z0 + z1 j, z2 + z3 j]``; complex rescaling of ``z`` is a left scalar."""
    z = _as_point(z)
    return HPoint(Quaternion(z[0], z[1]), Quaternion(z[2], z[3]))


def twistor_fiber(h) -> LineP3:
    """The fiber of the fibration over ``h`` (an :class:`HPoint` or a ``(q1, q2)`` pair)."""
    if not isinstance(h, HPoint):
        q1, q2 = h
        h = HPoint.chart(q1, q2)
    if h.is_infinity():
        zero, one = (GR(0), GR(1)) if _exact_h(h) else (0j, 1 + 0j)
        return LineP3(ProjPoint3((zero, zero, one, zero)), ProjPoint3((zero, zero, zero, one)))
    q = h.chart_coordinate()
    q1, q2 = q.a, q.b
    one = GR(1) if _exact_h(h) else 1 + 0j
    zero = one - one
    return LineP3(ProjPoint3((one, zero, q1, q2)),
                  ProjPoint3((zero, one, -q2.conjugate(), q1.conjugate())))


def _exact_h(h: HPoint) -> bool:
    return all_exact((h.h1.a, h.h1.b, h.h2.a, h.h2.b))


def j_point(z) -> ProjPoint3:
    """``[-conj(z1), conj(z0), -conj(z3), conj(z2)]``."""
    z = _as_point(z)
    z0, z1, z2, z3 = z.z
    return ProjPoint3((-z1.conjugate(), z0.conjugate(), -z3.conjugate(), z2.conjugate()))


def fiber_through(z) -> LineP3:
    """The unique twistor line through ``z``: ``span(z, j(z))``."""
    z = _as_point(z)
    return LineP3(z, j_point(z))


def sample_base_points(k: int, seed=None, height: int = 10) -> list[HPoint]:
    """``k`` pairwise distinct chart points with Gaussian-rational coordinates."""
    if k < 1 or height < 1:
        raise ValueError("need k >= 1 and height >= 1")
    rng = np.random.default_rng(seed)
    points: list[HPoint] = []
    seen = set()
    while len(points) < k:
        h = HPoint.chart(random_gaussian(rng, height), random_gaussian(rng, height))
        if h in seen:
            log.debug("resampling coincident base point")
            continue
        seen.add(h)
        points.append(h)
    return points


def sample_twistor_lines(k: int, seed=None, height: int = 10) -> list[LineP3]:
    """``k`` general twistor lines: fibers over random bounded-height chart points.

    Distinct fibers never meet, so the result is pairwise disjoint; this is
    asserted exactly before returning.
    """
    lines = [twistor_fiber(h) for h in sample_base_points(k, seed, height)]
    for i in range(k):
        for m in range(i):
            if incidence_form(lines[i].plucker.p, lines[m].plucker.p) == 0:
                raise AssertionError("distinct twistor fibers met; fibration is broken")
    return lines


def fibers_over_real_line(c: Quaternion, u: Quaternion, params: Sequence) -> list[LineP3]:
    """Fibers over the points ``c + r u`` (``r`` real) of a real line in the chart.

    All of them lie on one smooth quadric, in one of its rulings: the map
    ``q -> q u + c`` comes from a complex-linear map of C^4 sending the
    family over the real axis onto this one, and the fibers over real ``r``
    sit on ``z0 z3 - z1 z2 = 0``.
    """
    out = []
    for r in params:
        if isinstance(r, complex) or (hasattr(r, "imag") and not is_zero(r.imag, 0.0)):
            raise ValueError("parameters must be real")
        out.append(twistor_fiber((c.a + u.a * r, c.b + u.b * r)))
    return out


def random_point(rng: np.random.Generator, height: int = 10) -> ProjPoint3:
    """A random exact point with Gaussian-rational coordinates."""
    while True:
        z = tuple(random_gaussian(rng, height) for _ in range(4))
        if any(x != 0 for x in z):
            return ProjPoint3(z)
