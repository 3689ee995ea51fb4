import numpy as np
import pytest
import sympy
from hypothesis import given
import hypothesis.strategies as st

from twistorlines.geometry import LineP3, PluckerVec, ProjPoint3, e, klein_form
from twistorlines.plucker import (
    incidence,
    is_smooth_quadric,
    is_twistor,
    j_plucker,
    line_through_meeting,
    lines_meet,
    quadric_through_three,
    ruling_lines_at,
    transversals,
    twistor_margin,
)
from twistorlines.polyring import j_form, restrict_to_line
from twistorlines.quaternion import HPoint
from twistorlines.scalars import GR
from twistorlines.twistor import j_point, sample_twistor_lines, twistor_fiber

from conftest import gaussians, lines, points


def sym(c):
    c = GR(c) if not isinstance(c, GR) else c
    return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)


def segre_ruling(lam):
    return LineP3(ProjPoint3((1, 0, lam, 0)), ProjPoint3((0, 1, 0, lam)))


def segre_opposite(mu):
    return LineP3(ProjPoint3((1, mu, 0, 0)), ProjPoint3((0, 0, 1, mu)))


def test_plucker_examples():
    L = LineP3(ProjPoint3((1, 0, 1, 0)), ProjPoint3((0, 1, 0, 1)))
    assert L.plucker == PluckerVec((1, 0, 1, -1, 0, 1))
    assert LineP3(e(0), e(1)).plucker == PluckerVec((1, 0, 0, 0, 0, 0))
    M = LineP3(ProjPoint3((1, -1, 0, 0)), ProjPoint3((0, 0, 1, -1)))
    assert M.plucker == PluckerVec((0, 1, -1, -1, 1, 0))


@given(gaussians(), gaussians())
def test_fiber_plucker_formula(q1, q2):
    L = twistor_fiber(HPoint.chart(q1, q2))
    norm = q1 * q1.conjugate() + q2 * q2.conjugate()
    want = PluckerVec((GR(1), -q2.conjugate(), q1.conjugate(), -q1, -q2, norm))
    assert L.plucker == want
    assert klein_form(L.plucker.p) == 0


@given(lines())
def test_plucker_on_klein_quadric(L):
    assert klein_form(L.plucker.p) == 0


@given(lines(), lines())
def test_incidence_is_determinant(L, M):
    m = sympy.Matrix([[sym(c) for c in P.z] for P in (L.a, L.b, M.a, M.b)])
    det = sympy.expand(m.det(method="bareiss"))
    w = sym(incidence(L, M))
    assert sympy.expand(w - det) == 0 or sympy.expand(w + det) == 0
    assert lines_meet(L, M) == (det == 0)


def test_incidence_examples():
    assert lines_meet(LineP3(e(0), e(1)), LineP3(e(1), e(2)))
    assert not lines_meet(LineP3(e(0), e(1)), LineP3(e(2), e(3)))


def test_j_plucker_examples():
    assert j_plucker(LineP3(e(0), e(2))) == PluckerVec((0, 0, 0, 0, 1, 0))
    assert j_plucker(LineP3(e(0), e(1))) == PluckerVec((1, 0, 0, 0, 0, 0))
    assert is_twistor(LineP3(e(0), e(1)))
    assert not is_twistor(LineP3(e(0), e(2)))


@given(lines())
def test_j_plucker_matches_point_involution(L):
    assert j_plucker(L) == LineP3(j_point(L.a), j_point(L.b)).plucker
    assert j_plucker(j_plucker(L)) == L.plucker


@given(points())
def test_line_through_point_and_image_is_twistor(z):
    L = LineP3(z, j_point(z))
    assert is_twistor(L)
    assert twistor_margin(L) < 1e-12


@given(gaussians(), gaussians())
def test_fibers_are_twistor(q1, q2):
    L = twistor_fiber(HPoint.chart(q1, q2))
    assert is_twistor(L) and twistor_margin(L) < 1e-12


def test_four_fibers_have_two_transversals():
    for s in range(5):
        ls = sample_twistor_lines(4, (40, s))
        res = transversals(ls)
        assert res.kind == "finite" and res.kernel_dim == 2
        assert res.count == 2
        for T in res.lines:
            assert all(lines_meet(T, L) for L in ls)
            assert not is_twistor(T)
        # the pair is exchanged by j
        assert j_plucker(res.lines[0]) == res.lines[1].plucker


def test_five_fibers_have_no_transversal():
    for s in range(5):
        res = transversals(sample_twistor_lines(5, (50, s)))
        assert res.kind == "finite" and res.count == 0


def test_one_ruling_has_infinitely_many_transversals():
    ls = [segre_ruling(GR(lam)) for lam in (0, 1, 2, -3)]
    res = transversals(ls)
    assert res.infinite and res.count == float("inf")
    # brute-force oracle: opposite-ruling lines meet all and lie in the witness span
    W = np.array([[complex(x) for x in w] for w in res.witness])
    for mu in range(-3, 4):
        M = segre_opposite(GR(mu))
        assert all(lines_meet(M, L) for L in ls)
        v = M.plucker.to_complex()
        coef, *_ = np.linalg.lstsq(W.T, v, rcond=None)
        assert np.linalg.norm(W.T @ coef - v) < 1e-10


def test_transversals_reject_meeting_lines():
    with pytest.raises(ValueError):
        transversals([LineP3(e(0), e(1)), LineP3(e(1), e(2)), segre_ruling(GR(5)), segre_ruling(GR(7))])


def test_known_transversal_pair_recovered():
    # every line below meets span(e0,e1) and span(e2,e3)
    ls = [LineP3(e(1), e(2)),
          LineP3(ProjPoint3((1, 1, 0, 0)), ProjPoint3((0, 0, 1, 1))),
          LineP3(ProjPoint3((1, 2, 0, 0)), ProjPoint3((0, 0, 1, 3))),
          LineP3(ProjPoint3((1, 5, 0, 0)), ProjPoint3((0, 0, 1, 7)))]
    res = transversals(ls)
    assert res.kind == "finite" and res.count == 2
    assert {T.plucker for T in res.lines} == {LineP3(e(0), e(1)).plucker, LineP3(e(2), e(3)).plucker}


@given(st.integers(0, 20))
def test_common_transversals_fewer_than_four(s):
    ls = sample_twistor_lines(3, (30, s))
    res = transversals(ls)
    assert res.infinite and res.kernel_dim == 3


def test_segre_quadric_through_three():
    Q = quadric_through_three(*[segre_ruling(GR(lam)) for lam in (0, 1, 2)])
    from twistorlines.polyring import PolyForm
    S = PolyForm.from_dict(2, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1})
    assert Q.proportionality(S) is not None
    assert is_smooth_quadric(Q)


def test_quadric_through_three_fibers_is_j_invariant_and_smooth():
    for s in range(5):
        ls = sample_twistor_lines(3, (31, s))
        Q = quadric_through_three(*ls)
        assert all(restrict_to_line(Q, L).is_zero() for L in ls)
        assert is_smooth_quadric(Q)
        assert j_form(Q).proportionality(Q) is not None


def test_ruling_lines_at_segre():
    from twistorlines.polyring import PolyForm
    S = PolyForm.from_dict(2, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1})
    pair = ruling_lines_at(S, e(0))
    assert {L.plucker for L in pair} == {LineP3(e(0), e(1)).plucker, LineP3(e(0), e(2)).plucker}


def test_ruling_lines_lie_on_quadric_and_meet_once():
    for s in range(3):
        ls = sample_twistor_lines(3, (32, s))
        Q = quadric_through_three(*ls)
        rng = np.random.default_rng(s)
        x = ls[0].point(GR(int(rng.integers(1, 9))), GR(int(rng.integers(1, 9))))
        A, B = ruling_lines_at(Q, x)
        assert restrict_to_line(Q, A).is_zero() and restrict_to_line(Q, B).is_zero()
        assert A != B and lines_meet(A, B)


def test_line_through_meeting():
    for s in range(5):
        ls = sample_twistor_lines(3, (33, s))
        x = ls[0].point(GR(2), GR(-1, 1))
        R = line_through_meeting(x, ls[1], ls[2])
        assert R.contains_point(x) and lines_meet(R, ls[1]) and lines_meet(R, ls[2])


def test_bezout_line_meets_quadric_twice_or_lies_on_it():
    # a line either lies on a quadric or meets it in a binary quadratic's roots
    ls = sample_twistor_lines(3, (60, 0))
    Q = quadric_through_three(*ls)
    for s in range(10):
        L = sample_twistor_lines(1, (61, s))[0]
        g = restrict_to_line(Q, L)
        assert g.degree == 2 and not g.is_zero()
