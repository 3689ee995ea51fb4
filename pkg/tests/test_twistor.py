import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given

from twistorlines.exactla import rank
from twistorlines.geometry import LineP3, ProjPoint3, e
from twistorlines.plucker import incidence, is_twistor
from twistorlines.quaternion import HPoint, Quaternion
from twistorlines.scalars import GR
from twistorlines.twistor import (
    fiber_through,
    j_point,
    pi_project,
    sample_base_points,
    sample_twistor_lines,
    twistor_fiber,
)

from conftest import gaussians, nonzero_gaussians, points



def quaternions():
    return st.builds(Quaternion, gaussians(), gaussians())


# quaternion algebra ---------------------------------------------------------------

@given(quaternions(), quaternions(), quaternions())
def test_quaternion_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(quaternions(), quaternions())
def test_conjugate_antimultiplicative(p, q):
    assert (p * q).conjugate() == q.conjugate() * p.conjugate()


@given(quaternions(), quaternions())
def test_norm_multiplicative(p, q):
    assert (p * q).norm() == p.norm() * q.norm()


@given(gaussians())
def test_j_commutation(c):
    j = Quaternion.j()
    assert j * Quaternion.from_complex(c) == Quaternion.from_complex(c.conjugate()) * j


def test_j_squared_is_minus_one():
    j = Quaternion.j()
    assert j * j == Quaternion(GR(-1), GR(0))


@given(quaternions().filter(lambda q: not q.is_zero()), quaternions(), quaternions())
def test_hpoint_left_quotient(lam, h1, h2):
    if h1.is_zero() and h2.is_zero():
        return
    assert HPoint(lam * h1, lam * h2) == HPoint(h1, h2)


# fibration ------------------------------------------------------------------------

def test_pi_of_e0():
    h = pi_project(e(0))
    assert h.normal_form() == ("A", Quaternion(GR(0), GR(0)))


def test_pi_example_with_division():
    # [0,1,-1,0] -> [j, -1]; chart coordinate j^{-1}(-1) = j
    h = pi_project(ProjPoint3((0, 1, -1, 0)))
    q = Quaternion.j().inverse() * Quaternion(GR(-1), GR(0))
    assert q == Quaternion.j()
    assert h == HPoint.chart(GR(0), GR(1))


@given(gaussians(), gaussians())
def test_pi_chart_normal_form(q1, q2):
    assert pi_project(ProjPoint3((1, 0, q1, q2))) == HPoint.chart(q1, q2)


@given(points(), nonzero_gaussians())
def test_pi_invariant_under_scaling(z, c):
    assert pi_project(z.scaled(c)) == pi_project(z)


def test_fiber_over_j():
    L = twistor_fiber((GR(0), GR(1)))
    assert L == LineP3(ProjPoint3((1, 0, 0, 1)), ProjPoint3((0, 1, -1, 0)))


def test_fiber_over_origin():
    assert twistor_fiber((GR(0), GR(0))) == LineP3(e(0), e(1))


def test_fiber_at_infinity():
    L = twistor_fiber(HPoint.infinity())
    assert L == LineP3(e(2), e(3))
    assert pi_project(L.a) == HPoint.infinity()


@given(gaussians(), gaussians(), gaussians(), gaussians())
def test_fiber_projects_to_base(q1, q2, s, t):
    h = HPoint.chart(q1, q2)
    L = twistor_fiber(h)
    assert pi_project(L.a) == h and pi_project(L.b) == h
    if s != 0 or t != 0:
        z = L.point(s, t)
        assert pi_project(z) == h
        assert L.contains_point(j_point(z))


def test_j_point_example():
    assert j_point(ProjPoint3((1, 0, 0, 1))) == ProjPoint3((0, 1, -1, 0))


@given(points())
def test_j_involution_and_fixed_point_free(z):
    assert j_point(j_point(z)) == z
    assert rank([z.z, j_point(z).z], 4).rank == 2


def test_fiber_through_examples():
    assert fiber_through(ProjPoint3((1, 0, 0, 1))) == twistor_fiber((GR(0), GR(1)))
    assert fiber_through(e(0)) == LineP3(e(0), e(1))


@given(points())
def test_fiber_through_matches_projection(z):
    assert pi_project(z) == pi_project(j_point(z))
    assert fiber_through(z) == twistor_fiber(pi_project(z))


@given(gaussians(), gaussians(), gaussians(), gaussians())
def test_distinct_fibers_disjoint(a, b, c, d):
    h, g = HPoint.chart(a, b), HPoint.chart(c, d)
    if h == g:
        return
    assert incidence(twistor_fiber(h), twistor_fiber(g)) != 0


def test_sample_one_line_is_twistor():
    (L,) = sample_twistor_lines(1, seed=0)
    assert L.exact and is_twistor(L)


@pytest.mark.parametrize("seed", range(5))
def test_sample_three_disjoint(seed):
    L = sample_twistor_lines(3, seed)
    assert all(incidence(L[i], L[k]) != 0 for i in range(3) for k in range(i))


def test_sampling_reproducible_and_distinct():
    a = sample_base_points(30, seed=7, height=2)
    assert a == sample_base_points(30, seed=7, height=2)
    assert len(set(a)) == 30


def test_sampling_rejects_bad_arguments():
    with pytest.raises(ValueError):
        sample_base_points(0)
    with pytest.raises(ValueError):
        sample_base_points(2, height=0)


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        ProjPoint3((0, 0, 0, 0))


def test_hpoint_json_roundtrip():
    h = HPoint.chart(GR(1, 2), GR(-3, 1))
    assert HPoint.from_json(h.to_json()) == h
    assert np.isfinite(complex(h.chart_coordinate().a))
