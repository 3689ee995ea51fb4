import hypothesis.strategies as st
import pytest
import sympy
from hypothesis import given

from twistorlines.geometry import LineP3, ProjPoint3, e
from twistorlines.polyring import (
    BinaryForm,
    PolyForm,
    binary_gcd,
    j_form,
    monomial_index,
    monomials,
    partials,
    restrict_to_line,
    substitute,
)
from twistorlines.scalars import GR
from twistorlines.twistor import j_point

from conftest import forms, gaussians, lines, points

Z = sympy.symbols("z0:4")
S, T = sympy.symbols("s t")


def to_expr(f: PolyForm):
    out = 0
    for alpha, c in f.terms():
        coef = sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)
        out += coef * sympy.prod([Z[i] ** a for i, a in enumerate(alpha)])
    return out


def gr_to_sym(c):
    return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)


@pytest.mark.parametrize("d", range(13))
def test_index_bijection(d):
    mons = monomials(d)
    idx = monomial_index(d)
    assert len(mons) == (d + 1) * (d + 2) * (d + 3) // 6
    assert all(idx[mons[k]] == k for k in range(len(mons)))
    assert mons[0] == (d, 0, 0, 0) and mons[-1] == (0, 0, 0, d)


def test_restriction_examples(segre, fermat):
    assert restrict_to_line(segre, LineP3(e(0), e(1))).is_zero()
    z0sq = PolyForm.from_dict(2, {(2, 0, 0, 0): 1})
    assert restrict_to_line(z0sq, LineP3(e(0), e(1))) == BinaryForm((1, 0, 0))
    L = LineP3(ProjPoint3((1, -1, 0, 0)), ProjPoint3((0, 0, 1, -1)))
    assert restrict_to_line(fermat, L).is_zero()


@given(st.integers(0, 4).flatmap(forms), lines())
def test_restriction_matches_sympy_expansion(f, L):
    sub = {Z[i]: S * gr_to_sym(L.a.z[i]) + T * gr_to_sym(L.b.z[i]) for i in range(4)}
    poly = sympy.Poly(sympy.expand(to_expr(f).subs(sub, simultaneous=True)), S, T)
    g = restrict_to_line(f, L)
    d = f.degree
    for m, c in enumerate(g.coeffs):
        assert sympy.simplify(poly.coeff_monomial(S ** (d - m) * T ** m) - gr_to_sym(c)) == 0


@given(st.integers(0, 3).flatmap(forms), st.integers(0, 2).flatmap(forms), lines())
def test_restriction_multiplicative(f, g, L):
    assert restrict_to_line(f * g, L) == restrict_to_line(f, L) * restrict_to_line(g, L)


@given(st.integers(0, 3).flatmap(forms), st.integers(0, 3).flatmap(forms), points())
def test_evaluation_multiplicative(f, g, z):
    assert (f * g).evaluate(z.z) == f.evaluate(z.z) * g.evaluate(z.z)


def test_partials_examples(segre):
    z0sq = PolyForm.from_dict(2, {(2, 0, 0, 0): 1})
    assert partials(z0sq) == (PolyForm.from_dict(1, {(1, 0, 0, 0): 2}),) + (PolyForm.zero(1),) * 3
    want = [{(0, 0, 0, 1): 1}, {(0, 0, 1, 0): -1}, {(0, 1, 0, 0): -1}, {(1, 0, 0, 0): 1}]
    assert partials(segre) == tuple(PolyForm.from_dict(1, w) for w in want)


def test_partials_of_constant_rejected():
    with pytest.raises(ValueError):
        PolyForm(0, (GR(1),)).partials()


@given(st.integers(1, 4).flatmap(forms), points())
def test_euler_relation(f, z):
    total = sum((z.z[i] * g.evaluate(z.z) for i, g in enumerate(f.partials())), GR(0))
    assert total == f.evaluate(z.z) * f.degree


@given(st.integers(1, 3).flatmap(forms), st.integers(1, 2).flatmap(forms), st.integers(0, 3))
def test_leibniz(f, g, i):
    assert (f * g).partial(i) == f.partial(i) * g + f * g.partial(i)


@given(st.integers(1, 3).flatmap(forms), st.integers(0, 3))
def test_partial_linear(f, i):
    assert (f + f.scale(GR(2, 1))).partial(i) == f.partial(i) + f.partial(i).scale(GR(2, 1))


def test_j_form_examples(fermat):
    z0 = PolyForm.from_dict(1, {(1, 0, 0, 0): 1})
    assert j_form(z0) == PolyForm.from_dict(1, {(0, 1, 0, 0): 1})
    z0z1 = PolyForm.from_dict(2, {(1, 1, 0, 0): 1})
    assert j_form(z0z1) == z0z1.scale(-1)
    assert j_form(z0z1).proportionality(z0z1) == -1
    jf = j_form(fermat)
    assert jf == PolyForm.from_dict(3, {(3, 0, 0, 0): -1, (0, 3, 0, 0): 1, (0, 0, 3, 0): -1, (0, 0, 0, 3): 1})
    assert jf.proportionality(fermat) is None


@given(st.integers(1, 5).flatmap(forms))
def test_j_form_square(f):
    assert j_form(j_form(f)) == f.scale((-1) ** f.degree)


@given(st.integers(1, 5).flatmap(forms), points())
def test_j_form_pairing_identity(f, z):
    sign = (-1) ** f.degree
    assert f.evaluate(j_point(z).z) == sign * j_form(f).evaluate(z.z).conjugate()


@given(st.integers(1, 3).flatmap(forms), st.integers(1, 3).flatmap(forms), gaussians())
def test_j_form_real_linear(f, g, c):
    if f.degree != g.degree:
        return
    assert j_form(f + g) == j_form(f) + j_form(g)
    assert j_form(f.scale(c)) == j_form(f).scale(c.conjugate())


def test_binary_gcd_examples(segre):
    s2, st_ = BinaryForm((1, 0, 0)), BinaryForm((0, 1, 0))
    assert binary_gcd(s2, st_) == BinaryForm((1, 0))
    assert binary_gcd(BinaryForm((1, 0, 1)), BinaryForm((1, 1))).degree == 0
    L = LineP3(e(0), e(1))
    assert binary_gcd(*[restrict_to_line(p, L) for p in segre.partials()]).degree == 0


def test_binary_gcd_root_at_infinity():
    # t (s - t) and t^2: common factor t
    assert binary_gcd(BinaryForm((0, 1, -1)), BinaryForm((0, 0, 1))) == BinaryForm((0, 1))


def test_binary_gcd_all_zero_rejected():
    with pytest.raises(ValueError):
        binary_gcd(BinaryForm((0, 0)))


@given(st.lists(gaussians(4), min_size=2, max_size=4), st.lists(gaussians(4), min_size=1, max_size=3),
       st.lists(gaussians(4), min_size=1, max_size=3))
def test_binary_gcd_matches_sympy(common, a, b):
    g = BinaryForm(tuple(common))
    f1, f2 = g * BinaryForm(tuple(a)), g * BinaryForm(tuple(b))
    if f1.is_zero() or f2.is_zero():
        return
    x = sympy.symbols("x")

    def dehom(f):
        return sum(gr_to_sym(c) * x ** (f.degree - m) for m, c in enumerate(f.coeffs))

    want = sympy.gcd(sympy.Poly(dehom(f1), x, extension=sympy.I), sympy.Poly(dehom(f2), x, extension=sympy.I))
    e1 = next(m for m, c in enumerate(f1.coeffs) if c != 0)
    e2 = next(m for m, c in enumerate(f2.coeffs) if c != 0)
    assert binary_gcd(f1, f2).degree == want.degree() + min(e1, e2)


def test_surface_json_roundtrip(fermat):
    doc = fermat.to_json()
    assert doc["order"] == "gradedlex" and doc["degree"] == 3
    assert {tuple(r["alpha"]) for r in doc["coeffs"]} == {(3, 0, 0, 0), (0, 3, 0, 0), (0, 0, 3, 0), (0, 0, 0, 3)}
    assert PolyForm.from_json(doc) == fermat


def test_unknown_order_rejected(fermat):
    doc = dict(fermat.to_json(), order="lex")
    with pytest.raises(ValueError):
        PolyForm.from_json(doc)


@given(st.integers(1, 3).flatmap(forms), gaussians(), gaussians(), gaussians())
def test_substitute_agrees_with_evaluation(f, x, y, w):
    V = [(GR(1), GR(2), GR(0), GR(-1)), (GR(0), GR(1), GR(3), GR(1)), (GR(2), GR(0), GR(1), GR(1))]
    F = substitute(f, V)
    z = tuple(x * a + y * b + w * c for a, b, c in zip(*V))
    assert F.evaluate((x, y, w)) == f.evaluate(z)
