from fractions import Fraction

import pytest
from hypothesis import given

from twistorlines.scalars import (
    GR,
    gaussian_sqrt,
    parse_complex_literal,
    scalar_from_json,
    scalar_to_json,
)

from conftest import gaussians, nonzero_gaussians


@given(gaussians(), gaussians(), gaussians())
def test_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@given(nonzero_gaussians())
def test_inverse(a):
    assert a * a.inverse() == 1
    assert a / a == 1


@given(gaussians())
def test_norm_is_conj_product(a):
    assert a * a.conjugate() == GR(a.norm())


@pytest.mark.parametrize("text,re,im", [
    ("0", 0, 0),
    ("2", 2, 0),
    ("1/2+1/3i", Fraction(1, 2), Fraction(1, 3)),
    ("-3/4-i", Fraction(-3, 4), -1),
    ("i", 0, 1),
    ("-2/5i", 0, Fraction(-2, 5)),
])
def test_parse_literal(text, re, im):
    assert parse_complex_literal(text) == GR(re, im)


@pytest.mark.parametrize("text", ["0.5", "1e3", "1/2+0.1i", "abc", ""])
def test_parse_rejects_floats_and_garbage(text):
    with pytest.raises(ValueError):
        parse_complex_literal(text)


@given(gaussians())
def test_json_roundtrip(a):
    assert scalar_from_json(scalar_to_json(a)) == a


@given(gaussians())
def test_sqrt_of_square(a):
    r = gaussian_sqrt(a * a)
    assert r is not None and r * r == a * a


def test_sqrt_of_nonsquares():
    assert gaussian_sqrt(GR(2)) is None
    assert gaussian_sqrt(GR(0, 1)) is None
    assert gaussian_sqrt(GR(0, 2)) == GR(1, 1) or gaussian_sqrt(GR(0, 2)) == GR(-1, -1)


def test_float_complex_not_coerced():
    with pytest.raises(TypeError):
        GR.coerce(0.5 + 1j)
