"""Exact rank, nullspace and determinant against sympy as an independent oracle."""
import hypothesis.strategies as st
import sympy
from hypothesis import given

from twistorlines import exactla
from twistorlines.scalars import GR

from conftest import gaussians


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(x.re.numerator, x.re.denominator)
                          + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator) for x in r] for r in m])


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # low-rank products are common enough to exercise the elimination path
    k = draw(st.integers(1, min(r, c)))
    A = [[draw(gaussians(3)) for _ in range(k)] for _ in range(r)]
    B = [[draw(gaussians(3)) for _ in range(c)] for _ in range(k)]
    return [[sum((A[i][m] * B[m][j] for m in range(k)), GR(0)) for j in range(c)] for i in range(r)]


@given(matrices())
def test_rank_matches_sympy(m):
    assert exactla.rank(m).rank == to_sympy(m).rank()


@given(matrices())
def test_nullspace_is_kernel(m):
    basis = exactla.nullspace(m)
    assert len(basis) == len(m[0]) - to_sympy(m).rank()
    for v in basis:
        assert all(sum((a * x for a, x in zip(row, v)), GR(0)) == 0 for row in m)
    if basis:
        assert exactla.rank(basis).rank == len(basis)


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(gaussians(5), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_det_matches_sympy(m):
    want = sympy.simplify(to_sympy(m).det())
    got = exactla.det(m)
    assert sympy.simplify(want - (sympy.Rational(got.re.numerator, got.re.denominator)
                                  + sympy.I * sympy.Rational(got.im.numerator, got.im.denominator))) == 0


def test_certificate_and_fallback_paths():
    full = [[GR(1), GR(2)], [GR(3), GR(4)]]
    assert exactla.rank(full) == exactla.RankResult(2, "modular-certificate")
    deficient = [[GR(1), GR(2)], [GR(2), GR(4)]]
    assert exactla.rank(deficient) == exactla.RankResult(1, "bareiss")


def test_empty_matrix_nullspace():
    assert len(exactla.nullspace([], 3)) == 3
