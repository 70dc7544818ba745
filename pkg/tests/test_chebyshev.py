from fractions import Fraction

import pytest

from qca.arcat import build_data
from qca.character import x_delta
from qca.chebyshev import IntPolynomial, cheb_first, cheb_second, eval_at
from qca.torus import TorusElement


def test_first_kind_coefficients():
    assert cheb_first(0).coeffs == (1,)
    assert cheb_first(2).coeffs == (-2, 0, 1)
    assert cheb_first(4).coeffs == (2, 0, -4, 0, 1)
    assert str(cheb_first(4)) == "x^4 - 4x^2 + 2"


def test_second_kind_coefficients():
    assert cheb_second(2).coeffs == (-1, 0, 1)
    assert cheb_second(3).coeffs == (0, -2, 0, 1)


@pytest.mark.parametrize("m", range(1, 10))
def test_closed_forms(m):
    # x = t + 1/t: F_m(x) = t^m + t^-m and S_m(x) = (t^{m+1} - t^{-m-1}) / (t - 1/t)
    for t in (Fraction(3), Fraction(-2, 5)):
        x = t + 1 / t
        assert cheb_first(m)(x) == t ** m + t ** -m
        assert cheb_second(m)(x) == (t ** (m + 1) - t ** (-m - 1)) / (t - 1 / t)


def test_first_and_second_kind_relation():
    for m in range(2, 8):
        assert cheb_first(m) == cheb_second(m) - cheb_second(m - 2)


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        cheb_first(-1)


def test_evaluation_in_the_torus():
    td = build_data(2)
    xd = x_delta(td)
    one = TorusElement.one(td.lam)
    assert eval_at(cheb_first(2), xd) == xd * xd - one.scale(2)
    assert eval_at(IntPolynomial((0,)), xd).is_zero()
    # F_m(X_delta) X_delta = F_{m+1} + F_{m-1} for m >= 2
    for m in (2, 3):
        assert eval_at(cheb_first(m), xd) * xd == eval_at(cheb_first(m + 1), xd) + eval_at(cheb_first(m - 1), xd)
