from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wresidue.exact import (A, B, ONE, XI, BoundaryRational, GaussianRational, NonDecaying,
                            NotIntegrable, P_ONE, P_ZERO, ParamDegreeError, ParamPoly,
                            line_integral, principal_part_upper, rat_arith,
                            rat_diff)
from wresidue.oracle import line_quadrature, numeric_pi_plus

from strategies import gaussians, param_polys, rationals

AB = [(0.3, -0.7), (-1.2, 0.5)]
XS = np.array([-2.0, -0.3, 0.0, 0.8, 3.5])


def close(x, y, tol=1e-9):
    x, y = np.asarray(x, dtype=complex), np.asarray(y, dtype=complex)
    return bool(np.all(np.abs(x - y) <= tol * np.maximum(1.0, np.abs(y))))


# -- GaussianRational ---------------------------------------------------------

def test_gaussian_field_ops():
    z = GaussianRational(Fraction(1, 2), 3)
    assert z * z.inverse() == 1
    assert GaussianRational(0, 1) ** 2 == -1
    assert GaussianRational(0, 1) ** -1 == GaussianRational(0, -1)
    assert complex(z / 2) == complex(0.25, 1.5)
    with pytest.raises(ZeroDivisionError):
        GaussianRational(0).inverse()


@given(gaussians, gaussians, gaussians)
def test_gaussian_matches_complex(x, y, z):
    assert close(x * (y + z), complex(x) * (complex(y) + complex(z)))
    assert x * (y + z) == x * y + x * z


# -- ParamPoly ------------------------------------------------------------------

def test_param_poly_degree_cap():
    assert (A * B).coefficient(1, 1) == 1
    with pytest.raises(ParamDegreeError):
        A * A
    with pytest.raises(ParamDegreeError):
        A ** 2


def test_param_poly_evaluate_and_substitute():
    p = A * 3 - B * Fraction(1, 2) + 1
    assert p.evaluate(2, 4) == 5
    assert p.substitute(a=Fraction(1, 3)) == ParamPoly({(0, 0): 2, (0, 1): Fraction(-1, 2)})
    assert P_ZERO == 0 and P_ONE == 1 and not P_ZERO


@given(param_polys(), param_polys(), st.integers(-5, 5), st.integers(-5, 5))
def test_param_poly_evaluation_is_a_homomorphism(p, q, a, b):
    assert (p + q).evaluate(a, b) == p.evaluate(a, b) + q.evaluate(a, b)
    assert (p - q).evaluate(a, b) == p.evaluate(a, b) - q.evaluate(a, b)


# -- BoundaryRational normal form -------------------------------------------------

def test_normal_form_cancels_common_factors():
    # (xi - i)(xi + i) / ((xi - i)^2 (xi + i)) = 1/(xi - i)
    r = BoundaryRational([1, 0, 1], 2, 1)
    assert (r.num, r.up, r.down) == ((P_ONE,), 1, 0)
    assert BoundaryRational.inv_norm(1) * (ONE + XI * XI) == ONE
    assert BoundaryRational([0], 3, 2) == BoundaryRational()


def test_str_rendering():
    assert str(BoundaryRational([1], 2, 1)) == "(1)/((xi_n - i)^2*(xi_n + i))"
    assert str(XI * A) == "a*xi_n"


@given(rationals(), rationals(), st.sampled_from(AB))
def test_arithmetic_matches_numeric(x, y, ab):
    fx, fy = x.evaluate(XS, *ab), y.evaluate(XS, *ab)
    assert close(rat_arith(x, y, "add").evaluate(XS, *ab), fx + fy)
    assert close((x - y).evaluate(XS, *ab), fx - fy)


@given(rationals(linear=False), rationals(linear=False))
def test_product_matches_numeric(x, y):
    assert close(rat_arith(x, y, "mul").evaluate(XS), x.evaluate(XS) * y.evaluate(XS))


@given(rationals(), st.integers(1, 3))
def test_derivative_matches_finite_difference(x, k):
    h = 1e-3
    xi = 0.37
    d = rat_diff(x, k)
    # central differences of the (k-1)-th exact derivative
    lower = rat_diff(x, k - 1) if k > 1 else x
    fd = (lower.evaluate(xi + h, 0.4, -0.6) - lower.evaluate(xi - h, 0.4, -0.6)) / (2 * h)
    assert abs(d.evaluate(xi, 0.4, -0.6) - fd) <= 1e-4 * max(1.0, abs(fd))


# -- principal parts and line integrals ----------------------------------------------

def test_principal_part_rejects_non_decaying():
    with pytest.raises(NonDecaying):
        principal_part_upper(BoundaryRational([0, 1], 1, 0))
    with pytest.raises(NotIntegrable):
        line_integral(BoundaryRational.inv_norm(1) * XI)


def test_line_integral_known_values():
    # int dxi/(1+xi^2) = pi; int dxi/(1+xi^2)^2 = pi/2
    assert line_integral(BoundaryRational.inv_norm(1)) == 1
    assert line_integral(BoundaryRational.inv_norm(2)) == Fraction(1, 2)
    assert line_integral(BoundaryRational.inv_norm(3) * XI * XI) == Fraction(1, 8)


@given(rationals(min_margin=1))
def test_principal_part_matches_cauchy_integral(x):
    if not x.up:
        assert principal_part_upper(x) == BoundaryRational()
        return
    a, b = 0.7, -0.4
    num = numeric_pi_plus(lambda z: x.evaluate(z, a, b), XS)
    assert close(principal_part_upper(x).evaluate(XS, a, b), num, 1e-8)


@given(rationals(min_margin=2))
def test_line_integral_matches_quadrature(x):
    a, b = -0.9, 1.3
    num = line_quadrature(lambda t: x.evaluate(t, a, b), 800)
    exact = complex(line_integral(x).evaluate(a, b)) * np.pi
    assert abs(num - exact) <= 1e-8 * max(1.0, abs(exact))
