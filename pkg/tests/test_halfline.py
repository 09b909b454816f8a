import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from wresidue.clifford import CliffordElement, SpinorDim
from wresidue.exact import BoundaryRational, GaussianRational, XI, line_integral
from wresidue.halfline import integrate_line_cl, pi_plus, project, sphere_factor
from wresidue.oracle import make_rep, fiber_matrix, numeric_pi_plus

from strategies import elements


@given(elements())
def test_projection_reconstructs(x):
    assert project(x).reconstruct() == x


def test_pi_plus_matches_matrix_cauchy_transform():
    # c(xi)/|xi|^4 through the matrix model and the exact fiber projection
    rep = make_rep(4, np.random.default_rng(3))
    x = (CliffordElement(u=BoundaryRational.const(1), v=XI)) * BoundaryRational.inv_norm(2)
    xs = np.array([-1.5, 0.0, 0.4, 2.0])
    num = numeric_pi_plus(lambda z: (rep.U[None] + z[:, None, None] * rep.V[None])
                          / ((1 + z ** 2) ** 2)[:, None, None], xs)
    exact = pi_plus(x)
    for k, t in enumerate(xs):
        assert np.allclose(fiber_matrix(exact.evaluate(t), rep), num[k], atol=1e-10)


def test_integrate_line_cl():
    # tr(1/(1+xi^2)^2) over R = dim_s * pi/2
    x = CliffordElement.scalar(BoundaryRational.inv_norm(2)) + CliffordElement.basis("uv", BoundaryRational.inv_norm(1))
    assert integrate_line_cl(x, SpinorDim(4)) == 2
    assert integrate_line_cl(CliffordElement.basis("u", BoundaryRational.inv_norm(1)), SpinorDim(6)) == 0


def test_n3_line_integral():
    # int_R -1/((xi + i)^2 (xi - i)) dxi = 2 pi i * Res_{+i} = (i/2) pi
    assert line_integral(BoundaryRational([-1], 1, 2)) == GaussianRational(0, Fraction(1, 2))


def test_sphere_factor():
    s = sphere_factor(6)
    assert str(s) == "S(4)"
    assert math.isclose(s.numeric, 8 * math.pi ** 2 / 3)
    assert s.published_symbol == "Omega(4)"
    assert math.isclose(s.published_numeric, 2 * math.pi ** 2)
    assert sphere_factor(4).published_symbol == "Omega(3)"
    assert math.isclose(sphere_factor(4).numeric, sphere_factor(4).published_numeric)
    with pytest.raises(ValueError):
        sphere_factor(2)
