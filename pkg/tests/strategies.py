"""Hypothesis strategies for exact objects."""
from fractions import Fraction

from hypothesis import strategies as st

from wresidue.clifford import CliffordElement
from wresidue.exact import BoundaryRational, GaussianRational, ParamPoly


small = st.integers(-6, 6)
# one draw per rational: k/6 covers halves, thirds and sixths
fractions = st.integers(-36, 36).map(lambda k: Fraction(k, 6))
gaussians = st.builds(GaussianRational, fractions, fractions)


@st.composite
def param_polys(draw, linear=True):
    """Affine in a, b; constants only when ``linear`` is False (products stay in range)."""
    if not linear:
        return ParamPoly.const(draw(gaussians))
    return ParamPoly({(0, 0): draw(gaussians), (1, 0): draw(gaussians), (0, 1): draw(gaussians)})


@st.composite
def rationals(draw, min_margin=1, max_pole=2, linear=True):
    """BoundaryRational with denominator degree - numerator degree >= min_margin."""
    up = draw(st.integers(0, max_pole))
    down = draw(st.integers(0, max_pole))
    if up + down < min_margin:
        up += min_margin
    deg = draw(st.integers(0, up + down - min_margin))
    num = [draw(param_polys(linear)) for _ in range(deg + 1)]
    return BoundaryRational(num, up, down)


@st.composite
def elements(draw, min_margin=1, linear=True, max_pole=2):
    return CliffordElement(*(draw(rationals(min_margin, max_pole, linear)) for _ in range(4)))
