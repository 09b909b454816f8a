import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wresidue.exact import A, B, GaussianRational
from wresidue.expr import Expr, ExprParseError, PI, published_omega, parse, sphere_volume

from strategies import gaussians

SYMBOLS = ["a", "b", "c", "pi", "S(2)", "S(4)", "Omega(4)", "Omega(5)", "Vol"]


@st.composite
def exprs(draw):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        mono = tuple((s, draw(st.integers(-2, 3))) for s in draw(st.lists(st.sampled_from(SYMBOLS),
                                                                          max_size=3, unique=True)))
        terms[mono] = draw(gaussians)
    return Expr(terms)


def test_published_renderings():
    phi = Expr.from_param_poly((A * 40 - B * 11) * Fraction(-1, 16)) * PI * Expr.sphere(4)
    assert str(phi) == "(-1/16)*(40*a - 11*b)*pi*S(4)"
    assert str(Expr.from_param_poly(A * -5) * Expr.symbol("Vol")) == "-5*a*Vol"
    assert str(Expr()) == "0"
    assert str(Expr.const(GaussianRational(0, -1))) == "-i"


def test_parse_examples():
    assert parse("i/2") == Expr.const(GaussianRational(0, Fraction(1, 2)))
    assert parse("-1/8*(3*a + b)") == Expr.from_param_poly((A * 3 + B) * Fraction(-1, 8))
    assert parse("Omega(5)/(33*Omega(4))") == Expr.omega(5) * Expr.omega(4) ** -1 / 33
    assert parse("a^-1*a") == Expr.const(1)
    with pytest.raises(ExprParseError):
        parse("3 +* a")
    with pytest.raises(ExprParseError):
        parse("(a + b")


@given(exprs(), exprs(), st.floats(0.5, 2), st.floats(0.5, 2))
def test_evaluation_is_a_ring_map(x, y, a, c):
    env = {"a": a, "b": 0.5, "c": c, "Vol": 1.5}
    for lhs, rhs in ((x + y, x.evaluate(env) + y.evaluate(env)),
                     (x * y, x.evaluate(env) * y.evaluate(env))):
        got = lhs.evaluate(env)
        assert abs(got - rhs) <= 1e-9 * max(1.0, abs(rhs))


def test_substitute_and_param_poly():
    e = parse("(1/16)*(55*a - b)")
    assert e.to_param_poly() == (A * 55 - B) * Fraction(1, 16)
    assert e.substitute("b", Expr.symbol("a")) == parse("54/16*a")
    with pytest.raises(ValueError):
        parse("a*pi").to_param_poly()


def test_sphere_numbers():
    assert math.isclose(sphere_volume(2), 4 * math.pi)
    assert math.isclose(sphere_volume(4), 8 * math.pi ** 2 / 3)
    assert math.isclose(published_omega(4), 2 * math.pi ** 2)
    assert parse("S(1)").evaluate({}) == pytest.approx(2 * math.pi)
