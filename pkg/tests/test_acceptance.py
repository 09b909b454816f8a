"""Acceptance criteria 1-9 against the published values.

Each test carries a ``criterion`` marker; conftest prints one PASS/FAIL line
per criterion at the end of the run. A mismatch is never relaxed: the test
fails and its message carries the oracle's arbitration.
"""
import time
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wresidue.audit import published_sigma_m4
from wresidue.clifford import CliffordElement, SpinorDim, c_xi, cl_dxn_substitute, cl_trace
from wresidue.engine import (DegenerateProportionality, case_value, enumerate_cases, phi_total,
                             res_form, res_reference_ratio, solve_special_c)
from wresidue.exact import (A, B, ONE, XI, BoundaryRational, GaussianRational, ParamPoly,
                            principal_part_lower, principal_part_upper)
from wresidue.expr import Expr, parse
from wresidue.halfline import pi_plus
from wresidue.oracle import arbitrate_case, compare, numeric_case
from wresidue.reference import (REFERENCE_CASES, REFERENCE_SPECIAL_C, SUPPORTED_CONFIGS,
                                reference_case, registered)
from wresidue.symbols import compose_tables, dirac_table, inverse_table

from strategies import elements, fractions, gaussians, rationals

I = GaussianRational(0, 1)
U, V, UV = (CliffordElement.basis(x) for x in ("u", "v", "uv"))
DU, DV = cl_dxn_substitute("u"), cl_dxn_substitute("v")
ALL_CASES = [(cfg, s) for cfg in SUPPORTED_CONFIGS for s in enumerate_cases(*cfg)]


def const(p) -> BoundaryRational:
    return BoundaryRational.const(p)


# ---------------------------------------------------------------------------
# 1. trace tables

TRACE_TABLE = {
    # (x, y, expected tr[x y] as a function of dim_s)
    "tr[c(xi')c(dx_n)] = 0": (U, V, lambda d: 0),
    "tr[c(dx_n)^2] = -dim": (V, V, lambda d: -d),
    "tr[c(xi')^2] = -dim": (U, U, lambda d: -d),
    "tr[d c(xi') c(dx_n)] = 0": (DU, V, lambda d: 0),
    "tr[d c(xi') c(xi')] = -(dim/2) a": (DU, U, lambda d: A * Fraction(-d, 2)),
    "tr[d c(dx_n) c(xi')] = 0": (DV, U, lambda d: 0),
    "tr[d c(dx_n) c(dx_n)] = (dim/2) b": (DV, V, lambda d: B * Fraction(d, 2)),
}


@pytest.mark.criterion(1)
@pytest.mark.parametrize("n", [4, 6])
@pytest.mark.parametrize("name", list(TRACE_TABLE))
def test_trace_table(n, name):
    x, y, want = TRACE_TABLE[name]
    start = time.perf_counter()
    d = SpinorDim(n)
    assert cl_trace(x * y, d) == const(want(d.dim_s))
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(1)
def test_trace_values_printed():
    # the dimension-dependent entries as printed: -2a, 2b for n = 4 and -4a, 4b for n = 6
    assert cl_trace(DU * U, SpinorDim(4)) == const(A * -2)
    assert cl_trace(DV * V, SpinorDim(4)) == const(B * 2)
    assert cl_trace(DU * U, SpinorDim(6)) == const(A * -4)
    assert cl_trace(DV * V, SpinorDim(6)) == const(B * 4)


@pytest.mark.criterion(1)
def test_trace_table_three_dim():
    d = SpinorDim(3)
    assert cl_trace(CliffordElement.scalar(ONE), d) == const(2)
    assert cl_trace(U * V, d) == const(0)
    assert cl_trace(V * V, d) == const(-2)
    assert cl_trace(U * U, d) == const(-2)


# ---------------------------------------------------------------------------
# 2. pi^+ fixtures

def sq(num) -> BoundaryRational:
    """num / (4 (xi - i)^2)."""
    return BoundaryRational(num, 2, 0) * Fraction(1, 4)


def lin(num) -> BoundaryRational:
    """num / (2 (xi - i))."""
    return BoundaryRational(num, 1, 0) * Fraction(1, 2)


PI_FIXTURES = {
    "c(xi)/|xi|^4": (
        c_xi() * BoundaryRational.inv_norm(2),
        U * sq([-2, -I]) - V * sq([I])),
    "i d c(xi')/|xi|^2": (
        DU * (BoundaryRational.inv_norm(1) * I),
        DU * lin([1])),
    "i xi d c(dx_n)/|xi|^2": (
        DV * (XI * BoundaryRational.inv_norm(1) * I),
        DV * lin([I])),
    "xi^2 c(xi)/|xi|^4": (
        c_xi() * (XI * XI * BoundaryRational.inv_norm(2)),
        U * sq([0, -I]) + V * sq([-I, 2])),
    "sigma_-1(D^-1)": (
        inverse_table(1, 4)[-1].value,
        (U + V * I) * lin([1])),
}


@pytest.mark.criterion(2)
@pytest.mark.parametrize("name", list(PI_FIXTURES))
def test_pi_plus_fixture(name):
    x, want = PI_FIXTURES[name]
    assert pi_plus(x) == want


# ---------------------------------------------------------------------------
# 3. per-case values

PUBLISHED_CASES = [(cfg, label) for cfg in SUPPORTED_CONFIGS if cfg[0] > 3
                   for label in REFERENCE_CASES[cfg]]


@pytest.mark.criterion(3)
@pytest.mark.parametrize("cfg,label", PUBLISHED_CASES, ids=lambda v: str(v))
def test_case_value(cfg, label):
    spec = next(s for s in enumerate_cases(*cfg) if s.label == label)
    start = time.perf_counter()
    contrib = case_value(spec, *cfg)
    elapsed = time.perf_counter() - start
    engine = Expr.from_param_poly(contrib.coefficient)
    published = reference_case(cfg, label)
    if engine != published:
        verdict = arbitrate_case(spec, *cfg, published, seed=0)
        # reported in the failure; an oracle-confirmed deviation from a final value fails
        pytest.fail(f"{cfg} case {label}: engine {contrib.value}, published "
                    f"{published * Expr.symbol('pi') * contrib.sphere.symbol}; {verdict.summary()}")
    assert elapsed < 10.0


# ---------------------------------------------------------------------------
# 4. totals

@pytest.mark.criterion(4)
@pytest.mark.parametrize("cfg", [c for c in SUPPORTED_CONFIGS if c[0] > 3], ids=str)
def test_total(cfg):
    rep = phi_total(*cfg)
    assert rep.total_agrees, (f"Phi{cfg}: engine {rep.phi_total}, published "
                              f"{rep.reference_value(rep.reference_total)}")


@pytest.mark.criterion(4)
def test_total_three_dim():
    rep = phi_total(3, 1, 1)
    engine = rep.phi_coefficient.coefficient(0, 0)
    published = parse("i/2").to_param_poly().coefficient(0, 0)
    # equal magnitude pi/2 S(1); the phase is the registered (-i) prefactor convention
    assert engine.norm() == published.norm() == Fraction(1, 4)
    assert published == engine * I
    assert [k.kind for k in registered((3, 1, 1), "c")] == ["convention"]


# ---------------------------------------------------------------------------
# 5. gravitational identifications (b = a)

@pytest.mark.criterion(5)
@pytest.mark.parametrize("name", ["res11", "res21", "res22", "res23"])
def test_res_ratio(name):
    _, ratio = res_form(name, True)
    assert ratio == res_reference_ratio(name), f"{name}: engine {ratio}, published {res_reference_ratio(name)}"


# ---------------------------------------------------------------------------
# 6. special constant

@pytest.mark.criterion(6)
def test_special_c():
    published = parse(REFERENCE_SPECIAL_C)
    try:
        c = solve_special_c()
    except DegenerateProportionality as exc:
        pytest.fail(f"{exc}; published {published}")
    assert c == published


# ---------------------------------------------------------------------------
# 7. composition self-consistency

@pytest.mark.criterion(7)
@pytest.mark.parametrize("n", [3, 4, 6])
def test_dirac_times_inverse(n):
    t = compose_tables(dirac_table(n), inverse_table(1, n))
    assert t[0].value == CliffordElement.scalar(ONE)
    assert t[-1].value == CliffordElement()


@pytest.mark.criterion(7)
@pytest.mark.parametrize("n", [3, 4, 6])
def test_composed_sigma_m3_of_square(n):
    # -i|xi|^-4 (xi Gamma^n - 2 sum_k xi_k delta^k) - 2i xi d|xi|^2 / |xi|^6 at x_0
    gamma_n = A * Fraction(n - 1, 2) + B * Fraction(1, 2)
    dnorm = const(A) - XI * XI * B
    lemma = (CliffordElement.scalar(XI * gamma_n) - UV * const(A * Fraction(1, 2))) \
        * (BoundaryRational.inv_norm(2) * -I) \
        + CliffordElement.scalar(XI * dnorm * BoundaryRational.inv_norm(3) * (-2 * I))
    composed = compose_tables(inverse_table(1, n), inverse_table(1, n))
    assert composed[-3].value == lemma


@pytest.mark.criterion(7)
def test_dxi_sigma_m4_of_cube():
    result = published_sigma_m4(seed=0, tol=1e-9)
    if result.registered:
        assert [k.kind for k in registered((6, 1, 3), "symbol")] == ["intermediate"]
    assert result.passed, result.detail


# ---------------------------------------------------------------------------
# 8. oracle arbitration

@pytest.mark.criterion(8)
def test_oracle_agreement():
    rng = np.random.default_rng(20240)
    start = time.perf_counter()
    failures, worst = [], 0.0
    for trial in range(20):
        a, b = rng.uniform(-2, 2, size=2)
        for cfg, spec in ALL_CASES:
            sym = case_value(spec, *cfg).value.evaluate({"a": a, "b": b})
            # convergence is judged by the comparison with the exact value itself
            num = numeric_case(spec, *cfg, a, b, seed=trial, check=False)
            v = compare(sym, num, 1e-9)
            worst = max(worst, v.deviation)
            if not v.passed:
                failures.append(f"trial {trial} {cfg} {spec.label}: {v}")
    elapsed = time.perf_counter() - start
    print(f"oracle: 20 trials x {len(ALL_CASES)} cases, worst deviation {worst:.2e}, {elapsed:.1f} s")
    assert not failures, "\n".join(failures)
    assert elapsed < 60.0


# ---------------------------------------------------------------------------
# 9. property suites (100 examples each, see conftest)

@pytest.mark.criterion(9)
@given(rationals(min_margin=1))
def test_partial_fraction_reconstruction(x):
    assert principal_part_upper(x) + principal_part_lower(x) == x


@pytest.mark.criterion(9)
@given(elements())
def test_pi_plus_idempotent(x):
    p = pi_plus(x)
    assert pi_plus(p) == p


@pytest.mark.criterion(9)
@given(elements(), elements(), gaussians)
def test_pi_plus_linear(x, y, s):
    assert pi_plus(x + y * s) == pi_plus(x) + pi_plus(y) * s


@pytest.mark.criterion(9)
@given(elements(linear=False, max_pole=1), elements(linear=False), st.sampled_from([3, 4, 6]))
def test_trace_cyclicity(x, y, n):
    d = SpinorDim(n)
    assert cl_trace(x * y, d) == cl_trace(y * x, d)


@pytest.mark.criterion(9)
@given(st.sampled_from(ALL_CASES), fractions, fractions, fractions)
def test_case_values_linear_and_scaling(case, a, b, lam):
    cfg, spec = case
    coeff = case_value(spec, *cfg).coefficient
    if cfg[0] == 3:
        # a flat leading-order pairing: no metric jet enters
        assert coeff.is_constant() and coeff.evaluate(lam * a, lam * b) == coeff.evaluate(a, b)
        return
    assert coeff.degrees() <= {1}
    v = coeff.evaluate(a, b)
    assert v == coeff.coefficient(1, 0) * a + coeff.coefficient(0, 1) * b
    assert coeff.evaluate(lam * a, lam * b) == v * lam


@st.composite
def report_exprs(draw):
    """Expressions shaped like report entries: c_a a + c_b b times pi and a sphere symbol."""
    p = ParamPoly({(1, 0): draw(gaussians), (0, 1): draw(gaussians), (0, 0): draw(gaussians)})
    tail = draw(st.sampled_from([Expr.const(1), Expr.symbol("pi") * Expr.sphere(2),
                                 Expr.symbol("pi") * Expr.sphere(4), Expr.symbol("Vol"),
                                 Expr.omega(5) / Expr.omega(4)]))
    return Expr.from_param_poly(p) * tail


@pytest.mark.criterion(9)
@given(report_exprs())
def test_serialization_round_trip(e):
    assert parse(str(e)) == e
