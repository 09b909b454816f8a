"""Boundary geometry from the metric 1-jet at x_0.

Near the boundary g = (1/phi(x_n)) g_bd + psi(x_n) dx_n^2 with
phi(0) = psi(0) = 1, so at x_0 (normal coordinates on the boundary) the only
nonzero first derivatives are d_n g_ii = -a (i < n) and d_n g_nn = b.
Everything below is computed from that jet, not transcribed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .clifford import CliffordElement, SpinorDim, blade_product, blade_to_fiber
from .exact import A, B, BoundaryRational, ParamPoly, P_ZERO, XI
from .expr import Expr, VOL

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class MetricJet:
    n: int
    a: ParamPoly = field(default=A)
    b: ParamPoly = field(default=B)

    def __post_init__(self):
        SpinorDim(self.n)

    def metric_derivative(self, l: int, i: int, j: int) -> ParamPoly:
        """d_{x_l} g_ij at x_0 (1-based indices)."""
        if l != self.n or i != j:
            return P_ZERO
        return self.b if i == self.n else -self.a


def christoffel(m: MetricJet, k: int, i: int, j: int) -> ParamPoly:
    """Gamma^k_ij at x_0, where g = identity."""
    dg = m.metric_derivative
    return (dg(i, j, k) + dg(j, i, k) - dg(k, i, j)) * _HALF


@lru_cache(maxsize=None)
def connection_coeffs(m: MetricJet) -> dict:
    """Nonzero omega_{s,t}(e_i)(x_0), keyed (s, t, i).

    omega_{s,t}(X) = <nabla_X e_t, e_s> for the frame e_j = sqrt(phi) d_j,
    e_n = psi^(-1/2) d_n. Frame-scaling terms only hit s = t and cancel the
    diagonal Christoffels, leaving omega_{s,t}(e_i) = Gamma^s_{it} for s != t.
    """
    n = m.n
    out = {}
    for s in range(1, n + 1):
        for t in range(1, n + 1):
            if s == t:
                continue
            for i in range(1, n + 1):
                w = christoffel(m, s, i, t)
                if w:
                    out[(s, t, i)] = w
    return out


def _omega_sum(m: MetricJet) -> dict:
    """sum omega_{s,t}(e_i) c(e_i) c(e_s) c(e_t), grouped by reduced blade."""
    acc: dict = {}
    for (s, t, i), w in connection_coeffs(m).items():
        sign, blade = blade_product((i,), (s, t))
        acc[blade] = acc.get(blade, P_ZERO) + w * sign
    return {k: v for k, v in acc.items() if v}


@lru_cache(maxsize=None)
def dirac_order0(m: MetricJet) -> CliffordElement:
    """sigma_0(D)(x_0) = -1/4 sum omega_{s,t}(e_i) c(e_i) c(e_s) c(e_t)."""
    out = CliffordElement()
    for blade, w in _omega_sum(m).items():
        out = out + blade_to_fiber(blade, m.n, w * Fraction(-1, 4))
    return out


@dataclass(frozen=True)
class ChristoffelData:
    gamma: dict            # k -> Gamma^k(x_0) = g^ij Gamma^k_ij
    delta: dict            # k -> {blade: coefficient}, delta^k(x_0)
    delta_contracted: CliffordElement   # sum_{k<n} xi_k delta^k at |xi'| = 1

    @property
    def gamma_n(self) -> ParamPoly:
        return self.gamma[len(self.gamma)]


@lru_cache(maxsize=None)
def christoffel_contract(m: MetricJet) -> ChristoffelData:
    n = m.n
    gamma = {}
    for k in range(1, n + 1):
        g = P_ZERO
        for i in range(1, n + 1):
            g = g + christoffel(m, k, i, i)
        gamma[k] = g
    delta = {}
    for k in range(1, n + 1):
        acc: dict = {}
        for (s, t, i), w in connection_coeffs(m).items():
            if i != k:
                continue
            sign, blade = blade_product((s,), (t,))
            acc[blade] = acc.get(blade, P_ZERO) + w * (sign * Fraction(-1, 4))
        delta[k] = {bl: c for bl, c in acc.items() if c}
    # delta^k = c_k * c(e_k) c(e_n) for k < n; sum_k xi_k c(e_k) = u at x_0
    contracted = CliffordElement()
    coeffs = set()
    for k in range(1, n):
        for blade, c in delta[k].items():
            if blade != (k, n):
                raise ValueError(f"unexpected blade {blade} in delta^{k}")
            coeffs.add(c)
    if delta[n]:
        raise ValueError("delta^n(x_0) should vanish")
    if len(coeffs) > 1:
        raise ValueError("delta^k coefficients are not isotropic")
    if coeffs:
        contracted = CliffordElement(uv=BoundaryRational.const(coeffs.pop()))
    return ChristoffelData(gamma=gamma, delta=delta, delta_contracted=contracted)


@dataclass(frozen=True)
class ExtrinsicData:
    K_diag: dict       # i -> K_ii(x_0)
    K: ParamPoly
    I_Gr_b: Expr       # 2 * int K, as a multiple of Vol


@lru_cache(maxsize=None)
def second_fundamental(m: MetricJet) -> ExtrinsicData:
    """K_ij = -Gamma^n_ij on the boundary (unit normal -d_n inward convention)."""
    n = m.n
    diag = {i: -christoffel(m, n, i, i) for i in range(1, n)}
    K = P_ZERO
    for v in diag.values():
        K = K + v
    return ExtrinsicData(K_diag=diag, K=K, I_Gr_b=Expr.from_param_poly(K * 2) * VOL)


def norm_dxn(m: MetricJet) -> BoundaryRational:
    """d/dx_n |xi|^2 at x_0, |xi'| = 1:  a - b xi_n^2."""
    # d_n g^ij = -d_n g_ij where g = identity
    tangential = -m.metric_derivative(m.n, 1, 1)
    normal = -m.metric_derivative(m.n, m.n, m.n)
    return BoundaryRational.const(tangential) + XI * XI * normal
