"""Symbol 1-jets at x_0 and pseudodifferential composition in the normal direction.

A jet is (value, d/dx_n value) at x_0; tangential derivatives vanish there.
Each table keeps the leading and subleading orders of one operator.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .clifford import CliffordElement, SpinorDim, c_xi, c_xi_dxn
from .exact import BoundaryRational, GaussianRational, ONE, XI
from .geometry import MetricJet, christoffel_contract, dirac_order0, norm_dxn

I = GaussianRational(0, 1)
MINUS_I = GaussianRational(0, -1)


class JetUnavailable(LookupError):
    """The normal derivative of this symbol is not part of the first-jet data."""


class InsufficientOrders(LookupError):
    pass


class CliffordJet:
    __slots__ = ("value", "_dxn", "name")

    def __init__(self, value: CliffordElement, dxn: CliffordElement | None = None, name: str = ""):
        self.value = value
        self._dxn = dxn
        self.name = name

    @property
    def dxn(self) -> CliffordElement:
        if self._dxn is None:
            raise JetUnavailable(f"d/dx_n of {self.name or 'symbol'} needs second-order metric jets")
        return self._dxn

    @property
    def has_dxn(self) -> bool:
        return self._dxn is not None

    def __add__(self, other: "CliffordJet") -> "CliffordJet":
        dxn = None
        if self.has_dxn and other.has_dxn:
            dxn = self._dxn + other._dxn
        return CliffordJet(self.value + other.value, dxn)

    def __mul__(self, other):
        if isinstance(other, CliffordJet):
            dxn = None
            if self.has_dxn and other.has_dxn:
                dxn = self._dxn * other.value + self.value * other._dxn
            return CliffordJet(self.value * other.value, dxn)
        return CliffordJet(self.value * other, None if self._dxn is None else self._dxn * other)

    def __rmul__(self, other):
        return CliffordJet(other * self.value, None if self._dxn is None else other * self._dxn)

    def map(self, fn) -> "CliffordJet":
        return CliffordJet(fn(self.value), None if self._dxn is None else fn(self._dxn), self.name)

    def __eq__(self, other):
        return isinstance(other, CliffordJet) and self.value == other.value and self._dxn == other._dxn

    def __repr__(self):
        return f"CliffordJet({self.name or '?'}: {self.value}; dxn={self._dxn})"


def xi_derivative(j: CliffordJet, k: int = 1) -> CliffordJet:
    """k-th xi_n derivative of both jet components."""
    return j.map(lambda e: e.diff(k))


@dataclass(frozen=True)
class SymbolTable:
    tag: str
    jets: dict  # order -> CliffordJet

    @property
    def leading(self) -> int:
        return max(self.jets)

    def __getitem__(self, order: int) -> CliffordJet:
        try:
            return self.jets[order]
        except KeyError:
            raise InsufficientOrders(f"{self.tag} has no symbol of order {order}") from None

    def orders(self) -> list[int]:
        return sorted(self.jets, reverse=True)


def _check(n: int) -> MetricJet:
    SpinorDim(n)
    return MetricJet(n)


@lru_cache(maxsize=None)
def dirac_table(n: int) -> SymbolTable:
    m = _check(n)
    s1 = CliffordJet(c_xi() * I, c_xi_dxn() * I, "sigma_1(D)")
    s0 = CliffordJet(dirac_order0(m), None, "sigma_0(D)")
    return SymbolTable("D", {1: s1, 0: s0})


@lru_cache(maxsize=None)
def inverse_table(p: int, n: int) -> SymbolTable:
    m = _check(n)
    if p == 1:
        return _inverse_one(m)
    if p == 2:
        return _inverse_two(m)
    if p == 3:
        composed = compose_tables(inverse_table(1, n), inverse_table(2, n))
        return SymbolTable("D^-3", composed.jets)
    raise ValueError(f"no table for D^-{p}")


def _inverse_one(m: MetricJet) -> SymbolTable:
    c = c_xi()
    dc = c_xi_dxn()
    v = CliffordElement.basis("v")
    inv1 = BoundaryRational.inv_norm(1)
    inv2 = BoundaryRational.inv_norm(2)
    inv3 = BoundaryRational.inv_norm(3)
    dnorm = norm_dxn(m)
    lead = CliffordJet(c * (inv1 * I), (dc * inv1 - c * (dnorm * inv2)) * I, "sigma_-1(D^-1)")
    # inverting sigma_1 + sigma_0 at x_0 (only the normal derivative survives):
    # q_-2 = c s0 c/|xi|^4 + c c(dx_n) (dc |xi|^2 - c d|xi|^2)/|xi|^6
    s0 = dirac_order0(m)
    norm2 = ONE + XI * XI
    sub = c * s0 * c * inv2 + c * v * (dc * norm2 - c * dnorm) * inv3
    return SymbolTable("D^-1", {-1: lead, -2: CliffordJet(sub, None, "sigma_-2(D^-1)")})


def _inverse_two(m: MetricJet) -> SymbolTable:
    inv1 = BoundaryRational.inv_norm(1)
    inv2 = BoundaryRational.inv_norm(2)
    inv3 = BoundaryRational.inv_norm(3)
    dnorm = norm_dxn(m)
    lead = CliffordJet(CliffordElement.scalar(inv1), CliffordElement.scalar(-dnorm * inv2),
                       "sigma_-2(D^-2)")
    ch = christoffel_contract(m)
    # -i|xi|^-4 xi_k (Gamma^k - 2 delta^k) - 2i |xi|^-6 xi_n d_n|xi|^2,
    # with xi_k Gamma^k = xi_n Gamma^n and sum_k xi_k delta^k contracted into uv
    gam = CliffordElement.scalar(XI * ch.gamma_n) - ch.delta_contracted * 2
    sub = gam * (inv2 * MINUS_I) + CliffordElement.scalar(XI * dnorm * inv3 * GaussianRational(0, -2))
    return SymbolTable("D^-2", {-2: lead, -3: CliffordJet(sub, None, "sigma_-3(D^-2)")})


def compose_tables(a: SymbolTable, b: SymbolTable) -> SymbolTable:
    """Leading and subleading symbols of A o B at x_0.

    sigma_{mA+mB}   = a_mA b_mB
    sigma_{mA+mB-1} = a_mA b_{mB-1} + a_{mA-1} b_mB + (-i) d_xi a_mA . d_x b_mB
    Only the normal derivative survives at x_0. The subleading jet has no
    normal derivative (it would need second jets).
    """
    ma, mb = a.leading, b.leading
    a0, a1 = a[ma], a[ma - 1]
    b0, b1 = b[mb], b[mb - 1]
    lead = a0 * b0
    sub = (a0.value * b1.value + a1.value * b0.value
           + a0.value.diff(1) * b0.dxn * MINUS_I)
    tag = f"{a.tag}o{b.tag}"
    lead.name = f"sigma_{ma + mb}({tag})"
    return SymbolTable(tag, {ma + mb: lead,
                             ma + mb - 1: CliffordJet(sub, None, f"sigma_{ma + mb - 1}({tag})")})
