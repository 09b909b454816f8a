"""pi^+ projection and real-line integration, lifted coefficientwise to the fiber."""
from __future__ import annotations

from dataclasses import dataclass

from .clifford import CliffordElement, SpinorDim, cl_trace
from .exact import ParamPoly, line_integral, principal_part_lower, principal_part_upper
from .expr import Expr, sphere_volume


@dataclass(frozen=True)
class ProjectedElement:
    plus: CliffordElement
    minus: CliffordElement

    def reconstruct(self) -> CliffordElement:
        return self.plus + self.minus


def pi_plus(x: CliffordElement) -> CliffordElement:
    return x.map(principal_part_upper)


def pi_minus(x: CliffordElement) -> CliffordElement:
    return x.map(principal_part_lower)


def project(x: CliffordElement) -> ProjectedElement:
    return ProjectedElement(pi_plus(x), pi_minus(x))


def integrate_line_cl(x: CliffordElement, d: SpinorDim) -> ParamPoly:
    """Coefficient of pi in  int_R tr(x) dxi_n."""
    return line_integral(cl_trace(x, d))


@dataclass(frozen=True)
class SphereVolume:
    """vol(S^d), carried as the symbol S(d)."""

    dim: int

    @property
    def symbol(self) -> Expr:
        return Expr.sphere(self.dim)

    @property
    def numeric(self) -> float:
        return sphere_volume(self.dim)

    @property
    def published_symbol(self) -> str:
        # the published results write Omega_2, Omega_3, Omega_4 for n = 3, 4, 6
        return {1: "Omega(2)", 2: "Omega(3)", 4: "Omega(4)"}.get(self.dim, f"Omega({self.dim + 1})")

    @property
    def published_numeric(self) -> float:
        from .expr import published_omega
        idx = int(self.published_symbol[6:-1])
        return published_omega(idx)

    def __str__(self):
        return f"S({self.dim})"


def sphere_factor(n: int) -> SphereVolume:
    if n < 3:
        raise ValueError("sphere factor needs n >= 3")
    return SphereVolume(n - 2)
