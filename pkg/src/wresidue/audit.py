"""Self-consistency checks of the composed symbol tables.

Each check returns an ``AuditResult``; mismatches against a published
closed form are arbitrated numerically against the matrix model.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import CliffordElement
from .reference import published_dxi_sigma_m4
from .symbols import compose_tables, dirac_table, inverse_table


@dataclass(frozen=True)
class AuditResult:
    name: str
    passed: bool
    detail: str
    registered: bool = False


def inversion_identity(n: int) -> AuditResult:
    t = compose_tables(dirac_table(n), inverse_table(1, n))
    ok = t[0].value == CliffordElement.scalar(1) and not t[-1].value
    return AuditResult(f"sigma(D) o sigma(D^-1) = 1 + 0 (n={n})", ok,
                       f"order 0: {t[0].value}; order -1: {t[-1].value}")


def square_of_inverse(n: int) -> AuditResult:
    t = compose_tables(inverse_table(1, n), inverse_table(1, n))
    ref = inverse_table(2, n)
    ok = t[-2].value == ref[-2].value and t[-2].dxn == ref[-2].dxn and t[-3].value == ref[-3].value
    return AuditResult(f"D^-1 o D^-1 reproduces the D^-2 table (n={n})", ok,
                       f"sigma_-3 composed: {t[-3].value}")


def associativity(n: int) -> AuditResult:
    one = inverse_table(1, n)
    left = compose_tables(compose_tables(one, one), one)
    right = compose_tables(one, compose_tables(one, one))
    ok = left[-3].value == right[-3].value and left[-4].value == right[-4].value
    other = compose_tables(inverse_table(2, n), one)
    ok = ok and other[-4].value == inverse_table(3, n)[-4].value
    return AuditResult(f"(D^-1 o D^-1) o D^-1 = D^-1 o (D^-1 o D^-1) = D^-2 o D^-1 (n={n})", ok,
                       "orders -3 and -4")


def arbitrate_symbol(engine: CliffordElement, published: CliffordElement, n: int, p: int, order: int,
                     xi_order: int, seed: int = 0, trials: int = 3) -> tuple[float, float]:
    """Max relative distance of engine and published elements from the numeric symbol."""
    from .oracle import fiber_matrix, numeric_symbol
    rng = np.random.default_rng(seed)
    worst_e = worst_p = 0.0
    for t in range(trials):
        a, b = rng.uniform(-2, 2, size=2)
        xi = rng.uniform(-3, 3, size=5)
        mats, rep = numeric_symbol(n, p, order, xi, a, b, xi_order=xi_order, seed=seed + t)
        for x, m in zip(xi, mats):
            e = fiber_matrix(engine.evaluate(x, a, b), rep)
            q = fiber_matrix(published.evaluate(x, a, b), rep)
            scale = max(np.linalg.norm(m), 1e-300)
            worst_e = max(worst_e, np.linalg.norm(e - m) / scale)
            worst_p = max(worst_p, np.linalg.norm(q - m) / scale)
    return worst_e, worst_p


def published_sigma_m4(seed: int = 0, tol: float = 1e-9) -> AuditResult:
    """Composed d/dxi sigma_-4(D^-3) against the published closed form."""
    engine = inverse_table(3, 6)[-4].value.diff(1)
    published = published_dxi_sigma_m4()
    if engine == published:
        return AuditResult("d/dxi sigma_-4(D^-3) matches the published form", True, "exact")
    dev_e, dev_p = arbitrate_symbol(engine, published, 6, 3, -4, 1, seed=seed)
    ok = bool(dev_e <= tol and dev_p > tol)
    detail = (f"exact mismatch, difference {published - engine}; oracle relative distance: "
              f"composed {dev_e:.2e}, published {dev_p:.2e}")
    return AuditResult("d/dxi sigma_-4(D^-3): composed vs published, oracle-arbitrated", ok, detail,
                       registered=True)


def run_all(seed: int = 0) -> list[AuditResult]:
    out = []
    for n in (3, 4, 6):
        out += [inversion_identity(n), square_of_inverse(n), associativity(n)]
    out.append(published_sigma_m4(seed))
    return out
