"""Exact boundary terms of the noncommutative residue for Dirac operators
on conformal Robertson-Walker metrics, with a numeric cross-check."""
from .clifford import CliffordElement, SpinorDim, cl_trace
from .engine import (CaseSpec, DegenerateProportionality, TheoremReport, UnsupportedConfig,
                     case_value, enumerate_cases, phi_total, res_form, solve_special_c)
from .exact import BoundaryRational, GaussianRational, ParamPoly, line_integral
from .expr import Expr, parse
from .halfline import integrate_line_cl, pi_minus, pi_plus
from .symbols import compose_tables, dirac_table, inverse_table

__version__ = "0.1.0"

__all__ = [
    "BoundaryRational", "CaseSpec", "CliffordElement", "DegenerateProportionality", "Expr",
    "GaussianRational", "ParamPoly", "SpinorDim", "TheoremReport", "UnsupportedConfig",
    "case_value", "cl_trace", "compose_tables", "dirac_table", "enumerate_cases",
    "integrate_line_cl", "inverse_table", "line_integral", "parse", "phi_total", "pi_minus",
    "pi_plus", "res_form", "solve_special_c",
]
