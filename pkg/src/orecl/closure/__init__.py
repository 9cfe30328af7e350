"""Closure constructions: common left multiples and annihilators of polynomial expressions."""

from ..bounds import curve_lclm, curve_poly
from .annihilator import AnnihilatorResult, annihilator, annihilator_at, annihilator_inhomogeneous, order_bound
from .lclm import ClmResult, ClosureError, LclmResult, clm_at, lclm, lclm_coefficient_array, reduce_operator
from .multipoly import MultiPoly, MultiPolyError, apply_operator, build_P, mpoly_mul, partial_action
from .normal_form import AnnihilatorIdeal, NormalFormer, normal_form, normal_form_literal

__all__ = [
    "AnnihilatorIdeal", "AnnihilatorResult", "ClmResult", "ClosureError", "LclmResult", "MultiPoly",
    "MultiPolyError", "NormalFormer", "annihilator", "annihilator_at", "annihilator_inhomogeneous",
    "apply_operator", "build_P", "clm_at", "curve_lclm", "curve_poly", "lclm", "lclm_coefficient_array",
    "mpoly_mul", "normal_form", "normal_form_literal", "order_bound", "partial_action", "reduce_operator",
]
