"""Surfaces, their fundamental forms and Beltrami operators."""

from .catalog import (CATALOG, conoid_oblique, helicoid, make_chart, plane, quadric1, quadric2,
                      ruled_env, ruled_generic, ruled_symbols, sphere, trig_pair)
from .forms import (AbstractChart, CurvatureData, FundamentalForm, SurfaceChart, cross,
                    curvature, dot, first_form, gauss_curvature, mean_curvature, normal_extension,
                    second_form, third_form, third_form_identity_holds, unit_normal,
                    weingarten_third_form)
from .operator import (BeltramiOperator, apply, apply_vector, beltrami_operator, first_beltrami,
                       is_w_free, iterate, iterates, position_identity_check)

__all__ = [
    "AbstractChart", "BeltramiOperator", "CATALOG", "CurvatureData", "FundamentalForm",
    "SurfaceChart", "apply", "apply_vector", "beltrami_operator", "conoid_oblique", "cross",
    "curvature", "dot", "first_beltrami", "first_form", "gauss_curvature", "helicoid",
    "is_w_free", "iterate", "iterates", "make_chart", "mean_curvature", "normal_extension",
    "plane", "position_identity_check", "quadric1", "quadric2", "ruled_env", "ruled_generic", "ruled_symbols",
    "second_form", "sphere", "third_form", "third_form_identity_holds", "trig_pair",
    "unit_normal", "weingarten_third_form",
]
