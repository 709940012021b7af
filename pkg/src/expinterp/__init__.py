"""Compactly supported smooth interpolation from exponential B-splines.

The package builds interpolating basis functions out of half-sample
shifts of an exponential B-spline, evaluates and refines curve and
surface models expressed in those bases, and serves the whole thing over
HTTP for interactive editors.
"""

from .core import (
    PiecewiseExpPoly,
    RootVector,
    center,
    fourier_bspline,
    make_causal_bspline,
    reproduction_space,
)
from .errors import (
    DegenerateFrame,
    ExpSplineError,
    IndexOutOfRange,
    NotSymmetric,
    OddFactor,
    OrderTooLow,
    ReproductionConditionViolated,
    SingularSystem,
    UnknownShape,
)
from .interpolator import (
    CoefficientSequence,
    Interpolator,
    RieszBounds,
    bspline_frame_extrema,
    build_system,
    estimate_riesz_bounds,
    fourier_interpolator,
    lambda_closed_form_ellipse,
    make_interpolator,
    solve_lambda,
    verify_reproduction,
)
from .modelio import (
    document_json,
    from_document,
    model_from_json,
    obj_string,
    to_document,
    write_obj,
)
from .presets import PRESET_NAMES, preset_domain, preset_reference, preset_shape
from .refinement import (
    PreFilter,
    RefinementFilter,
    SampleSequence,
    change_of_basis,
    pre_filter,
    reconstruct,
    refine_step,
    refine_to_depth,
    refinement_filter,
)
from .shapes import (
    AxisSpec,
    ControlNet,
    RefinementRecord,
    ShapeModel,
    dirty_window,
    eval_curve,
    eval_surface,
    move_control_point,
    refine_model,
    surface_grid,
    tessellate,
)

__version__ = "0.1.0"

__all__ = [
    "AxisSpec",
    "CoefficientSequence",
    "ControlNet",
    "DegenerateFrame",
    "ExpSplineError",
    "IndexOutOfRange",
    "Interpolator",
    "NotSymmetric",
    "OddFactor",
    "OrderTooLow",
    "PRESET_NAMES",
    "PiecewiseExpPoly",
    "PreFilter",
    "RefinementFilter",
    "RefinementRecord",
    "ReproductionConditionViolated",
    "RieszBounds",
    "RootVector",
    "SampleSequence",
    "ShapeModel",
    "SingularSystem",
    "UnknownShape",
    "bspline_frame_extrema",
    "build_system",
    "center",
    "change_of_basis",
    "dirty_window",
    "document_json",
    "estimate_riesz_bounds",
    "eval_curve",
    "eval_surface",
    "fourier_bspline",
    "fourier_interpolator",
    "from_document",
    "lambda_closed_form_ellipse",
    "make_causal_bspline",
    "make_interpolator",
    "model_from_json",
    "move_control_point",
    "obj_string",
    "preset_domain",
    "preset_reference",
    "preset_shape",
    "pre_filter",
    "reconstruct",
    "refine_model",
    "refine_step",
    "refine_to_depth",
    "refinement_filter",
    "reproduction_space",
    "solve_lambda",
    "surface_grid",
    "tessellate",
    "to_document",
    "verify_reproduction",
    "write_obj",
]
