"""Numerical toolkit for weighted entire-function spaces.

Thin wrapper around the compiled extension: truncated orthonormal-basis
models, Toeplitz compressions, Berezin transforms, localization and
translation estimators, and the reproducibility battery.
"""

from ._core import (
    BatteryResult,
    BerezinEquivalence,
    CheckResult,
    DecayCurve,
    EssNormReport,
    FrameScan,
    HeatCurve,
    Model,
    Operator,
    PointMassCurve,
    RunResult,
    SymbolPoly,
    ThetaValue,
    Translation,
    __version__,
    berezin,
    berezin_equiv_check,
    compactness_indicator,
    decay_profile,
    frame_norm_scan,
    heat_convergence_curve,
    identity_op,
    identity_quadrature,
    kernel_correlation,
    leading_block_deviation,
    local_norm,
    matrix_norm,
    op_norm,
    point_mass_limit_curve,
    preset_catalog,
    run_battery,
    run_experiment,
    sharp_product,
    tail_norm,
    theta_pairing,
    toeplitz,
    toeplitz_essnorm_check,
    toeplitz_pointmasses,
    toeplitz_poly,
    verify_sharp,
    weighted_translation,
    write_run,
    zero_op,
)

__all__ = [
    "BatteryResult",
    "BerezinEquivalence",
    "CheckResult",
    "DecayCurve",
    "EssNormReport",
    "FrameScan",
    "HeatCurve",
    "Model",
    "Operator",
    "PointMassCurve",
    "RunResult",
    "SymbolPoly",
    "ThetaValue",
    "Translation",
    "__version__",
    "berezin",
    "berezin_equiv_check",
    "compactness_indicator",
    "decay_profile",
    "frame_norm_scan",
    "heat_convergence_curve",
    "identity_op",
    "identity_quadrature",
    "kernel_correlation",
    "leading_block_deviation",
    "local_norm",
    "matrix_norm",
    "op_norm",
    "point_mass_limit_curve",
    "preset_catalog",
    "run_battery",
    "run_experiment",
    "sharp_product",
    "tail_norm",
    "theta_pairing",
    "toeplitz",
    "toeplitz_essnorm_check",
    "toeplitz_pointmasses",
    "toeplitz_poly",
    "verify_sharp",
    "weighted_translation",
    "write_run",
    "zero_op",
]
