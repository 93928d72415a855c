"""Kantorovich exponential sampling series and their limits at jumps."""

from .estimator import KantorovichSampler
from .jumps import (GridCase, JumpPrediction, RepresentationParts, SweepTable,
                    convergence_sweep, detect_grid_case, kernel_alpha, oscillation_probe,
                    predict_limit, representation_decompose)
from .kernels import (Kernel, TailWarning, absolute_moment, get_kernel, make_bspline,
                      make_chi_c, make_chi_d, make_composite, make_jackson, make_power_tail,
                      make_theta_perturbed, mellin_coefficient, partition_sum, psi_minus,
                      psi_plus, validate_kernel)
from .prediction import make_past_kernel, predict_from_past
from .series import SeriesParams, generalized_series, kantorovich_series, local_average
from .signals import (Jump, Signal, get_signal, linear_combination, make_constant,
                      make_jump_centered, make_paper_signal, make_synthetic)
from .smoothness import check_bound, log_modulus, theorem7_bound

__all__ = [
    "GridCase", "Jump", "JumpPrediction", "KantorovichSampler", "Kernel",
    "RepresentationParts", "SeriesParams", "Signal", "SweepTable", "TailWarning",
    "absolute_moment", "check_bound", "convergence_sweep", "detect_grid_case",
    "generalized_series", "get_kernel", "get_signal", "kantorovich_series", "kernel_alpha",
    "linear_combination", "local_average", "log_modulus", "make_bspline", "make_chi_c",
    "make_chi_d", "make_composite", "make_constant", "make_jackson", "make_jump_centered",
    "make_paper_signal", "make_past_kernel", "make_power_tail", "make_synthetic",
    "make_theta_perturbed", "mellin_coefficient", "oscillation_probe", "partition_sum",
    "predict_from_past", "predict_limit", "psi_minus", "psi_plus", "representation_decompose",
    "theorem7_bound", "validate_kernel",
]
