"""Pade interpolation problems and the routes that solve them.

Routes: ``brute`` expands one bordered determinant; ``condensed`` works
with the smaller determinants obtained by condensation; ``hg-k``/``hg-s``
and ``vwp-k``/``vwp-ft`` use explicit single-sum entries for the
shifted-factorial and bracket families.
"""

from .hypergeometric import solve_hg_krattenthaler, solve_hg_saalschutz
from .problem import (
    InterpolationProblem,
    WeightSpec,
    build_custom_problem,
    build_rational_hg_problem,
    build_vwp_problem,
    check_genericity,
)
from .universal import (
    PadeSolution,
    Route,
    condensed_U,
    condensed_V,
    evaluate_P,
    evaluate_Q,
    residual_R,
    solve_bruteforce,
    solve_condensed,
)
from .verify import CrosscheckReport, VerificationReport, crosscheck, solve, verify_solution
from .vwp import solve_vwp_ft, solve_vwp_krattenthaler

__all__ = [
    "CrosscheckReport",
    "InterpolationProblem",
    "PadeSolution",
    "Route",
    "VerificationReport",
    "WeightSpec",
    "build_custom_problem",
    "build_rational_hg_problem",
    "build_vwp_problem",
    "check_genericity",
    "condensed_U",
    "condensed_V",
    "crosscheck",
    "evaluate_P",
    "evaluate_Q",
    "residual_R",
    "solve",
    "solve_bruteforce",
    "solve_condensed",
    "solve_hg_krattenthaler",
    "solve_hg_saalschutz",
    "solve_vwp_ft",
    "solve_vwp_krattenthaler",
    "verify_solution",
]
