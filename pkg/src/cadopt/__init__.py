"""Certified-answer discrimination for ordered families of pure states.

Solves the distance-certified discrimination scheme through a compact block
SDP on the Gram matrix, computes square-root-measurement baselines and
analytic lower bounds, and reproduces the change-point and anomaly-detection
benchmark numbers.  See the README for the command-line interface.
"""

from .bounds import BoundResult, general_lower_bound, minor_penalty, qcp_bound, qsad_bound
from .errors import (
    BadDelta,
    BadDimension,
    BadInput,
    BadPovm,
    BadShape,
    BadState,
    CadError,
    LinearDependence,
    NotPsd,
    NumericalFailure,
)
from .fourier import FourierCheck, decay_check, mu, mu_hat, partial_sum
from .matrix_core import (
    EigenDecomposition,
    is_psd,
    min_eigenvalue,
    sqrt_psd,
    sym_eigen,
    symmetrize,
)
from .problems import (
    CadProblem,
    QsadParams,
    canonical_states,
    custom_problem,
    gram_from_states,
    gram_qcp,
    gram_qsad,
    load_problem_json,
    qcp_problem,
    qsad_params,
    qsad_problem,
)
from .solver import (
    PovmRealization,
    ProbBreakdown,
    SdpSolution,
    SimulatedCounts,
    outcome_distribution,
    probabilities,
    reconstruct_povm,
    residual_matrix,
    simulate_outcomes,
    solve_cad,
)
from .srm import OutcomeProfile, SrmData, me_block_entry, outcome_profile, qcp_srm_integral, srm
from .structure import BlockStructure, adjoint_map, build_structure, embed_block, forward_map

__version__ = "0.1.0"

__all__ = [
    "BadDelta",
    "BadDimension",
    "BadInput",
    "BadPovm",
    "BadShape",
    "BadState",
    "BlockStructure",
    "BoundResult",
    "CadError",
    "CadProblem",
    "EigenDecomposition",
    "FourierCheck",
    "LinearDependence",
    "NotPsd",
    "NumericalFailure",
    "OutcomeProfile",
    "PovmRealization",
    "ProbBreakdown",
    "QsadParams",
    "SdpSolution",
    "SimulatedCounts",
    "SrmData",
    "adjoint_map",
    "build_structure",
    "canonical_states",
    "custom_problem",
    "decay_check",
    "embed_block",
    "forward_map",
    "general_lower_bound",
    "gram_from_states",
    "gram_qcp",
    "gram_qsad",
    "is_psd",
    "load_problem_json",
    "me_block_entry",
    "min_eigenvalue",
    "minor_penalty",
    "mu",
    "mu_hat",
    "outcome_distribution",
    "outcome_profile",
    "partial_sum",
    "probabilities",
    "qcp_bound",
    "qcp_problem",
    "qcp_srm_integral",
    "qsad_bound",
    "qsad_params",
    "qsad_problem",
    "reconstruct_povm",
    "residual_matrix",
    "simulate_outcomes",
    "solve_cad",
    "sqrt_psd",
    "srm",
    "sym_eigen",
    "symmetrize",
    "__version__",
]
