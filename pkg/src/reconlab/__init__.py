"""reconlab: reconstruction systems, q-potentials and packet-erasure optimality.

The main entry points are re-exported here; submodules hold the rest.
"""

from .constructors import dft_uwp, harmonic_uwp, random_protocol, random_system, unitary_conjugate
from .erasures import (c_mld, e1_lower_bound, e2_lower_bound, error_matrix, in_class_C,
                       is_two_uniform, lemma_identities, welch_check, worst_case_error)
from .exceptions import (GuardError, InvalidSystemError, NotHermitianError,
                         NotProjectionError, ReconError, ShapeError)
from .feasibility import (grammian_projection_factor, klyachko_feasible, numeric_oracle,
                          protocol_feasible, q_fundamental_check, uwp_existence)
from .lr import enumerate_lr_tuples, lr_coefficient, partition_of
from .potential import check_general_optimality, check_uwp_optimality, q_potential
from .spectra import (FROBENIUS, OPERATOR, TRACE, GaugeNorm, eigvals_desc, eta, gauge_eval,
                      majorizes, norm_eval, partial_trace, singvals, sort_desc, submajorizes)
from .systems import (ErasurePattern, ReconSystem, SystemShape, analysis, classify, dual,
                      grammian, load, reconstruct, save, system_operator)

__version__ = "0.1.0"

__all__ = [
    "dft_uwp",
    "harmonic_uwp",
    "random_protocol",
    "random_system",
    "unitary_conjugate",
    "c_mld",
    "e1_lower_bound",
    "e2_lower_bound",
    "error_matrix",
    "in_class_C",
    "is_two_uniform",
    "lemma_identities",
    "welch_check",
    "worst_case_error",
    "GuardError",
    "InvalidSystemError",
    "NotHermitianError",
    "NotProjectionError",
    "ReconError",
    "ShapeError",
    "grammian_projection_factor",
    "klyachko_feasible",
    "numeric_oracle",
    "protocol_feasible",
    "q_fundamental_check",
    "uwp_existence",
    "enumerate_lr_tuples",
    "lr_coefficient",
    "partition_of",
    "check_general_optimality",
    "check_uwp_optimality",
    "q_potential",
    "FROBENIUS",
    "OPERATOR",
    "TRACE",
    "GaugeNorm",
    "eigvals_desc",
    "eta",
    "gauge_eval",
    "majorizes",
    "norm_eval",
    "partial_trace",
    "singvals",
    "sort_desc",
    "submajorizes",
    "ErasurePattern",
    "ReconSystem",
    "SystemShape",
    "analysis",
    "classify",
    "dual",
    "grammian",
    "load",
    "reconstruct",
    "save",
    "system_operator",
]

