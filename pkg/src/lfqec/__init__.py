"""Quantum error-correcting codes from logic functions over prime fields
and weighted graphs, verified exactly by a state-vector oracle over
cyclotomic integers."""

from .errors import CapacityError, InputError, PremiseError
from .fp_algebra import (
    CycloInt,
    FpMatrix,
    LinearSolution,
    PauliLabel,
    cyclo_from_histogram,
    cyclo_is_zero,
    iter_labels,
    iter_labels_of_weight,
    rank,
    solve_linear,
    symplectic_product,
    symplectic_weight,
)
from .logic_fn import (
    ApcResult,
    LogicFunction,
    add_affine,
    anf_text,
    apc_distance,
    apc_sum,
    autocorrelation,
    autocorrelation_spectrum,
    is_bent,
    parse_anf,
    parse_function_file,
    quadratic_form,
    solve_coboundary,
    weight_support,
    zset,
    zset_via_autocorrelation,
)
from .state_oracle import (
    KLFailure,
    StateVector,
    VerifyReport,
    apply_error,
    gram_matrix,
    inner_product,
    kl_verify,
    min_distance,
    state_from_function,
)
from .codespec import CodeSpec, check_claim
from .graph_codes import (
    MatrixCheckResult,
    WeightedGraph,
    build_graph_code,
    coverage_witness,
    graph_to_stabilizer_rows,
    is_uncoverable,
    matrix_code_check,
    matrix_kernel_check,
    neighborhood,
    parse_graph_file,
    uncoverable_family,
    verify_stabilizer,
)
from .code_builder import (
    build_coset_code,
    build_matrix_code,
    build_mds_family,
    claimed_coset_distance,
    mds_function,
    mds_matrix,
)
from .projector_codes import (
    OperatorMatrix,
    PremiseReport,
    bent_exclusion,
    build_projector,
    check_projector_premises,
    extract_boolean_basis,
    operator_matrix,
    projector_and,
    projector_not,
    projector_or,
    row_span_labels,
)

__version__ = "0.1.0"

__all__ = [
    "ApcResult",
    "CapacityError",
    "CodeSpec",
    "CycloInt",
    "FpMatrix",
    "InputError",
    "KLFailure",
    "LinearSolution",
    "LogicFunction",
    "MatrixCheckResult",
    "OperatorMatrix",
    "PauliLabel",
    "PremiseError",
    "PremiseReport",
    "StateVector",
    "VerifyReport",
    "WeightedGraph",
    "add_affine",
    "anf_text",
    "apc_distance",
    "apc_sum",
    "apply_error",
    "autocorrelation",
    "autocorrelation_spectrum",
    "bent_exclusion",
    "build_coset_code",
    "build_graph_code",
    "build_matrix_code",
    "build_mds_family",
    "build_projector",
    "check_claim",
    "check_projector_premises",
    "claimed_coset_distance",
    "coverage_witness",
    "cyclo_from_histogram",
    "cyclo_is_zero",
    "extract_boolean_basis",
    "gram_matrix",
    "graph_to_stabilizer_rows",
    "inner_product",
    "is_bent",
    "is_uncoverable",
    "iter_labels",
    "iter_labels_of_weight",
    "kl_verify",
    "matrix_code_check",
    "matrix_kernel_check",
    "mds_function",
    "mds_matrix",
    "min_distance",
    "neighborhood",
    "operator_matrix",
    "parse_anf",
    "parse_function_file",
    "parse_graph_file",
    "projector_and",
    "projector_not",
    "projector_or",
    "quadratic_form",
    "rank",
    "row_span_labels",
    "solve_coboundary",
    "solve_linear",
    "state_from_function",
    "symplectic_product",
    "symplectic_weight",
    "uncoverable_family",
    "verify_stabilizer",
    "weight_support",
    "zset",
    "zset_via_autocorrelation",
]
