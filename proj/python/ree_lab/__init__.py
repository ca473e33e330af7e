"""Relative entropy of entanglement toolkit."""

from ._core import (
    ConvergenceError,
    DensityMatrix,
    DomainError,
    InputError,
    InvalidStateError,
    NormalizationError,
    ReeLabError,
    ReeOptions,
    ReeResult,
    ShapeError,
    StateParseError,
    bell_diagonal,
    bell_diagonal_ree_oracle,
    concurrence,
    eof_two_qubit,
    lemma2_bound,
    load_state,
    loewner_matrix_psd,
    maximally_mixed,
    negative_conditional_entropy,
    operator_monotone_counterexample,
    parse_state,
    partial_trace,
    partial_transpose,
    ppt_criterion,
    pure_from_schmidt,
    random_density,
    reduction_criterion,
    ree_ppt,
    relative_entropy,
    run_suite,
    save_state,
    serialize_state,
    singlet,
    suite_names,
    tensor_bipartite,
    von_neumann_entropy,
    werner,
)

__version__ = "0.1.0"
