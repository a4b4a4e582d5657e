"""Reachability analysis and pulse design for single-mode symplectic control."""

from ._core import (
    SymreachError,
    SymreachIoError,
    basis_coords,
    classify,
    commutator,
    compose,
    decompose,
    example_system,
    expm,
    f_along_trajectory,
    f_of_matrix,
    fidelity_error,
    from_coords,
    fz_of_triple,
    g_factor,
    identity_limit_triple,
    is_unstable,
    min_z_for_f,
    normalize,
    objective_and_gradient,
    propagate,
    rank_criterion,
    reach,
    run_grid,
    trace_identity_residual,
    verify,
)

__all__ = [
    "SymreachError",
    "SymreachIoError",
    "basis_coords",
    "classify",
    "commutator",
    "compose",
    "decompose",
    "example_system",
    "expm",
    "f_along_trajectory",
    "f_of_matrix",
    "fidelity_error",
    "from_coords",
    "fz_of_triple",
    "g_factor",
    "identity_limit_triple",
    "is_unstable",
    "min_z_for_f",
    "normalize",
    "objective_and_gradient",
    "propagate",
    "rank_criterion",
    "reach",
    "run_grid",
    "trace_identity_residual",
    "verify",
]
