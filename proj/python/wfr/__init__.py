from ._core import (
    Correspondence,
    FormatError,
    InvalidInput,
    Measure,
    Mesh,
    NumericFailure,
    Report,
    classical_mds,
    closed_form_single_atom,
    closure_residual,
    cost_matrix,
    fuzzy_correspondence,
    load_mesh,
    random_measure,
    sinkhorn,
    solve,
    srnf_distance,
    srnf_measure,
)

__all__ = [
    "Correspondence",
    "FormatError",
    "InvalidInput",
    "Measure",
    "Mesh",
    "NumericFailure",
    "Report",
    "classical_mds",
    "closed_form_single_atom",
    "closure_residual",
    "cost_matrix",
    "fuzzy_correspondence",
    "load_mesh",
    "random_measure",
    "sinkhorn",
    "solve",
    "srnf_distance",
    "srnf_measure",
]
