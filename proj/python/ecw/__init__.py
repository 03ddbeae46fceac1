"""Python bindings for the entropy-cone workbench.

Exact values are returned as ``fractions.Fraction``; subsets are named by
party letters ("A", "BD", ...) with "O" for the purifier.
"""

import os as _os

_bundled = _os.path.join(_os.path.dirname(__file__), "data")
if _os.path.isdir(_bundled):
    _os.environ.setdefault("ECW_DATA_DIR", _bundled)

from ._ecw import (  # noqa: E402
    BudgetExceeded,
    EntropyVector,
    GraphState,
    HypergraphModel,
    Inequality,
    balance_check,
    canonical_form,
    check_vector,
    data_dir,
    dense_oracle_entropy,
    entropy_vector,
    evaluate,
    graph_census,
    graph_state_entropy,
    graph_state_entropy_vector,
    instantiate_family,
    local_complement,
    min_cut,
    min_cuts,
    parse_inequality_file,
    parse_vector_file,
    prove,
    run_cli,
    search_realization,
    symmetry_orbit,
    unbalanced_parties,
    verify_certificate,
    verify_realization,
)

__all__ = [name for name in dir() if not name.startswith("_")]
