"""Exact cumulant nullhomotopies and C-infinity homotopy transfer."""

from ._cinfty import (
    TransferResult,
    betti_numbers,
    cube_complex_json,
    cumulant_expansion,
    mobius_sum,
    refinement_graph_claims,
    refinement_graph_dot,
    transfer,
)

__all__ = [
    "TransferResult",
    "betti_numbers",
    "cube_complex_json",
    "cumulant_expansion",
    "mobius_sum",
    "refinement_graph_claims",
    "refinement_graph_dot",
    "transfer",
]
