"""Exact eigenfunctions of Calogero-Sutherland type operators.

This package constructs the singular (Laurent-series) eigenfunctions of
Calogero-Sutherland type differential operators by a triangular recursion
over the lowering lattice, transforms them into regular symmetric-polynomial
eigenfunctions (Jack polynomials) by exact constant-term extraction, and
verifies the underlying operator identities against independent oracles and
high-precision numerics.

All series and polynomial coefficients are exact rationals; floating point
enters only in the high-precision verification layer (mpmath).
"""

from csjack.algebra import (
    LaurentSeries,
    SymPoly,
    gen_binomial,
    series_scale_add,
    sympoly_eval,
    sympoly_from_json,
    sympoly_to_json,
)
from csjack.lattice import MuVector, dominance_leq, enumerate_mu, shift_reachable
from csjack.spectrum import (
    ModelParams,
    cs_params,
    cs_shifts,
    e0_generalized,
    eigenvalue,
    gap_b,
    gap_certificate,
    general_params,
    groundstate_energy,
    hermitean_couplings,
    pt_conditions,
)
from csjack.singular import (
    AlphaTable,
    DegeneracyError,
    TriangularSystem,
    alpha_closed,
    alpha_recursive,
    apply_H,
    apply_H_generalized,
    generalized_alpha,
    singular_eigenfunction,
    triangular_eigenvector,
)
from csjack.transform import (
    TransformConfig,
    assemble_regular,
    f_monomial,
    schur_integral,
)
from csjack.oracle import jack_oracle, schur_oracle

__version__ = "0.1.0"

__all__ = [
    "AlphaTable",
    "DegeneracyError",
    "LaurentSeries",
    "ModelParams",
    "MuVector",
    "SymPoly",
    "TransformConfig",
    "TriangularSystem",
    "alpha_closed",
    "alpha_recursive",
    "apply_H",
    "apply_H_generalized",
    "assemble_regular",
    "cs_params",
    "cs_shifts",
    "dominance_leq",
    "e0_generalized",
    "eigenvalue",
    "enumerate_mu",
    "f_monomial",
    "gap_b",
    "gap_certificate",
    "gen_binomial",
    "general_params",
    "generalized_alpha",
    "groundstate_energy",
    "hermitean_couplings",
    "jack_oracle",
    "pt_conditions",
    "schur_integral",
    "schur_oracle",
    "series_scale_add",
    "shift_reachable",
    "singular_eigenfunction",
    "sympoly_eval",
    "sympoly_from_json",
    "sympoly_to_json",
    "triangular_eigenvector",
]
