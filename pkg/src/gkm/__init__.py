"""Exact root multiplicities and denominator identities for generalized Kac-Moody algebras."""
from .matrix import GKMMatrix, MatrixError, center_pairs, classify, load_matrix, save_matrix, validate
from .series import Box, ExactSeries, Mismatch
from .witt import generator_series, verify_witt_identity, witt_dimensions
from .lie import lyndon_dims, quotient, quotient_dims, free_split
from .denominator import gkm_rhs, verify_factored, verify_full, weyl_enumerate, omega0_enumerate
from .moonshine import (j_coefficients, kang_check, monster_root_dims, verify_monster_dims,
                        verify_monster_product)

__all__ = [
    "GKMMatrix", "MatrixError", "center_pairs", "classify", "load_matrix", "save_matrix", "validate",
    "Box", "ExactSeries", "Mismatch",
    "generator_series", "verify_witt_identity", "witt_dimensions",
    "lyndon_dims", "quotient", "quotient_dims", "free_split",
    "gkm_rhs", "verify_factored", "verify_full", "weyl_enumerate", "omega0_enumerate",
    "j_coefficients", "kang_check", "monster_root_dims", "verify_monster_dims", "verify_monster_product",
]
