"""Lax operators for finite W-algebras of classical Lie algebras."""
from .liealg import (
    Family,
    GradedSetup,
    LieAlgebraFamily,
    LieAlgebraModel,
    build_algebra,
    build_graded_setup,
    generic_setup,
    parse_partition,
)
from .uea import KERNEL, UEA, UEAElement, MElement, act, epsilon0, kazhdan_weight, reduce_mod_J
from .series import SeriesMatrix, TruncatedSeries, quasideterminant, dirac_reduction
from .laxop import build_A, lax, shift_matrix, check_membership, main_lemma_check
from .yangian import YangianParams, check_identity, check_skewadjoint

__all__ = [
    "Family", "GradedSetup", "LieAlgebraFamily", "LieAlgebraModel", "build_algebra",
    "build_graded_setup", "generic_setup", "parse_partition", "KERNEL", "UEA", "UEAElement",
    "MElement", "act", "epsilon0", "kazhdan_weight", "reduce_mod_J", "SeriesMatrix",
    "TruncatedSeries", "quasideterminant", "dirac_reduction", "build_A", "lax", "shift_matrix",
    "check_membership", "main_lemma_check", "YangianParams", "check_identity", "check_skewadjoint",
]
