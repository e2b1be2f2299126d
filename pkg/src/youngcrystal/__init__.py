"""Crystal structures on plethystic tableaux and symmetric chain decompositions of L(n, m)."""

from .chains import SeedSpec, builtin_seed
from .crystal import CrystalGraph, build, e, f, f_top, gauge_A, verify_axioms
from .oracle import cross_check_character, middle_rank_count, rank_profile
from .plethysm import ChainFamily, character, coefficient, constituents, hw_closed_form, scd, verify_scd
from .qchar import CenteredPoly, QIntCombo, peel, q_binom, q_int
from .tableaux import BoxPartition, Tableau, make_tableau, psi, psi_inv, wt

__all__ = [
    "BoxPartition", "CenteredPoly", "ChainFamily", "CrystalGraph", "QIntCombo", "SeedSpec", "Tableau",
    "build", "builtin_seed", "character", "coefficient", "constituents", "cross_check_character",
    "e", "f", "f_top", "gauge_A", "hw_closed_form", "make_tableau", "middle_rank_count", "peel",
    "psi", "psi_inv", "q_binom", "q_int", "rank_profile", "scd", "verify_axioms", "verify_scd", "wt",
]
