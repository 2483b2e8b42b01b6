"""Genus groups of (co-)H-maps computed from finite algebraic models.

The package turns per-degree data of two spaces and the integer matrices of
a map between them into the modulus ``t_hat``, the count ``k`` and the
finite abelian group ``(Z*_t_hat / +-1)^k`` modulo the determinants of
self-maps, together with brute-force checks of the algebra involved.
"""

from .abgroup import FinAbGroup, dlog, exponent, normalize, quotient_by, units_group, units_mod_pm1
from .genus import (
    GenusReport,
    MatrixPair,
    claim_factor,
    genus_group,
    in_t_prime,
    realizable_det_subgroup,
    reduce_to_diagonal,
)
from .intalg import IntMatrix, determinant, sl_lift, smith_normal_form
from .model import DegreeData, MapModel, SpaceModel, k_of, t_hat

__version__ = "0.1.0"

__all__ = [
    "DegreeData",
    "FinAbGroup",
    "GenusReport",
    "IntMatrix",
    "MapModel",
    "MatrixPair",
    "SpaceModel",
    "claim_factor",
    "determinant",
    "dlog",
    "exponent",
    "genus_group",
    "in_t_prime",
    "k_of",
    "normalize",
    "quotient_by",
    "realizable_det_subgroup",
    "reduce_to_diagonal",
    "sl_lift",
    "smith_normal_form",
    "t_hat",
    "units_group",
    "units_mod_pm1",
]
